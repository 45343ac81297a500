//! Command-line surface: instance generation, validation, hyperplane and
//! coloring dumps, quotients, tower maps, covers, Roller duals, gates, and
//! certificate checking.
//!
//! Exit codes: 0 success, 1 invalid input, 2 property violation, 3 internal
//! bug assertion.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use mediandim::coloring::compute_coloring;
use mediandim::cover::{build_cover, verify_certificate};
use mediandim::cube::decode;
use mediandim::error::Error;
use mediandim::graph::MedianGraph;
use mediandim::instance::InstanceSpec;
use mediandim::io as mio;
use mediandim::pocset::{gate, quotient, Pocset};
use mediandim::rat::{rat_from_str, rat_to_string, Rat};
use mediandim::tower::{build_tower_with_ell, TowerMap};
use mediandim::Complex;

#[derive(Parser)]
#[command(
    name = "mediandim",
    version,
    about = "Median graphs, quotient towers, and asymptotic-dimension covers"
)]
struct Cli {
    /// Worker threads for the parallel verification loops (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

/// Instance selection shared by all subcommands.
#[derive(Args, Clone)]
struct CoreArgs {
    /// Generator kind: grid, hypercube_grid, tree, staircase, strip_gluing,
    /// random_pocset, file.
    #[arg(long, default_value = "grid")]
    kind: String,
    /// First size parameter (grid columns, tree depth, staircase steps,
    /// strip length, pocset hyperplanes, hypercube side).
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Second size parameter (grid rows, tree arity, strip count, hypercube
    /// dimension).
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Seed for random kinds.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Graph JSON file (kind = file).
    #[arg(long)]
    file: Option<PathBuf>,
}

/// Core selection plus base-vertex overrides.
#[derive(Args, Clone)]
struct InstanceArgs {
    #[command(flatten)]
    core: CoreArgs,
    /// Base-vertex overrides: each listed vertex becomes the base of its
    /// component.
    #[arg(long, value_delimiter = ',')]
    base: Vec<usize>,
}

impl CoreArgs {
    fn load(&self) -> anyhow::Result<MedianGraph> {
        let spec = match self.kind.as_str() {
            "grid" => InstanceSpec::Grid { n: self.n, m: self.m },
            "hypercube_grid" => InstanceSpec::HypercubeGrid { side: self.n, dim: self.m },
            "tree" => InstanceSpec::Tree { depth: self.n, arity: self.m },
            "staircase" => InstanceSpec::Staircase { k: self.n },
            "strip_gluing" => InstanceSpec::StripGluing { len: self.n, strips: self.m },
            "random_pocset" => InstanceSpec::RandomPocset { planes: self.n, seed: self.seed },
            "file" => InstanceSpec::File {
                path: self
                    .file
                    .as_ref()
                    .ok_or_else(|| anyhow::anyhow!("kind=file needs --file"))?
                    .display()
                    .to_string(),
            },
            other => anyhow::bail!("unknown kind {other:?}"),
        };
        Ok(spec.generate()?)
    }
}

impl InstanceArgs {
    fn load(&self) -> anyhow::Result<MedianGraph> {
        let g = self.core.load()?;
        if self.base.is_empty() {
            return Ok(g);
        }
        // re-validate with base overrides
        let mut raw = g.to_raw();
        for &v in &self.base {
            if v >= g.vertex_count() {
                anyhow::bail!("base vertex {v} out of range");
            }
            raw.base.insert(g.component_of(v), v);
        }
        Ok(MedianGraph::validate(&raw)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate the median axiom; prints a counterexample triple on failure.
    Validate(InstanceArgs),
    /// Compute hyperplanes and dump their edge classes and halfspaces.
    Hyperplanes(InstanceArgs),
    /// Rank vectors and the recursive 2-coloring.
    Color(InstanceArgs),
    /// Quotient by a hyperplane subset (default: the 0-colored set).
    Quotient {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Hyperplane ids to quotient by; defaults to K_c of the coloring.
        #[arg(long, value_delimiter = ',')]
        hyperplanes: Option<Vec<usize>>,
        /// Emit DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Build the tower map at a given epsilon and emit per-vertex images
    /// with Lipschitz and cobornologousness reports.
    Map {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Strict Lipschitz target, a rational like 1/8.
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        /// Override the weight scale on every component.
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Build the asymptotic-dimension cover certificate.
    Cover {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Chain radius, a rational like 2 or 3/2.
        #[arg(long, default_value = "1")]
        r: String,
    },
    /// Build the cover, then re-verify every certificate invariant from
    /// scratch; exits nonzero on any failure.
    Certify {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value = "1")]
        r: String,
    },
    /// Enumerate the consistent orientations of the halfspace system and
    /// emit the dual graph.
    Roller {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Emit DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Gate of a vertex in a convex vertex set.
    Gate {
        #[command(flatten)]
        instance: CoreArgs,
        /// The vertex o to project from.
        #[arg(long)]
        base: usize,
        /// The convex set, comma separated.
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            println!();
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    match &cli.command {
        Command::Validate(args) => {
            let g = args.load()?;
            let report = json!({
                "ok": true,
                "vertices": g.vertex_count(),
                "edges": g.edges().len(),
                "components": g.component_count(),
                "base": (0..g.component_count()).map(|c| g.base_of(c)).collect::<Vec<_>>(),
            });
            emit(&cli.out, &serde_json::to_string_pretty(&report)?)
        }
        Command::Hyperplanes(args) => {
            let cx = Complex::build(args.load()?)?;
            let dump = mio::dump_hyperplanes(&cx.hyperplanes);
            emit(&cli.out, &serde_json::to_string_pretty(&dump)?)
        }
        Command::Color(args) => {
            let cx = Complex::build(args.load()?)?;
            let coloring = compute_coloring(&cx)?;
            let rows = mio::color_rows(&coloring);
            emit(&cli.out, &serde_json::to_string_pretty(&rows)?)
        }
        Command::Quotient { instance, hyperplanes, dot } => {
            let cx = Complex::build(instance.load()?)?;
            let k = match hyperplanes {
                Some(ids) => ids.clone(),
                None => compute_coloring(&cx)?.k_c,
            };
            let q = quotient(&cx, &k)?;
            if *dot {
                emit(&cli.out, &mio::to_dot(&q.complex.graph, "quotient"))
            } else {
                let report = json!({
                    "k": q.k_set,
                    "graph": mio::GraphFile::from_graph(&q.complex.graph),
                    "vertex_map": q.vertex_map,
                    "hyperplane_map": q.k_set.iter().zip(&q.plane_map)
                        .map(|(&k, &img)| (k.to_string(), img)).collect::<BTreeMap<_,_>>(),
                });
                emit(&cli.out, &serde_json::to_string_pretty(&report)?)
            }
        }
        Command::Map { instance, epsilon, ell } => {
            let cx = Complex::build(instance.load()?)?;
            let eps = rat_from_str(epsilon)?;
            let tower = build_tower_with_ell(cx, &eps, *ell)?;
            let report = map_report(&tower)?;
            emit(&cli.out, &serde_json::to_string_pretty(&report)?)
        }
        Command::Cover { instance, r } => {
            let cx = Complex::build(instance.load()?)?;
            let r: Rat = rat_from_str(r)?;
            let (cert, _) = build_cover(cx, &r)?;
            emit(&cli.out, &serde_json::to_string_pretty(&cert)?)
        }
        Command::Certify { instance, r } => {
            let g = instance.load()?;
            let cx = Complex::build(g)?;
            let r: Rat = rat_from_str(r)?;
            let (cert, _) = build_cover(cx.clone(), &r)?;
            let problems = verify_certificate(cx, &cert)?;
            if !problems.is_empty() {
                for p in &problems {
                    eprintln!("certify: {p}");
                }
                return Err(PropertyViolation(problems.len()).into());
            }
            emit(&cli.out, &serde_json::to_string_pretty(&cert)?)
        }
        Command::Roller { instance, dot } => {
            let cx = Complex::build(instance.load()?)?;
            let mut duals = Vec::new();
            for c in 0..cx.graph.component_count() {
                let (pocset, ids) = Pocset::from_component(&cx, c);
                let (raw, ufs) = pocset.dual_graph();
                let dual = MedianGraph::validate(&raw)?;
                if *dot {
                    duals.push(mio::to_dot(&dual, &format!("dual_{c}")));
                } else {
                    duals.push(serde_json::to_string_pretty(&json!({
                        "component": c,
                        "hyperplanes": ids,
                        "ultrafilters": ufs.iter().map(|u| &u.plus).collect::<Vec<_>>(),
                        "dual": mio::GraphFile::from_graph(&dual),
                        "vertex_count_matches": ufs.len() == cx.graph.component_members(c).len(),
                    }))?);
                }
            }
            emit(&cli.out, &duals.join("\n"))
        }
        Command::Gate { instance, base, set } => {
            let cx = Complex::build(instance.load()?)?;
            let v = gate(&cx, *base, set)?;
            let report = json!({ "base": base, "set": set, "gate": v });
            emit(&cli.out, &serde_json::to_string_pretty(&report)?)
        }
    }
}

fn map_report(tower: &TowerMap) -> anyhow::Result<serde_json::Value> {
    let fc = tower.final_complex();
    let mut images = Vec::new();
    for x in 0..tower.source.graph.vertex_count() {
        let img = tower.apply(x)?;
        let cube = decode(fc, &img).map_err(|e| Error::Internal(format!("image of {x}: {e}")))?;
        images.push(json!({
            "vertex": x,
            "image": mio::point_to_file(&img),
            "cube_corner": cube.vertex,
            "cube_frac": cube.frac.iter()
                .map(|(h, v)| (h.to_string(), rat_to_string(v)))
                .collect::<BTreeMap<_, _>>(),
        }));
    }
    let lip = tower.verify_lipschitz(4096)?;
    let cob = tower.verify_cobornologous()?;
    Ok(json!({
        "stages": tower.stages.len(),
        "collapsed": tower.collapsed,
        "lipschitz": {
            "observed": rat_to_string(&lip.observed),
            "bound": rat_to_string(&lip.bound),
            "ok": lip.ok,
            "witness": lip.witness,
        },
        "cobornologous": cob.control.iter()
            .map(|(t, v)| json!({"t": t, "min_image_distance": rat_to_string(v)}))
            .collect::<Vec<_>>(),
        "final_graph": mio::GraphFile::from_graph(&fc.graph),
        "images": images,
    }))
}

/// Marker for exit code 2.
#[derive(Debug)]
struct PropertyViolation(usize);

impl std::fmt::Display for PropertyViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} certificate invariant(s) violated", self.0)
    }
}

impl std::error::Error for PropertyViolation {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::from(0),
        Err(err) => {
            eprintln!("error: {err}");
            if err.downcast_ref::<PropertyViolation>().is_some() {
                ExitCode::from(2)
            } else if matches!(err.downcast_ref::<Error>(), Some(Error::Internal(_))) {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
