//! Instance generators. Every generator returns a validated median graph;
//! random kinds are deterministic for a fixed seed and retry internally until
//! validation passes.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MedianGraph, RawGraph, Vertex};
use crate::hyperplane::Relation;
use crate::pocset::Pocset;

/// A generator request, as consumed by the CLI.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceSpec {
    /// n x m grid graph.
    Grid { n: usize, m: usize },
    /// Product of `dim` paths with `side` vertices each.
    HypercubeGrid { side: usize, dim: usize },
    /// Balanced tree with `depth` edge levels below the root.
    Tree { depth: usize, arity: usize },
    /// Staircase region of the grid: cells (i, j) with j <= i < k.
    Staircase { k: usize },
    /// Finite truncation of the strip-gluing complex: `strips` side strips of
    /// `len` squares glued along the bottom line of a base strip.
    StripGluing { len: usize, strips: usize },
    /// Dual of a random finite halfspace system.
    RandomPocset { planes: usize, seed: u64 },
    /// Graph loaded from a JSON file.
    File { path: String },
}

impl InstanceSpec {
    pub fn generate(&self) -> Result<MedianGraph> {
        match *self {
            InstanceSpec::Grid { n, m } => grid(n, m),
            InstanceSpec::HypercubeGrid { side, dim } => hypercube_grid(side, dim),
            InstanceSpec::Tree { depth, arity } => tree(depth, arity),
            InstanceSpec::Staircase { k } => staircase(k),
            InstanceSpec::StripGluing { len, strips } => strip_gluing(len, strips),
            InstanceSpec::RandomPocset { planes, seed } => random_pocset(planes, seed),
            InstanceSpec::File { ref path } => {
                let raw = crate::io::read_graph(path)?;
                MedianGraph::validate(&raw)
            }
        }
    }
}

/// n x m grid; vertex (x, y) has id x*m + y.
pub fn grid(n: usize, m: usize) -> Result<MedianGraph> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParams("grid sides must be positive".into()));
    }
    let mut edges = Vec::new();
    for x in 0..n {
        for y in 0..m {
            if x + 1 < n {
                edges.push((x * m + y, (x + 1) * m + y));
            }
            if y + 1 < m {
                edges.push((x * m + y, x * m + y + 1));
            }
        }
    }
    MedianGraph::validate(&RawGraph::new(n * m, edges))
}

/// Product of `dim` paths of `side` vertices; side = 2 gives the dim-cube.
pub fn hypercube_grid(side: usize, dim: usize) -> Result<MedianGraph> {
    if side == 0 || dim == 0 {
        return Err(Error::InvalidParams("hypercube grid needs side, dim >= 1".into()));
    }
    let n = side.pow(dim as u32);
    if n > 1 << 16 {
        return Err(Error::InvalidParams("hypercube grid too large".into()));
    }
    let mut edges = Vec::new();
    for v in 0..n {
        let mut stride = 1;
        for _ in 0..dim {
            let digit = v / stride % side;
            if digit + 1 < side {
                edges.push((v, v + stride));
            }
            stride *= side;
        }
    }
    MedianGraph::validate(&RawGraph::new(n, edges))
}

/// Balanced rooted tree: `depth` levels of edges, each node with `arity`
/// children. depth 3, arity 2 gives 15 vertices.
pub fn tree(depth: usize, arity: usize) -> Result<MedianGraph> {
    if arity == 0 {
        return Err(Error::InvalidParams("tree arity must be positive".into()));
    }
    let mut edges = Vec::new();
    let mut level: Vec<Vertex> = vec![0];
    let mut next_id = 1;
    for _ in 0..depth {
        let mut next = Vec::new();
        for &p in &level {
            for _ in 0..arity {
                edges.push((p, next_id));
                next.push(next_id);
                next_id += 1;
            }
        }
        level = next;
    }
    MedianGraph::validate(&RawGraph::new(next_id, edges))
}

/// Staircase region: cells (i, j) for 0 <= j <= i < k; vertices are the grid
/// points (x, y) with 0 <= x <= k and 0 <= y <= min(x + 1, k).
pub fn staircase(k: usize) -> Result<MedianGraph> {
    if k == 0 {
        return Err(Error::InvalidParams("staircase needs at least one step".into()));
    }
    let mut ids = std::collections::HashMap::new();
    let mut coords = Vec::new();
    for x in 0..=k {
        for y in 0..=(x + 1).min(k) {
            ids.insert((x, y), coords.len());
            coords.push((x, y));
        }
    }
    let mut edges = Vec::new();
    for &(x, y) in &coords {
        for (nx, ny) in [(x + 1, y), (x, y + 1)] {
            if let (Some(&a), Some(&b)) = (ids.get(&(x, y)), ids.get(&(nx, ny))) {
                edges.push((a, b));
            }
        }
    }
    MedianGraph::validate(&RawGraph::new(coords.len(), edges))
}

/// Finite truncation of the strip-gluing example: a base strip of
/// `len + strips` squares, plus `strips` new strips of `len` squares whose
/// bottom lines are identified with segments [n, n+len] of the base bottom.
pub fn strip_gluing(len: usize, strips: usize) -> Result<MedianGraph> {
    if len == 0 {
        return Err(Error::InvalidParams("strip length must be positive".into()));
    }
    let base_len = len + strips;
    // base strip: bottom (x,0) -> x, top (x,1) -> base_len+1+x
    let bottom = |x: usize| x;
    let top = |x: usize| base_len + 1 + x;
    let mut edges = Vec::new();
    for x in 0..=base_len {
        edges.push((bottom(x), top(x)));
        if x + 1 <= base_len {
            edges.push((bottom(x), bottom(x + 1)));
            edges.push((top(x), top(x + 1)));
        }
    }
    let mut next_id = 2 * (base_len + 1);
    for s in 1..=strips {
        // strip s: bottom identified with base bottom [s, s+len], new top row
        let row_start = next_id;
        for x in 0..=len {
            let t = row_start + x;
            edges.push((bottom(s + x), t));
            if x > 0 {
                edges.push((t - 1, t));
            }
        }
        next_id += len + 1;
    }
    MedianGraph::validate(&RawGraph::new(next_id, edges))
}

/// Dual of a random finite halfspace system. Samples a random DAG for `<`
/// (transitively closed) and random opposite pairs (closed upward under `<`),
/// enumerates the consistent orientations, and takes the dual graph. Retries
/// deterministically until the dual validates and has at most `MAX_VERTICES`
/// vertices.
pub fn random_pocset(planes: usize, seed: u64) -> Result<MedianGraph> {
    const MAX_VERTICES: usize = 40;
    if planes == 0 || planes > 16 {
        return Err(Error::InvalidParams("random pocset supports 1..=16 hyperplanes".into()));
    }
    for attempt in 0u64..256 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(attempt));
        let n = planes;
        let mut less = vec![false; n * n]; // less[i*n+j] = i < j
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(0.4) {
                    // orient along the hidden linear order given by ids
                    less[i * n + j] = true;
                }
            }
        }
        // transitive closure
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if less[i * n + k] && less[k * n + j] {
                        less[i * n + j] = true;
                    }
                }
            }
        }
        let mut opp = vec![false; n * n];
        for i in 0..n {
            for j in i + 1..n {
                if !less[i * n + j] && !less[j * n + i] && rng.random_bool(0.35) {
                    opp[i * n + j] = true;
                    opp[j * n + i] = true;
                }
            }
        }
        // close opposite upward under <: op(i,j) and i<i' forces op(i',j)
        loop {
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    if !opp[i * n + j] {
                        continue;
                    }
                    for k in 0..n {
                        if less[i * n + k] && !opp[k * n + j] && !less[k * n + j] && !less[j * n + k] && k != j {
                            opp[k * n + j] = true;
                            opp[j * n + k] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        // a pair that ended up both nested and opposite is inconsistent; retry
        let mut rel = vec![Relation::Equal; n * n];
        let mut ok = true;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                rel[i * n + j] = match (less[i * n + j], less[j * n + i], opp[i * n + j]) {
                    (true, false, false) => Relation::Less,
                    (false, true, false) => Relation::Greater,
                    (false, false, true) => Relation::Opposite,
                    (false, false, false) => Relation::Cross,
                    _ => {
                        ok = false;
                        Relation::Cross
                    }
                };
            }
        }
        if !ok {
            continue;
        }
        let Ok(pocset) = Pocset::new(n, rel) else { continue };
        let (raw, ufs) = pocset.dual_graph();
        if ufs.is_empty() || ufs.len() > MAX_VERTICES {
            continue;
        }
        if let Ok(g) = MedianGraph::validate(&raw) {
            return Ok(g);
        }
    }
    Err(Error::InvalidParams(format!(
        "random pocset generation did not converge for planes={planes} seed={seed}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts() {
        let g = grid(3, 3).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edges().len(), 12);
    }

    #[test]
    fn tree_counts() {
        let g = tree(3, 2).unwrap();
        assert_eq!(g.vertex_count(), 15);
        let hs = crate::hyperplane::HyperplaneSet::compute(&g).unwrap();
        assert_eq!(hs.dimension(), 1);
    }

    #[test]
    fn staircase_is_median() {
        let g = staircase(2).unwrap();
        assert_eq!(g.vertex_count(), 8);
        let hs = crate::hyperplane::HyperplaneSet::compute(&g).unwrap();
        assert_eq!(hs.dimension(), 2);
        assert_eq!(hs.len(), 4);
    }

    #[test]
    fn strip_gluing_validates() {
        let g = strip_gluing(4, 2).unwrap();
        let hs = crate::hyperplane::HyperplaneSet::compute(&g).unwrap();
        assert_eq!(hs.dimension(), 2);
        assert_eq!(g.component_count(), 1);
    }

    #[test]
    fn random_pocset_is_deterministic_and_bounded() {
        for seed in 0..10 {
            let a = random_pocset(5, seed).unwrap();
            let b = random_pocset(5, seed).unwrap();
            assert_eq!(a.vertex_count(), b.vertex_count());
            assert_eq!(a.edges(), b.edges());
            assert!(a.vertex_count() <= 40);
        }
    }

    #[test]
    fn three_cube_counts() {
        let g = hypercube_grid(2, 3).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edges().len(), 12);
    }
}
