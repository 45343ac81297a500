//! The asymptotic-dimension cover: classify every vertex through the tower
//! map into triangulation stars, decompose each level into r-components, and
//! certify the result.

pub mod delta;
pub mod lp;
pub mod model;
pub mod triangulation;

use std::collections::BTreeMap;

use num::One;
use serde::{Deserialize, Serialize};

use crate::cube::decode;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::rat::{rat_from_str, rat_to_string, ExtRat, Rat};
use crate::tower::{build_tower, TowerMap};
use crate::Complex;

pub use delta::{compute_delta, model_stars};
pub use triangulation::{locate, star_levels, stars, CubeId, SimplexLocation, StarId};

/// One r-component of a level set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverComponent {
    pub vertices: Vec<Vertex>,
    pub diameter: u64,
    /// The witness T1-vertex: every member maps into this star.
    pub star: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverLevel {
    pub level: usize,
    pub vertices: Vec<Vertex>,
    pub components: Vec<CoverComponent>,
}

/// The full witness that the instance has asymptotic dimension at most D:
/// D+1 possibly-overlapping sets whose r-components each map into a single
/// star and have bounded diameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCertificate {
    pub r: Rat,
    pub delta: ExtRat,
    pub epsilon: ExtRat,
    pub n_stages: usize,
    pub levels: Vec<CoverLevel>,
    pub max_diameter: u64,
}

#[derive(Serialize, Deserialize)]
struct CertificateDto {
    r: String,
    delta: String,
    epsilon: String,
    #[serde(rename = "N")]
    n: usize,
    levels: Vec<CoverLevel>,
    max_diameter: u64,
}

impl Serialize for CoverCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let ext = |e: &ExtRat| match e {
            ExtRat::Finite(v) => rat_to_string(v),
            ExtRat::Infinite => "inf".to_string(),
        };
        CertificateDto {
            r: rat_to_string(&self.r),
            delta: ext(&self.delta),
            epsilon: ext(&self.epsilon),
            n: self.n_stages,
            levels: self.levels.clone(),
            max_diameter: self.max_diameter,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoverCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dto = CertificateDto::deserialize(d)?;
        let ext = |s: &str| -> std::result::Result<ExtRat, D::Error> {
            if s == "inf" {
                Ok(ExtRat::Infinite)
            } else {
                rat_from_str(s).map(ExtRat::Finite).map_err(serde::de::Error::custom)
            }
        };
        Ok(CoverCertificate {
            r: rat_from_str(&dto.r).map_err(serde::de::Error::custom)?,
            delta: ext(&dto.delta)?,
            epsilon: ext(&dto.epsilon)?,
            n_stages: dto.n,
            levels: dto.levels,
            max_diameter: dto.max_diameter,
        })
    }
}

/// The conservative separation constant for an instance: the minimum of the
/// per-dimension constants up to its top dimension.
fn instance_delta(dim: usize) -> Result<ExtRat> {
    let mut best = ExtRat::Infinite;
    for d in 1..=dim {
        let v = compute_delta(d)?;
        if v < best {
            best = v;
        }
    }
    Ok(best)
}

/// Integer radius of the chain relation: graph distances <= r.
fn chain_radius(r: &Rat) -> u64 {
    use num::ToPrimitive;
    (r.numer() / r.denom()).to_u64().unwrap_or(0)
}

struct Classification {
    /// Per level, vertex -> witness star.
    by_level: Vec<BTreeMap<Vertex, StarId>>,
}

fn classify(tower: &TowerMap, top_dim: usize) -> Result<Classification> {
    let fc = tower.final_complex();
    let images = tower.apply_all()?;
    let mut by_level: Vec<BTreeMap<Vertex, StarId>> = vec![BTreeMap::new(); top_dim + 1];
    for (x, img) in images.iter().enumerate() {
        let cube = decode(fc, img)
            .map_err(|e| Error::internal(format!("tower image failed to decode: {e}")))?;
        for (level, star) in stars(fc, &cube) {
            if level > top_dim {
                return Err(Error::internal(format!(
                    "star level {level} exceeds the source dimension {top_dim}"
                )));
            }
            by_level[level].insert(x, star);
        }
    }
    Ok(Classification { by_level })
}

fn components_of_level(
    cx: &Complex,
    members: &[Vertex],
    radius: u64,
) -> Vec<Vec<Vertex>> {
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if let Some(d) = cx.graph.distance(members[i], members[j]).finite() {
                if d <= radius {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for i in 0..members.len() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(members[i]);
    }
    groups.into_values().collect()
}

fn diameter(cx: &Complex, vertices: &[Vertex]) -> u64 {
    let mut best = 0;
    for (i, &x) in vertices.iter().enumerate() {
        for &y in &vertices[i..] {
            if let Some(d) = cx.graph.distance(x, y).finite() {
                best = best.max(d);
            }
        }
    }
    best
}

/// Builds the cover certificate for chain radius `r`: the tower is built at
/// epsilon = delta/(r+1), every vertex is classified into the stars of its
/// image, levels are split into r-components, and the certificate is
/// self-checked before being returned.
pub fn build_cover(cx: Complex, r: &Rat) -> Result<(CoverCertificate, TowerMap)> {
    use num::Zero;
    if r <= &Rat::zero() {
        return Err(Error::InvalidParams("r must be positive".into()));
    }
    let top_dim = cx.dimension();
    let delta = instance_delta(top_dim)?;
    let epsilon = match &delta {
        ExtRat::Finite(d) => ExtRat::Finite(d / (r + Rat::one())),
        ExtRat::Infinite => ExtRat::Infinite,
    };
    let tower_eps = match &epsilon {
        ExtRat::Finite(e) => e.clone(),
        // no two distinct stars exist; any tower works
        ExtRat::Infinite => Rat::one(),
    };
    let tower = build_tower(cx, &tower_eps)?;

    let classification = classify(&tower, top_dim)?;
    let radius = chain_radius(r);
    let mut levels = Vec::new();
    let mut max_diameter = 0;
    for (level, assignment) in classification.by_level.iter().enumerate() {
        let members: Vec<Vertex> = assignment.keys().copied().collect();
        let mut components = Vec::new();
        for comp in components_of_level(&tower.source, &members, radius) {
            let star = &assignment[&comp[0]];
            for &v in &comp {
                if &assignment[&v] != star {
                    return Err(Error::internal(format!(
                        "r-component at level {level} spans stars {} and {}",
                        star, assignment[&v]
                    )));
                }
            }
            let d = diameter(&tower.source, &comp);
            max_diameter = max_diameter.max(d);
            components.push(CoverComponent {
                vertices: comp,
                diameter: d,
                star: star.to_string(),
            });
        }
        levels.push(CoverLevel { level, vertices: members, components });
    }

    let cert = CoverCertificate {
        r: r.clone(),
        delta,
        epsilon,
        n_stages: tower.stages.len(),
        levels,
        max_diameter,
    };
    let problems = check_against(&tower, &cert);
    if !problems.is_empty() {
        return Err(Error::internal(format!("certificate self-check failed: {}", problems.join("; "))));
    }
    Ok((cert, tower))
}

/// Re-verifies a certificate from scratch: rebuilds the tower and the
/// classification, recomputes components and diameters, and checks every
/// invariant, including exact star separation of the images. Returns the
/// list of violations (empty = valid).
pub fn verify_certificate(cx: Complex, cert: &CoverCertificate) -> Result<Vec<String>> {
    let (fresh, tower) = build_cover(cx, &cert.r)?;
    let mut problems = Vec::new();
    if &fresh != cert {
        problems.push("certificate differs from a from-scratch rebuild".to_string());
    }
    problems.extend(check_against(&tower, cert));
    Ok(problems)
}

/// All certificate invariants, checked against a tower.
fn check_against(tower: &TowerMap, cert: &CoverCertificate) -> Vec<String> {
    let mut problems = Vec::new();
    let g = &tower.source.graph;
    let top_dim = tower.source.dimension();

    if cert.levels.len() != top_dim + 1 {
        problems.push(format!(
            "expected {} level entries, found {}",
            top_dim + 1,
            cert.levels.len()
        ));
    }

    // cover property
    let mut covered = vec![false; g.vertex_count()];
    for lv in &cert.levels {
        for &v in &lv.vertices {
            if v >= g.vertex_count() {
                problems.push(format!("level {} lists unknown vertex {v}", lv.level));
                continue;
            }
            covered[v] = true;
        }
        // components partition the level's vertex list
        let mut from_components: Vec<Vertex> =
            lv.components.iter().flat_map(|c| c.vertices.iter().copied()).collect();
        from_components.sort_unstable();
        let mut listed = lv.vertices.clone();
        listed.sort_unstable();
        if from_components != listed {
            problems.push(format!("level {} components do not partition its vertices", lv.level));
        }
    }
    if let Some(missing) = covered.iter().position(|&c| !c) {
        problems.push(format!("vertex {missing} is not covered by any level"));
    }

    // diameters and the maximum
    let mut seen_max = 0;
    for lv in &cert.levels {
        for comp in &lv.components {
            let d = diameter(&tower.source, &comp.vertices);
            if d != comp.diameter {
                problems.push(format!(
                    "component diameter mismatch at level {}: stored {}, actual {d}",
                    lv.level, comp.diameter
                ));
            }
            seen_max = seen_max.max(d);
        }
    }
    if seen_max != cert.max_diameter {
        problems.push(format!(
            "max diameter mismatch: stored {}, actual {seen_max}",
            cert.max_diameter
        ));
    }

    // r-component structure: no two distinct components of one level within
    // chain radius, and each component internally r-connected
    let radius = chain_radius(&cert.r);
    for lv in &cert.levels {
        for (i, a) in lv.components.iter().enumerate() {
            for b in lv.components.iter().skip(i + 1) {
                let mut min_d = None;
                for &x in &a.vertices {
                    for &y in &b.vertices {
                        if let Some(d) = g.distance(x, y).finite() {
                            min_d = Some(min_d.map_or(d, |m: u64| m.min(d)));
                        }
                    }
                }
                if let Some(d) = min_d {
                    if d <= radius {
                        problems.push(format!(
                            "level {}: two components within chain radius ({d} <= {radius})",
                            lv.level
                        ));
                    }
                }
            }
            let recomputed = components_of_level(&tower.source, &a.vertices, radius);
            if recomputed.len() != 1 {
                problems.push(format!(
                    "level {}: a stored component splits into {} chain components",
                    lv.level,
                    recomputed.len()
                ));
            }
        }
    }

    // star containment and exact separation of images
    let images = tower.apply_all();
    match classify(tower, top_dim) {
        Err(e) => problems.push(format!("classification failed: {e}")),
        Ok(fresh) => {
            for lv in &cert.levels {
                let assignment = &fresh.by_level[lv.level];
                for comp in &lv.components {
                    for &v in &comp.vertices {
                        match assignment.get(&v) {
                            None => problems.push(format!(
                                "vertex {v} is not in any level-{} star",
                                lv.level
                            )),
                            Some(star) if star.to_string() != comp.star => problems.push(format!(
                                "vertex {v} maps into star {star}, component claims {}",
                                comp.star
                            )),
                            _ => {}
                        }
                    }
                }
                // exact separation between distinct stars of one level,
                // over all vertex pairs
                if let (ExtRat::Finite(delta), Ok(images)) = (&cert.delta, &images) {
                    for (i, a) in lv.components.iter().enumerate() {
                        for b in lv.components.iter().skip(i + 1) {
                            if a.star == b.star {
                                continue;
                            }
                            for &x in &a.vertices {
                                for &y in &b.vertices {
                                    if let ExtRat::Finite(d) =
                                        crate::cube::l1_distance(&images[x], &images[y])
                                    {
                                        if &d < delta {
                                            problems.push(format!(
                                                "level {}: stars {} and {} too close ({} < {})",
                                                lv.level,
                                                a.star,
                                                b.star,
                                                rat_to_string(&d),
                                                rat_to_string(delta),
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance;
    use crate::rat::rat;

    #[test]
    fn single_vertex_cover() {
        let cx = Complex::from_raw(&crate::graph::RawGraph::new(1, vec![])).unwrap();
        let (cert, _) = build_cover(cx, &rat(1, 1)).unwrap();
        assert_eq!(cert.levels.len(), 1);
        assert_eq!(cert.levels[0].vertices, vec![0]);
        assert_eq!(cert.max_diameter, 0);
        assert!(cert.delta.is_infinite());
    }

    #[test]
    fn p9_cover_certifies() {
        let cx = Complex::build(instance::grid(9, 1).unwrap()).unwrap();
        let (cert, tower) = build_cover(cx, &rat(1, 1)).unwrap();
        assert_eq!(cert.levels.len(), 2);
        assert_eq!(cert.delta, ExtRat::Finite(rat(1, 4)));
        assert_eq!(cert.epsilon, ExtRat::Finite(rat(1, 8)));
        assert_eq!(cert.n_stages, 4);
        assert!(check_against(&tower, &cert).is_empty());
        let covered: usize = cert.levels.iter().map(|l| l.vertices.len()).sum();
        assert!(covered >= 9);
    }

    #[test]
    fn grid_cover_certifies() {
        let cx = Complex::build(instance::grid(4, 4).unwrap()).unwrap();
        let (cert, tower) = build_cover(cx, &rat(2, 1)).unwrap();
        assert_eq!(cert.levels.len(), 3);
        assert!(check_against(&tower, &cert).is_empty());
    }

    #[test]
    fn verify_rejects_tampering() {
        let cx = Complex::build(instance::grid(3, 3).unwrap()).unwrap();
        let (mut cert, _) = build_cover(cx.clone(), &rat(1, 1)).unwrap();
        cert.max_diameter += 1;
        let problems = verify_certificate(cx, &cert).unwrap();
        assert!(!problems.is_empty());
    }

    #[test]
    fn certificate_json_round_trip() {
        let cx = Complex::build(instance::grid(3, 3).unwrap()).unwrap();
        let (cert, _) = build_cover(cx, &rat(3, 2)).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        assert!(text.contains("\"N\""));
        let back: CoverCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
    }
}
