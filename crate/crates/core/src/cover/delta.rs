//! The star-separation constant: a certified positive lower bound on the l1
//! distance between distinct same-level T2-stars, computed exactly on the
//! model complex by pairwise polytope minimization.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num::{Signed, Zero};

use crate::cover::lp::polytope_l1_distance;
use crate::cover::model::{Chain, ModelComplex};
use crate::error::{Error, Result};
use crate::rat::{ExtRat, Rat};

/// One T1-vertex of the model with its closed T2-star as exact polytopes.
pub struct StarData {
    pub level: usize,
    pub chain: Chain,
    pub simplexes: Vec<Vec<Vec<Rat>>>,
    pub bbox: (Vec<Rat>, Vec<Rat>),
}

pub struct ModelStars {
    pub model: ModelComplex,
    pub stars: Vec<StarData>,
}

fn bbox_of(simplexes: &[Vec<Vec<Rat>>], dim: usize) -> (Vec<Rat>, Vec<Rat>) {
    let mut lo = vec![Rat::new(100.into(), 1.into()); dim];
    let mut hi = vec![Rat::new((-100).into(), 1.into()); dim];
    for s in simplexes {
        for v in s {
            for i in 0..dim {
                if v[i] < lo[i] {
                    lo[i] = v[i].clone();
                }
                if v[i] > hi[i] {
                    hi[i] = v[i].clone();
                }
            }
        }
    }
    (lo, hi)
}

/// l1 gap between boxes: a lower bound on the distance of anything inside.
fn bbox_gap(a: &(Vec<Rat>, Vec<Rat>), b: &(Vec<Rat>, Vec<Rat>)) -> Rat {
    let mut total = Rat::zero();
    for i in 0..a.0.len() {
        if a.0[i] > b.1[i] {
            total += &a.0[i] - &b.1[i];
        } else if b.0[i] > a.1[i] {
            total += &b.0[i] - &a.1[i];
        }
    }
    total
}

/// Enumerates every T1-vertex of the model with its star polytopes.
pub fn model_stars(dim: usize) -> ModelStars {
    let model = ModelComplex::new(dim);
    let chains: Vec<Chain> = model.t_simplexes.clone();
    let stars = chains
        .into_iter()
        .map(|chain| {
            let simplexes = model.star_simplexes(&chain);
            let bbox = bbox_of(&simplexes, dim);
            StarData { level: ModelComplex::level(&chain), chain, simplexes, bbox }
        })
        .collect();
    ModelStars { model, stars }
}

/// Exact minimum l1 distance between two unions of simplexes. Vertex pairs
/// seed an upper bound; simplex pairs whose bounding boxes cannot beat the
/// running minimum are skipped before any LP runs.
fn union_distance(a: &StarData, b: &StarData) -> Option<Rat> {
    let mut best: Option<Rat> = None;
    for sa in &a.simplexes {
        for sb in &b.simplexes {
            for va in sa {
                for vb in sb {
                    let d: Rat = va.iter().zip(vb).map(|(x, y)| (x - y).abs()).sum();
                    if best.as_ref().map(|b| &d < b).unwrap_or(true) {
                        best = Some(d);
                    }
                }
            }
        }
    }
    for sa in &a.simplexes {
        let ba = bbox_of(std::slice::from_ref(sa), a.bbox.0.len());
        for sb in &b.simplexes {
            let bb = bbox_of(std::slice::from_ref(sb), b.bbox.0.len());
            let gap = bbox_gap(&ba, &bb);
            if let Some(best) = &best {
                if &gap >= best {
                    continue;
                }
            }
            let d = polytope_l1_distance(sa, sb);
            if best.as_ref().map(|b| &d < b).unwrap_or(true) {
                best = Some(d);
            }
        }
    }
    best
}

fn compute_delta_uncached(dim: usize) -> ExtRat {
    let data = model_stars(dim);
    // pairs of distinct same-level stars, nearest bounding boxes first
    let mut pairs: Vec<(usize, usize, Rat)> = Vec::new();
    for i in 0..data.stars.len() {
        for j in i + 1..data.stars.len() {
            if data.stars[i].level == data.stars[j].level {
                pairs.push((i, j, bbox_gap(&data.stars[i].bbox, &data.stars[j].bbox)));
            }
        }
    }
    pairs.sort_by(|a, b| a.2.cmp(&b.2));

    let mut best = ExtRat::Infinite;
    for (i, j, gap) in pairs {
        if let ExtRat::Finite(b) = &best {
            if &gap >= b {
                break; // sorted by gap: nothing later can be closer
            }
        }
        if let Some(d) = union_distance(&data.stars[i], &data.stars[j]) {
            if ExtRat::Finite(d.clone()) < best {
                best = ExtRat::Finite(d);
            }
        }
    }
    best
}

/// The separation constant for complexes of dimension `dim`: the minimum l1
/// distance between distinct same-level stars on the model complex. Infinite
/// for dimension 0 (no two distinct stars); cached per dimension.
pub fn compute_delta(dim: usize) -> Result<ExtRat> {
    if dim == 0 {
        return Ok(ExtRat::Infinite);
    }
    if dim > 3 {
        return Err(Error::DimensionTooLarge(dim));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, ExtRat>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&dim) {
        return Ok(v.clone());
    }
    let v = compute_delta_uncached(dim);
    cache.lock().unwrap().insert(dim, v.clone());
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn dimension_zero_has_no_distinct_stars() {
        assert_eq!(compute_delta(0).unwrap(), ExtRat::Infinite);
    }

    #[test]
    fn dimension_too_large_is_rejected() {
        assert!(matches!(compute_delta(4), Err(Error::DimensionTooLarge(4))));
    }

    #[test]
    fn delta_one_is_a_quarter() {
        assert_eq!(compute_delta(1).unwrap(), ExtRat::Finite(rat(1, 4)));
    }

    #[test]
    fn delta_two_is_positive() {
        let d = compute_delta(2).unwrap();
        let ExtRat::Finite(v) = d else { panic!("expected finite delta") };
        assert!(v > Rat::zero());
        // regression pin: the oracle's exact value on the model complex
        assert_eq!(v, rat(1, 12));
    }

    #[test]
    fn bbox_gap_examples() {
        let a = (vec![rat(0, 1)], vec![rat(1, 1)]);
        let b = (vec![rat(3, 2)], vec![rat(2, 1)]);
        assert_eq!(bbox_gap(&a, &b), rat(1, 2));
        assert_eq!(bbox_gap(&b, &a), rat(1, 2));
        let c = (vec![rat(1, 2)], vec![rat(3, 4)]);
        assert_eq!(bbox_gap(&a, &c), rat(0, 1));
    }
}
