//! Random point samplers used by the verification suites.

use std::collections::BTreeMap;

use rand::Rng;

use crate::cube::{CubePoint, FinSupportPoint};
use crate::graph::ComponentId;
use crate::hyperplane::{HyperplaneId, Relation, Side};
use crate::rat::rat;
use crate::Complex;

/// A random cube point: a random vertex, a random pairwise-crossing subset of
/// the hyperplanes at it, and random rational coordinates with denominator at
/// most `max_den`, anchored at the cube corner nearest the base.
pub fn sample_cube_point(cx: &Complex, rng: &mut impl Rng, max_den: u64) -> CubePoint {
    let v = rng.random_range(0..cx.graph.vertex_count());
    let mut here: Vec<HyperplaneId> = cx.hyperplanes.at_vertex(v).iter().map(|&(h, _)| h).collect();
    for i in (1..here.len()).rev() {
        here.swap(i, rng.random_range(0..=i));
    }
    let mut spans: Vec<HyperplaneId> = Vec::new();
    for h in here {
        if rng.random_bool(0.7)
            && spans.iter().all(|&k| cx.relations.relation(k, h) == Relation::Cross)
        {
            spans.push(h);
        }
    }
    // anchor at the corner nearest the base
    let mut corner = v;
    for &h in &spans {
        if cx.hyperplanes.side(h, corner) == Side::Plus {
            corner = cx.hyperplanes.cross_neighbor(corner, h).expect("cube edge");
        }
    }
    let mut frac = BTreeMap::new();
    for &h in &spans {
        let q = rng.random_range(2..=max_den);
        let p = rng.random_range(1..q);
        frac.insert(h, rat(p as i64, q as i64));
    }
    CubePoint { vertex: corner, frac }
}

/// A random point of C(X) over `component`: an arbitrary finitely supported
/// map with rational values in [0,1], not necessarily in the image of the
/// embedding.
pub fn sample_point(
    cx: &Complex,
    component: ComponentId,
    rng: &mut impl Rng,
    max_support: usize,
    max_den: u64,
) -> FinSupportPoint {
    let ids = cx.hyperplanes.in_component(component);
    let mut entries = BTreeMap::new();
    if !ids.is_empty() {
        let want = rng.random_range(0..=max_support.min(ids.len()));
        for _ in 0..want {
            let h = ids[rng.random_range(0..ids.len())];
            let q = rng.random_range(1..=max_den);
            let p = rng.random_range(0..=q);
            entries.insert(h, rat(p as i64, q as i64));
        }
    }
    FinSupportPoint::new(component, entries).expect("values are in [0,1]")
}
