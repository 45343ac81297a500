//! The descending partitions K^d_{>=n}, iterated rank vectors, predecessors,
//! and the recursive 2-coloring whose 0-class drives the quotient tower.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hyperplane::{HyperplaneId, Relation};
use crate::Complex;

/// Rank vectors, colors, predecessor lists, and the 0-colored set K_c.
#[derive(Debug, Clone)]
pub struct ColoringAssignment {
    /// Per hyperplane: the iterated-partition levels over (D, D-1, ..., 2)
    /// where D is the component dimension; a single 0 when D <= 1.
    pub rank: Vec<Vec<u32>>,
    /// 0 or 1 per hyperplane.
    pub color: Vec<u8>,
    /// Per hyperplane: hyperplanes strictly below with nothing in between.
    pub predecessors: Vec<Vec<HyperplaneId>>,
    /// The set c^{-1}(0), ascending.
    pub k_c: Vec<HyperplaneId>,
}

/// One descent step restricted to the current set: members that admit `d`
/// pairwise-crossing members strictly below them.
fn descend_once(cx: &Complex, current: &[HyperplaneId], d: usize) -> Vec<HyperplaneId> {
    current
        .iter()
        .copied()
        .filter(|&h| {
            let candidates: Vec<HyperplaneId> = current
                .iter()
                .copied()
                .filter(|&k| cx.relations.relation(k, h) == Relation::Less)
                .collect();
            has_crossing_clique(cx, &candidates, d)
        })
        .collect()
}

/// Backtracking d-clique search in the crossing graph, candidates in
/// ascending-degeneracy order to fail fast.
fn has_crossing_clique(cx: &Complex, candidates: &[HyperplaneId], d: usize) -> bool {
    if candidates.len() < d {
        return false;
    }
    let mut by_degree: Vec<HyperplaneId> = candidates.to_vec();
    let degree = |h: HyperplaneId| {
        candidates.iter().filter(|&&k| cx.relations.relation(h, k) == Relation::Cross).count()
    };
    by_degree.sort_by_key(|&h| degree(h));

    fn grow(cx: &Complex, chosen: &mut Vec<HyperplaneId>, rest: &[HyperplaneId], d: usize) -> bool {
        if chosen.len() == d {
            return true;
        }
        for (i, &h) in rest.iter().enumerate() {
            if chosen.len() + (rest.len() - i) < d {
                return false;
            }
            if chosen.iter().all(|&k| cx.relations.relation(k, h) == Relation::Cross) {
                chosen.push(h);
                if grow(cx, chosen, &rest[i + 1..], d) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    grow(cx, &mut Vec::new(), &by_degree, d)
}

/// Level of each member of K under the d-descent: the unique n with
/// h in K^d_n. Computed as a fixpoint; levels strictly shrink on finite K.
pub fn descend_partition(
    cx: &Complex,
    k: &[HyperplaneId],
    d: usize,
) -> Result<BTreeMap<HyperplaneId, u32>> {
    if d < 2 {
        return Err(Error::InvalidParams("descent requires d >= 2".into()));
    }
    let mut levels = BTreeMap::new();
    let mut current: Vec<HyperplaneId> = {
        let mut v = k.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    for &h in &current {
        cx.hyperplanes.check_id(h)?;
    }
    let mut n = 0u32;
    while !current.is_empty() {
        let next = descend_once(cx, &current, d);
        for &h in &current {
            if next.binary_search(&h).is_err() {
                levels.insert(h, n);
            }
        }
        if next.len() == current.len() {
            return Err(Error::internal("descent did not shrink"));
        }
        current = next;
        n += 1;
    }
    Ok(levels)
}

/// Iterated rank vectors: per component, levels over d = D, D-1, ..., 2
/// refine the partition; constant 0 when the component dimension is <= 1.
pub fn rank_vector(cx: &Complex) -> Result<Vec<Vec<u32>>> {
    let mut rank: Vec<Vec<u32>> = vec![Vec::new(); cx.hyperplanes.len()];
    for c in 0..cx.graph.component_count() {
        let ids = cx.hyperplanes.in_component(c).to_vec();
        let dim = cx.hyperplanes.component_dimension(c);
        if dim <= 1 {
            for &h in &ids {
                rank[h] = vec![0];
            }
            continue;
        }
        // groups of hyperplanes sharing the rank prefix
        let mut groups: Vec<Vec<HyperplaneId>> = vec![ids];
        for d in (2..=dim).rev() {
            let mut next_groups = Vec::new();
            for group in groups {
                let levels = descend_partition(cx, &group, d)?;
                let mut by_level: BTreeMap<u32, Vec<HyperplaneId>> = BTreeMap::new();
                for &h in &group {
                    let n = levels[&h];
                    rank[h].push(n);
                    by_level.entry(n).or_default().push(h);
                }
                next_groups.extend(by_level.into_values());
            }
            groups = next_groups;
        }
    }
    Ok(rank)
}

fn lex_le(a: &[u32], b: &[u32]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    a <= b
}

/// The recursive coloring: c(h) = 1 iff every rank-maximal predecessor of h
/// has color 0 (vacuously 1 when h touches the base). Hyperplanes are
/// processed in ascending base distance, which strictly dominates all
/// predecessors.
pub fn compute_coloring(cx: &Complex) -> Result<ColoringAssignment> {
    let n = cx.hyperplanes.len();
    let rank = rank_vector(cx)?;
    let predecessors: Vec<Vec<HyperplaneId>> =
        (0..n).map(|h| cx.relations.predecessors(h).to_vec()).collect();

    let mut order: Vec<HyperplaneId> = (0..n).collect();
    order.sort_by_key(|&h| (cx.relations.base_distance(h), h));

    let mut color = vec![u8::MAX; n];
    for &h in &order {
        let preds = &predecessors[h];
        debug_assert!(
            preds.is_empty()
                == cx.hyperplanes.plane(h).carrier.contains(cx.graph.base_of(cx.hyperplanes.plane(h).component))
        );
        // rank-maximal predecessors: lexicographically maximal rank
        let maximal: Vec<HyperplaneId> = preds
            .iter()
            .copied()
            .filter(|&k| preds.iter().all(|&k1| lex_le(&rank[k1], &rank[k])))
            .collect();
        debug_assert!(maximal.iter().all(|&k| color[k] != u8::MAX));
        color[h] = if maximal.iter().all(|&k| color[k] == 0) { 1 } else { 0 };
    }

    let k_c = (0..n).filter(|&h| color[h] == 0).collect();
    Ok(ColoringAssignment { rank, color, predecessors, k_c })
}
