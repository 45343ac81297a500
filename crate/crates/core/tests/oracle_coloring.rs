//! Oracle equivalence for the descending partitions: the fixpoint levels
//! must match a naive repeated-filter computation, and partitions must
//! transfer through quotients.

use std::collections::BTreeMap;

use mediandim::coloring::{compute_coloring, descend_partition};
use mediandim::hyperplane::{HyperplaneId, Relation};
use mediandim::instance;
use mediandim::pocset::quotient;
use mediandim::Complex;

/// Recomputes every descent set from scratch: a member survives when some
/// d-subset of the prior set is pairwise crossing and entirely below it,
/// found by brute combination enumeration.
fn naive_levels(cx: &Complex, k: &[HyperplaneId], d: usize) -> BTreeMap<HyperplaneId, u32> {
    fn combinations(items: &[HyperplaneId], d: usize) -> Vec<Vec<HyperplaneId>> {
        if d == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            for mut tail in combinations(&items[i + 1..], d - 1) {
                tail.insert(0, x);
                out.push(tail);
            }
        }
        out
    }
    let mut current: Vec<HyperplaneId> = k.to_vec();
    current.sort_unstable();
    let mut out = BTreeMap::new();
    let mut n = 0u32;
    while !current.is_empty() {
        let survivors: Vec<HyperplaneId> = current
            .iter()
            .copied()
            .filter(|&h| {
                let below: Vec<HyperplaneId> = current
                    .iter()
                    .copied()
                    .filter(|&j| cx.relations.relation(j, h) == Relation::Less)
                    .collect();
                combinations(&below, d).into_iter().any(|combo| {
                    combo.iter().enumerate().all(|(a, &x)| {
                        combo[a + 1..]
                            .iter()
                            .all(|&y| cx.relations.relation(x, y) == Relation::Cross)
                    })
                })
            })
            .collect();
        for &h in &current {
            if !survivors.contains(&h) {
                out.insert(h, n);
            }
        }
        current = survivors;
        n += 1;
    }
    out
}

fn suite() -> Vec<Complex> {
    let mut v = vec![
        Complex::build(instance::grid(4, 4).unwrap()).unwrap(),
        Complex::build(instance::staircase(2).unwrap()).unwrap(),
        Complex::build(instance::staircase(4).unwrap()).unwrap(),
        Complex::build(instance::hypercube_grid(2, 3).unwrap()).unwrap(),
        Complex::build(instance::strip_gluing(4, 2).unwrap()).unwrap(),
    ];
    for seed in 0..5 {
        v.push(Complex::build(instance::random_pocset(5, seed).unwrap()).unwrap());
    }
    v
}

#[test]
fn fixpoint_matches_naive_filter() {
    for cx in suite() {
        let all: Vec<HyperplaneId> = (0..cx.hyperplanes.len()).collect();
        for d in 2..=3 {
            assert_eq!(
                descend_partition(&cx, &all, d).unwrap(),
                naive_levels(&cx, &all, d),
                "levels disagree at d={d}"
            );
            // also on a proper subset
            let odd: Vec<HyperplaneId> = all.iter().copied().filter(|h| h % 2 == 1).collect();
            assert_eq!(
                descend_partition(&cx, &odd, d).unwrap(),
                naive_levels(&cx, &odd, d)
            );
        }
    }
}

#[test]
fn partitions_transfer_through_quotients() {
    for cx in suite() {
        let coloring = compute_coloring(&cx).unwrap();
        if coloring.k_c.is_empty() {
            continue;
        }
        let q = quotient(&cx, &coloring.k_c).unwrap();
        for d in 2..=3 {
            let source_levels = descend_partition(&cx, &q.k_set, d).unwrap();
            let all_q: Vec<HyperplaneId> = (0..q.complex.hyperplanes.len()).collect();
            let quotient_levels = descend_partition(&q.complex, &all_q, d).unwrap();
            for (i, &k) in q.k_set.iter().enumerate() {
                assert_eq!(
                    source_levels[&k],
                    quotient_levels[&q.plane_map[i]],
                    "partition level of {k} must transfer to its image"
                );
            }
        }
    }
}
