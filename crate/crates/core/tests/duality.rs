//! Duality round-trips: ultrafilter enumeration against the vertex set, the
//! dual graph against the source component, and quotient metric identities.

use std::collections::HashMap;

use mediandim::graph::Vertex;
use mediandim::hyperplane::Side;
use mediandim::instance;
use mediandim::pocset::{quotient, Pocset};
use mediandim::Complex;

fn suite() -> Vec<Complex> {
    vec![
        Complex::build(instance::grid(4, 4).unwrap()).unwrap(),
        Complex::build(instance::tree(3, 2).unwrap()).unwrap(),
        Complex::build(instance::staircase(3).unwrap()).unwrap(),
        Complex::build(instance::strip_gluing(3, 2).unwrap()).unwrap(),
        Complex::build(instance::hypercube_grid(2, 3).unwrap()).unwrap(),
    ]
}

/// The canonical bijection sends an ultrafilter to the vertex with that side
/// vector; it must be a graph isomorphism onto the component.
#[test]
fn ultrafilters_reconstruct_every_component() {
    for cx in suite() {
        for c in 0..cx.graph.component_count() {
            let (pocset, ids) = Pocset::from_component(&cx, c);
            let ufs = pocset.enumerate_ultrafilters();
            let members = cx.graph.component_members(c);
            assert_eq!(ufs.len(), members.len(), "count must equal the vertex count");

            let mut by_sides: HashMap<Vec<bool>, Vertex> = HashMap::new();
            for &v in members {
                let key: Vec<bool> =
                    ids.iter().map(|&h| cx.hyperplanes.side(h, v) == Side::Plus).collect();
                assert!(by_sides.insert(key, v).is_none(), "side vectors identify vertices");
            }
            let to_vertex: Vec<Vertex> = ufs
                .iter()
                .map(|u| *by_sides.get(&u.plus).expect("every orientation is principal"))
                .collect();
            for (a, ua) in ufs.iter().enumerate() {
                for (b, ub) in ufs.iter().enumerate().skip(a + 1) {
                    let diff = ua.plus.iter().zip(&ub.plus).filter(|(x, y)| x != y).count();
                    let d = cx.graph.distance(to_vertex[a], to_vertex[b]).finite().unwrap();
                    assert_eq!(diff as u64, d, "separation count equals distance");
                    assert_eq!(diff == 1, d == 1);
                }
            }
        }
    }
}

#[test]
fn dual_graph_is_median() {
    for cx in suite() {
        for c in 0..cx.graph.component_count() {
            let (pocset, _) = Pocset::from_component(&cx, c);
            let (raw, _) = pocset.dual_graph();
            mediandim::MedianGraph::validate(&raw).expect("dual of a halfspace system is median");
        }
    }
}

#[test]
fn quotient_distance_formula_exhaustive() {
    for cx in suite() {
        let n_planes = cx.hyperplanes.len();
        for k in [
            (0..n_planes).collect::<Vec<_>>(),
            (0..n_planes).step_by(2).collect(),
            (0..n_planes).step_by(3).collect(),
        ] {
            let q = quotient(&cx, &k).unwrap();
            for x in 0..cx.graph.vertex_count() {
                for y in 0..cx.graph.vertex_count() {
                    if cx.graph.component_of(x) != cx.graph.component_of(y) {
                        assert!(q
                            .complex
                            .graph
                            .distance(q.vertex_map[x], q.vertex_map[y])
                            .finite()
                            .is_none());
                        continue;
                    }
                    let expected = k
                        .iter()
                        .filter(|&&h| cx.hyperplanes.side(h, x) != cx.hyperplanes.side(h, y))
                        .count() as u64;
                    let got = q
                        .complex
                        .graph
                        .dist_in_component(q.vertex_map[x], q.vertex_map[y])
                        .unwrap();
                    assert_eq!(got, expected);
                }
            }
        }
    }
}

#[test]
fn quotient_duality_preserves_relations() {
    for cx in suite() {
        let n_planes = cx.hyperplanes.len();
        let k: Vec<_> = (0..n_planes).filter(|h| h % 3 != 2).collect();
        let q = quotient(&cx, &k).unwrap();
        for (i, &a) in q.k_set.iter().enumerate() {
            for (j, &b) in q.k_set.iter().enumerate() {
                assert_eq!(
                    cx.relations.relation(a, b),
                    q.complex.relations.relation(q.plane_map[i], q.plane_map[j]),
                    "relation of ({a},{b}) must transfer"
                );
            }
        }
    }
}

#[test]
fn quotient_base_is_image_of_base() {
    for cx in suite() {
        let k: Vec<_> = (0..cx.hyperplanes.len()).step_by(2).collect();
        let q = quotient(&cx, &k).unwrap();
        for c in 0..cx.graph.component_count() {
            let qc = q.component_map[c];
            assert_eq!(q.complex.graph.base_of(qc), q.vertex_map[cx.graph.base_of(c)]);
        }
    }
}

#[test]
fn gate_is_idempotent_and_minimizing() {
    for cx in suite() {
        // halfspaces are convex: gate onto each from every vertex
        for (_, plane) in cx.hyperplanes.iter() {
            let side: Vec<Vertex> = plane.plus.iter().collect();
            for &o in cx.graph.component_members(plane.component) {
                let g = mediandim::pocset::gate(&cx, o, &side).unwrap();
                assert!(side.contains(&g));
                let best = side
                    .iter()
                    .map(|&v| cx.graph.dist_in_component(o, v).unwrap())
                    .min()
                    .unwrap();
                assert_eq!(cx.graph.dist_in_component(o, g).unwrap(), best);
                if side.contains(&o) {
                    assert_eq!(g, o, "gate of a member is itself");
                }
            }
        }
    }
}
