//! Property tests over randomly generated instances and points.

use proptest::prelude::*;

use mediandim::cube::{iota, l1_distance, FinSupportPoint};
use mediandim::instance;
use mediandim::io::{point_from_file, point_to_file, GraphFile};
use mediandim::project::{CarrierDistances, Projector};
use mediandim::rat::{rat, ExtRat};
use mediandim::sample::sample_point;
use mediandim::Complex;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Random halfspace-system duals validate, and on them the distance
    /// equals the separator count for every pair.
    #[test]
    fn random_duals_are_median_with_separator_metric(seed in 0u64..5000, planes in 3usize..7) {
        let g = instance::random_pocset(planes, seed).unwrap();
        let cx = Complex::build(g).unwrap();
        let n = cx.graph.vertex_count();
        for x in 0..n {
            for y in 0..n {
                let d = cx.graph.distance(x, y).finite().unwrap();
                let sep = cx.hyperplanes.separating(&cx.graph, x, y).unwrap();
                prop_assert_eq!(sep.len() as u64, d);
            }
        }
    }

    /// The median does not depend on the argument order.
    #[test]
    fn median_is_symmetric_on_random_duals(seed in 0u64..5000) {
        let g = instance::random_pocset(5, seed).unwrap();
        let cx = Complex::build(g).unwrap();
        let n = cx.graph.vertex_count();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let m = cx.graph.median(x, y, z).unwrap();
                    prop_assert_eq!(m, cx.graph.median(y, z, x).unwrap());
                    prop_assert_eq!(m, cx.graph.median(z, y, x).unwrap());
                }
            }
        }
    }

    /// Triangle inequality for the l1 metric on random points.
    #[test]
    fn l1_triangle_inequality(seed in 0u64..5000) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cx = Complex::build(instance::staircase(3).unwrap()).unwrap();
        let a = sample_point(&cx, 0, &mut rng, 6, 16);
        let b = sample_point(&cx, 0, &mut rng, 6, 16);
        let c = sample_point(&cx, 0, &mut rng, 6, 16);
        let (ab, bc, ac) = (l1_distance(&a, &b), l1_distance(&b, &c), l1_distance(&a, &c));
        let (ab, bc, ac) = (ab.finite().unwrap(), bc.finite().unwrap(), ac.finite().unwrap());
        prop_assert!(ac <= &(ab + bc));
    }

    /// The embedding is isometric on random duals.
    #[test]
    fn iota_isometric_on_random_duals(seed in 0u64..5000) {
        let cx = Complex::build(instance::random_pocset(5, seed).unwrap()).unwrap();
        let n = cx.graph.vertex_count();
        for x in 0..n {
            for y in 0..n {
                let d = cx.graph.distance(x, y).finite().unwrap();
                let l1 = l1_distance(&iota(&cx, x).unwrap(), &iota(&cx, y).unwrap());
                prop_assert_eq!(l1, ExtRat::Finite(rat(d as i64, 1)));
            }
        }
    }

    /// Projection is contractive on random duals as well.
    #[test]
    fn projection_contracts_on_random_duals(seed in 0u64..5000) {
        use rand::SeedableRng;
        let cx = Complex::build(instance::random_pocset(6, seed).unwrap()).unwrap();
        let dist = CarrierDistances::compute(&cx);
        let pr = Projector::new(&cx, &dist);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
        for _ in 0..20 {
            let a = sample_point(&cx, 0, &mut rng, 5, 16);
            let b = sample_point(&cx, 0, &mut rng, 5, 16);
            let pa = pr.project_point(&a).unwrap();
            let pb = pr.project_point(&b).unwrap();
            prop_assert!(l1_distance(&pa, &pb) <= l1_distance(&a, &b));
        }
    }

    /// Point serialization round-trips exactly.
    #[test]
    fn point_json_round_trip(seed in 0u64..5000) {
        use rand::SeedableRng;
        let cx = Complex::build(instance::grid(4, 4).unwrap()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let p: FinSupportPoint = sample_point(&cx, 0, &mut rng, 8, 64);
        let file = point_to_file(&p);
        let text = serde_json::to_string(&file).unwrap();
        let back = point_from_file(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    /// Graph serialization round-trips through JSON byte-identically on a
    /// second pass.
    #[test]
    fn graph_json_round_trip(seed in 0u64..5000) {
        let g = instance::random_pocset(5, seed).unwrap();
        let file = GraphFile::from_graph(&g);
        let text = serde_json::to_string(&file).unwrap();
        let back: GraphFile = serde_json::from_str(&text).unwrap();
        let g2 = mediandim::MedianGraph::validate(&back.to_raw().unwrap()).unwrap();
        prop_assert_eq!(g.edges(), g2.edges());
        let text2 = serde_json::to_string(&GraphFile::from_graph(&g2)).unwrap();
        prop_assert_eq!(text, text2);
    }
}
