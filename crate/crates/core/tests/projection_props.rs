//! Projection properties: the embedded complex is fixed pointwise, the map
//! contracts, repeats, and does not depend on processing order.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mediandim::cube::{encode, l1_distance};
use mediandim::instance;
use mediandim::project::{CarrierDistances, Projector};
use mediandim::sample::{sample_cube_point, sample_point};
use mediandim::Complex;

fn suite() -> Vec<Complex> {
    vec![
        Complex::build(instance::grid(4, 4).unwrap()).unwrap(),
        Complex::build(instance::staircase(3).unwrap()).unwrap(),
        Complex::build(instance::tree(3, 2).unwrap()).unwrap(),
        Complex::build(instance::strip_gluing(3, 2).unwrap()).unwrap(),
    ]
}

#[test]
fn embedded_points_are_fixed() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for cx in suite() {
        let dist = CarrierDistances::compute(&cx);
        let pr = Projector::new(&cx, &dist);
        for _ in 0..250 {
            let cube = sample_cube_point(&cx, &mut rng, 64);
            let p = encode(&cx, &cube).unwrap();
            let projected = pr.project_point(&p).unwrap();
            assert_eq!(projected, p);
            assert_eq!(pr.project(&p).unwrap(), cube);
        }
    }
}

#[test]
fn contractive_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for cx in suite() {
        let dist = CarrierDistances::compute(&cx);
        let pr = Projector::new(&cx, &dist);
        for _ in 0..500 {
            let c = rng.random_range(0..cx.graph.component_count());
            let a = sample_point(&cx, c, &mut rng, 6, 32);
            let b = sample_point(&cx, c, &mut rng, 6, 32);
            let pa = pr.project_point(&a).unwrap();
            let pb = pr.project_point(&b).unwrap();
            assert!(
                l1_distance(&pa, &pb) <= l1_distance(&a, &b),
                "projection must contract"
            );
        }
    }
}

#[test]
fn idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for cx in suite() {
        let dist = CarrierDistances::compute(&cx);
        let pr = Projector::new(&cx, &dist);
        for _ in 0..250 {
            let a = sample_point(&cx, 0, &mut rng, 6, 32);
            let pa = pr.project_point(&a).unwrap();
            assert_eq!(pr.project_point(&pa).unwrap(), pa);
        }
    }
}

#[test]
fn op_stage_is_order_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    for cx in suite() {
        let dist = CarrierDistances::compute(&cx);
        let pr = Projector::new(&cx, &dist);
        for _ in 0..50 {
            let a = sample_point(&cx, 0, &mut rng, 8, 16);
            let canonical = pr.project_op(&a);
            for _ in 0..20 {
                let mut order = pr.op_support(&a);
                order.shuffle(&mut rng);
                let shuffled = pr.project_op_in_order(&a, &order).unwrap();
                assert_eq!(shuffled, canonical);
            }
        }
    }
}

#[test]
fn less_stage_is_tiebreak_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    for cx in suite() {
        let dist = CarrierDistances::compute(&cx);
        let pr = Projector::new(&cx, &dist);
        for _ in 0..50 {
            let a = pr.project_op(&sample_point(&cx, 0, &mut rng, 8, 16));
            let canonical = pr.project_less(&a).unwrap();
            for _ in 0..20 {
                let mut chooser_rng = ChaCha8Rng::seed_from_u64(rng.random());
                let randomized = pr
                    .project_less_with_tiebreak(&a, |bucket| {
                        chooser_rng.random_range(0..bucket.len())
                    })
                    .unwrap();
                assert_eq!(randomized, canonical);
            }
        }
    }
}
