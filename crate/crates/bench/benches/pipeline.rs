use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use mediandim::instance;
use mediandim::pocset::Pocset;
use mediandim::project::{CarrierDistances, Projector};
use mediandim::rat::rat;
use mediandim::sample::sample_point;
use mediandim::tower::build_tower_stages;
use mediandim::Complex;

fn bench_validate(c: &mut Criterion) {
    c.bench_function("validate grid 6x6", |b| {
        let raw = instance::grid(6, 6).unwrap().to_raw();
        b.iter(|| mediandim::MedianGraph::validate(black_box(&raw)).unwrap())
    });
}

fn bench_hyperplanes(c: &mut Criterion) {
    c.bench_function("hyperplanes + relations grid 6x6", |b| {
        let g = instance::grid(6, 6).unwrap();
        b.iter(|| Complex::build(black_box(g.clone())).unwrap())
    });
}

fn bench_ultrafilters(c: &mut Criterion) {
    c.bench_function("ultrafilter enumeration grid 5x5", |b| {
        let cx = Complex::build(instance::grid(5, 5).unwrap()).unwrap();
        let (pocset, _) = Pocset::from_component(&cx, 0);
        b.iter(|| black_box(&pocset).enumerate_ultrafilters())
    });
}

fn bench_projection(c: &mut Criterion) {
    c.bench_function("projection staircase(3), 32 points", |b| {
        use rand::SeedableRng;
        let cx = Complex::build(instance::staircase(3).unwrap()).unwrap();
        let dist = CarrierDistances::compute(&cx);
        let pr = Projector::new(&cx, &dist);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let points: Vec<_> = (0..32).map(|_| sample_point(&cx, 0, &mut rng, 8, 32)).collect();
        b.iter_batched(
            || points.clone(),
            |pts| {
                for p in pts {
                    black_box(pr.project_point(&p).unwrap());
                }
            },
            BatchSize::SmallInput,
        )
    });
}

fn bench_tower(c: &mut Criterion) {
    c.bench_function("tower apply_all grid 6x6, one stage", |b| {
        let cx = Complex::build(instance::grid(6, 6).unwrap()).unwrap();
        let tm = build_tower_stages(cx, 1, None).unwrap();
        b.iter(|| black_box(&tm).apply_all().unwrap())
    });
}

fn bench_cover(c: &mut Criterion) {
    c.bench_function("build_cover grid 4x4 r=1", |b| {
        // warm the per-dimension separation cache so the bench measures the
        // cover pipeline itself
        mediandim::compute_delta(2).unwrap();
        let cx = Complex::build(instance::grid(4, 4).unwrap()).unwrap();
        b.iter(|| mediandim::build_cover(black_box(cx.clone()), &rat(1, 1)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_validate,
    bench_hyperplanes,
    bench_ultrafilters,
    bench_projection,
    bench_tower,
    bench_cover
);
criterion_main!(benches);
