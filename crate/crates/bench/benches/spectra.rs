use criterion::{black_box, criterion_group, criterion_main, Criterion};
use freeplate_core::ball::fundamental_tone;
use freeplate_core::bessel::{ultra_i, ultra_j, UltraIndex};
use freeplate_core::iso::{quotient_bound, DirectionSampler, DomainSpec};
use freeplate_core::rod::positive_modes;

fn bench_bessel(c: &mut Criterion) {
    let idx = UltraIndex::new(3, 1).unwrap();
    c.bench_function("ultra_j d3 l1 z5", |b| {
        b.iter(|| ultra_j(idx, black_box(0), black_box(5.0)).unwrap())
    });
    c.bench_function("ultra_i d3 l1 z50", |b| {
        b.iter(|| ultra_i(idx, black_box(0), black_box(50.0)).unwrap())
    });
}

fn bench_ball(c: &mut Criterion) {
    c.bench_function("fundamental_tone d2 tau1", |b| {
        b.iter(|| fundamental_tone(black_box(2), black_box(1.0)).unwrap())
    });
}

fn bench_rod(c: &mut Criterion) {
    c.bench_function("positive_modes tau1 count4", |b| {
        b.iter(|| positive_modes(black_box(1.0), black_box(4)).unwrap())
    });
}

fn bench_quotient(c: &mut Criterion) {
    let sampler = DirectionSampler::new(2, 0, 1024).unwrap();
    let square = DomainSpec::cuboid(2, vec![1.0, 1.0]).unwrap();
    c.bench_function("quotient_bound square 1024 dirs", |b| {
        b.iter(|| quotient_bound(black_box(&square), black_box(1.0), &sampler).unwrap())
    });
}

criterion_group!(benches, bench_bessel, bench_ball, bench_rod, bench_quotient);
criterion_main!(benches);
