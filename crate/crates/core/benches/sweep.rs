use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gapcorr_core::correlation::{pair_correlation_with, SortedCircle};
use gapcorr_core::energy::additive_energy_with;
use gapcorr_core::gaps::{default_tolerance, gap_profile_with};
use gapcorr_core::generators::{random_points, sqrt_sequence_with, van_der_corput_with};
use gapcorr_core::{Execution, DEFAULT_SCALE_BITS};
use num_bigint::BigInt;
use num_rational::BigRational;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("pair_sweep");
    group.sample_size(10);
    let s = BigRational::from_integer(1.into());
    for n in [10_000usize, 200_000] {
        let ps = random_points(n, 1, DEFAULT_SCALE_BITS).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &ps, |b, ps| {
                b.iter(|| pair_correlation_with(black_box(ps), &s, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn sort(c: &mut Criterion) {
    let mut group = c.benchmark_group("sort");
    group.sample_size(10);
    let ps = random_points(200_000, 2, DEFAULT_SCALE_BITS).unwrap();
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| SortedCircle::new(black_box(&ps), exec)));
    }
    group.finish();
}

fn generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("generators");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("vdc", name), |b| {
            b.iter(|| van_der_corput_with(2, black_box(100_000), DEFAULT_SCALE_BITS, exec).unwrap())
        });
        group.bench_function(BenchmarkId::new("sqrt", name), |b| {
            b.iter(|| sqrt_sequence_with(black_box(100_000), DEFAULT_SCALE_BITS, exec).unwrap())
        });
    }
    group.finish();
}

fn gaps_and_energy(c: &mut Criterion) {
    let mut group = c.benchmark_group("gaps_energy");
    group.sample_size(10);
    let ps = random_points(100_000, 3, DEFAULT_SCALE_BITS).unwrap();
    let tol = default_tolerance(DEFAULT_SCALE_BITS);
    let set: Vec<BigInt> = (1..=1000).map(|x: i64| BigInt::from(x * x)).collect();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("gap_profile", name), |b| {
            b.iter(|| gap_profile_with(black_box(&ps), &tol, exec).unwrap())
        });
        group.bench_function(BenchmarkId::new("energy", name), |b| {
            b.iter(|| additive_energy_with(black_box(&set), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, sort, generators, gaps_and_energy);
criterion_main!(benches);
