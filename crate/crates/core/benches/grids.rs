use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;

use cubic_cf::{bounds, par};

const PAIRS: [(u64, u64); 7] = [(1, 11), (1, 12), (1, 30), (2, 42), (2, 43), (3, 94), (3, 95)];

fn table(c: &mut Criterion) {
    let mut g = c.benchmark_group("bounds_table");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| par::map(PAIRS.to_vec(), |(a, t)| bounds::Th3Params::new(a, t, 128).map(|p| p.exponent)))
    });
    g.bench_function("sequential", |b| {
        b.iter(|| par::map_seq(PAIRS.to_vec(), |(a, t)| bounds::Th3Params::new(a, t, 128).map(|p| p.exponent)))
    });
    g.finish();
}

fn blocks(c: &mut Criterion) {
    let mut g = c.benchmark_group("block_matrices");
    let ts: Vec<i64> = (3..35).collect();
    for k in [4usize, 16] {
        g.bench_with_input(BenchmarkId::new("parallel", k), &k, |b, &k| {
            b.iter(|| par::map(ts.clone(), |t| bounds::block_matrices(&BigInt::from(1), &BigInt::from(t), k).is_ok()))
        });
        g.bench_with_input(BenchmarkId::new("sequential", k), &k, |b, &k| {
            b.iter(|| par::map_seq(ts.clone(), |t| bounds::block_matrices(&BigInt::from(1), &BigInt::from(t), k).is_ok()))
        });
    }
    g.finish();
}

criterion_group!(benches, table, blocks);
criterion_main!(benches);
