use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use setcross::distribution::{t_poly_jr, t_poly_ksz, t_table_series};
use setcross::extremal::{build_pi, maximizer_shapes, weight_circular};
use setcross::partitions::enumerate_all;
use setcross::sampling::PartitionSampler;
use setcross::{cr_circular, cr_linear, Statistic};
use setcross_bench::{dense_partition, shapes, DIST_CELLS};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    for n in [6usize, 8, 10] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_all(n).unwrap().map(|p| cr_linear(&p) + cr_circular(&p)).sum::<u64>())
        });
    }
    g.finish();
}

fn crossings(c: &mut Criterion) {
    let mut g = c.benchmark_group("crossings");
    for n in [50usize, 200, 1000] {
        let p = dense_partition(n, 7);
        g.bench_with_input(BenchmarkId::new("linear", n), &p, |b, p| b.iter(|| cr_linear(black_box(p))));
        g.bench_with_input(BenchmarkId::new("circular", n), &p, |b, p| b.iter(|| cr_circular(black_box(p))));
    }
    g.finish();
}

fn distributions(c: &mut Criterion) {
    let mut g = c.benchmark_group("distribution");
    g.sample_size(10);
    for (n, k) in DIST_CELLS {
        let id = format!("{n},{k}");
        g.bench_with_input(BenchmarkId::new("jr", &id), &(n, k), |b, &(n, k)| b.iter(|| t_poly_jr(n, k).unwrap()));
        g.bench_with_input(BenchmarkId::new("ksz", &id), &(n, k), |b, &(n, k)| b.iter(|| t_poly_ksz(n, k).unwrap()));
    }
    g.bench_function("series table 12", |b| b.iter(|| t_table_series(12).unwrap()));
    g.finish();
}

fn extremal(c: &mut Criterion) {
    let mut g = c.benchmark_group("extremal");
    g.bench_function("argmax weights 30,8", |b| {
        b.iter(|| shapes(30, 8).iter().map(weight_circular).max())
    });
    g.bench_function("shapes and witnesses n<=30", |b| {
        b.iter(|| {
            let mut total = 0;
            for n in 1..=30 {
                for k in 1..=n {
                    for l in maximizer_shapes(n, k, Statistic::Circular).unwrap() {
                        total += cr_circular(&build_pi(&l));
                    }
                }
            }
            total
        })
    });
    g.finish();
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample");
    for n in [20usize, 200] {
        let s = PartitionSampler::new(n, None).unwrap();
        let mut i = 0;
        g.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| {
            b.iter(|| {
                i += 1;
                s.sample_indexed(1, i)
            })
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, crossings, distributions, extremal, sampling);
criterion_main!(benches);
