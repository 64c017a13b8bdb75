use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use overpart_core::enumeration::{count_f, count_g, LargestPart};
use overpart_core::recurrence::{limit_u, run_recurrence, verify_chain};
use overpart_core::series::product_f;
use overpart_core::verify::battery;

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("count");
    for sys in battery() {
        let id = sys.to_string();
        group.bench_with_input(BenchmarkId::new("F", &id), &sys, |b, s| {
            b.iter(|| count_f(s, black_box(40)))
        });
        group.bench_with_input(BenchmarkId::new("G", &id), &sys, |b, s| {
            b.iter(|| count_g(s, black_box(40), LargestPart::none()))
        });
    }
    group.finish();
}

fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    for sys in battery() {
        let id = sys.to_string();
        group.bench_with_input(BenchmarkId::new("product", &id), &sys, |b, s| {
            b.iter(|| product_f(s, black_box(40)))
        });
        group.bench_with_input(BenchmarkId::new("limit", &id), &sys, |b, s| {
            b.iter(|| limit_u(s, black_box(40)))
        });
        group.bench_with_input(BenchmarkId::new("recurrence", &id), &sys, |b, s| {
            b.iter(|| run_recurrence(s, 12, black_box(40)))
        });
    }
    group.finish();
}

fn chain(c: &mut Criterion) {
    let mut group = c.benchmark_group("chain");
    group.sample_size(20);
    for sys in battery().into_iter().skip(1).take(2) {
        group.bench_with_input(BenchmarkId::from_parameter(sys.to_string()), &sys, |b, s| {
            b.iter(|| verify_chain(s, 6, 6, black_box(40)))
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, series, chain);
criterion_main!(benches);
