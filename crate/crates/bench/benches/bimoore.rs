use std::hint::black_box;

use bimoore::bounds::emit_bound_table;
use bimoore::enumerate::{enumerate, EnumOptions, EnumSpec};
use bimoore::graph::{canonical_form, diameter};
use bimoore::spectrum::char_poly;
use bimoore_bench::graphs;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn canonical(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_form");
    for (name, g) in graphs() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| canonical_form(black_box(g)))
        });
    }
    group.finish();
}

fn metrics(c: &mut Criterion) {
    let mut group = c.benchmark_group("diameter");
    for (name, g) in graphs() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| diameter(black_box(g)))
        });
    }
    group.finish();
}

fn spectra(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_poly");
    for (name, g) in graphs() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| char_poly(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (n1, n2, r, s, d) in [(6, 8, 4, 3, 3), (6, 10, 5, 3, 3), (6, 9, 3, 2, 4)] {
        let spec = EnumSpec::new(n1, n2, r, s, d).unwrap();
        let opts = EnumOptions {
            threads: Some(1),
            ..EnumOptions::exhaustive()
        };
        group.bench_with_input(BenchmarkId::from_parameter(spec), &spec, |b, &spec| {
            b.iter(|| enumerate(spec, &opts).unwrap().generated)
        });
    }
    group.finish();
}

fn tables(c: &mut Criterion) {
    c.bench_function("bound_table_d5_r10", |b| {
        b.iter(|| emit_bound_table(black_box(5), 2..=10, 2..=10).unwrap())
    });
}

criterion_group!(benches, canonical, metrics, spectra, census, tables);
criterion_main!(benches);
