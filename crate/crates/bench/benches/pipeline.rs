use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mslcob::algebra::{cokernel, IntMatrix};
use mslcob::charnum::hypersurface_class;
use mslcob::forms::forms_oracle;
use mslcob::msl::intro_table;
use mslcob::{CfComplex, FglContext, FieldDescriptor, MuBasis};

fn fgl(c: &mut Criterion) {
    let mut g = c.benchmark_group("fgl");
    for n in [6u32, 8, 10] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| FglContext::new(black_box(n), 0).unwrap())
        });
    }
    g.finish();
}

fn basis(c: &mut Criterion) {
    let mut g = c.benchmark_group("mu_basis");
    g.sample_size(10);
    for n in [6u32, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| MuBasis::build(black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn complex(c: &mut Criterion) {
    let mut g = c.benchmark_group("cf_complex");
    g.sample_size(10);
    for n in [6u32, 8] {
        let basis = Arc::new(MuBasis::build(n).unwrap());
        g.bench_with_input(BenchmarkId::from_parameter(n), &basis, |b, basis| {
            b.iter(|| {
                let cf = CfComplex::build(basis.clone()).unwrap();
                (0..n).map(|k| cf.cf_homology(k).unwrap()).collect::<Vec<_>>()
            })
        });
    }
    g.finish();
}

fn smith(c: &mut Criterion) {
    let rows: Vec<Vec<i64>> = (0..24).map(|i| (0..30).map(|j| ((i * 7 + j * 13) % 11) - 5).collect()).collect();
    let m = IntMatrix::from_rows(&rows);
    c.bench_function("cokernel_24x30", |b| b.iter(|| cokernel(black_box(&m), &[])));
}

fn tables(c: &mut Criterion) {
    c.bench_function("intro_table_all_kinds", |b| {
        b.iter(|| FieldDescriptor::catalog().iter().map(|k| intro_table(k).unwrap()).collect::<Vec<_>>())
    });
    c.bench_function("quartic_surface", |b| b.iter(|| hypersurface_class(black_box(3), black_box(4)).unwrap()));
    let mut g = c.benchmark_group("forms_oracle");
    g.sample_size(10);
    g.bench_function("F5", |b| b.iter(|| forms_oracle(black_box(5)).unwrap()));
    g.finish();
}

criterion_group!(benches, fgl, basis, complex, smith, tables);
criterion_main!(benches);
