use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qgt_core::algebra::symmetric_form;
use qgt_core::analysis::{gqt_report, ReportOptions};
use qgt_core::homological::resolution;
use qgt_core::{build_algebra, instances, BuildOptions, Presentation, PrimeField, VertexIdx};

fn cases() -> Vec<(&'static str, Presentation)> {
    vec![
        ("markov m=2", instances::markov(2, 1)),
        (
            "torus#P",
            instances::torus_projective([3, 2, 1, 1], [1, 1, 1, 1]).expect("valid weights"),
        ),
        ("tetrahedral (2,1)", instances::tetrahedral(2, 1)),
    ]
}

fn gf5() -> PrimeField {
    PrimeField::new(5).expect("prime")
}

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    for (name, p) in cases() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &p, |b, p| {
            b.iter(|| build_algebra(p, gf5(), &BuildOptions::default()).unwrap())
        });
    }
    g.finish();
}

fn resolve(c: &mut Criterion) {
    let mut g = c.benchmark_group("resolution");
    for (name, p) in cases() {
        let a = build_algebra(&p, gf5(), &BuildOptions::default()).unwrap();
        g.bench_function(name, |b| b.iter(|| resolution(&a, VertexIdx(0), 4).unwrap()));
    }
    g.finish();
}

fn symmetric(c: &mut Criterion) {
    let a = build_algebra(&instances::markov(2, 1), gf5(), &BuildOptions::default()).unwrap();
    c.bench_function("symmetric form markov m=2", |b| b.iter(|| symmetric_form(&a, 32, 0)));
}

fn report(c: &mut Criterion) {
    let a = build_algebra(&instances::tetrahedral(1, 1), gf5(), &BuildOptions::default()).unwrap();
    let mut g = c.benchmark_group("report");
    g.sample_size(10);
    g.bench_function("tetrahedral (1,1)", |b| {
        b.iter(|| gqt_report(&a, &ReportOptions::default()))
    });
    g.finish();
}

criterion_group!(benches, build, resolve, symmetric, report);
criterion_main!(benches);
