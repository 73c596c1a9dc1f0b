//! Criterion benchmarks for the kernel hot paths: GF(2) evaluation, catalog
//! verification, certificate building and replay, and the abelianization
//! diagnosis.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use crosscap_core::abelian::abelianize_catalog;
use crosscap_core::builders::{build_lemma_a1, build_normal_generation, build_theorem_main2};
use crosscap_core::catalog::Context;
use crosscap_core::certificate::verify_certificate;
use crosscap_core::word::Word;

fn bench_evaluate(c: &mut Criterion) {
    let ctx = Context::new(12).unwrap();
    let lemma = build_lemma_a1(&ctx, 0).unwrap();
    c.bench_function("evaluate_lemma_word_genus_12", |b| {
        b.iter(|| ctx.rep().evaluate(black_box(&lemma.expression)).unwrap())
    });
    let x = Word::parse("u2 u3 u4 u5 u1 u2 u3 u4").unwrap();
    c.bench_function("evaluate_x_genus_12", |b| {
        b.iter(|| ctx.rep().evaluate(black_box(&x)).unwrap())
    });
}

fn bench_catalog(c: &mut Criterion) {
    c.bench_function("catalog_homology_verify_genus_7_to_12", |b| {
        b.iter(|| {
            for genus in 7..=12 {
                let ctx = Context::new(genus).unwrap();
                let catalog = ctx.catalog().unwrap();
                for instance in &catalog.instances {
                    let lhs = ctx.rep().evaluate(&instance.lhs).unwrap();
                    let rhs = ctx.rep().evaluate(&instance.rhs).unwrap();
                    assert!(lhs == rhs);
                }
            }
        })
    });
}

fn bench_certificates(c: &mut Criterion) {
    let ctx = Context::new(7).unwrap();
    c.bench_function("build_lemma_a1_genus_7", |b| {
        b.iter(|| build_lemma_a1(black_box(&ctx), 0).unwrap())
    });
    let lemma = build_lemma_a1(&ctx, 0).unwrap();
    c.bench_function("verify_lemma_a1_genus_7", |b| {
        b.iter(|| verify_certificate(black_box(&ctx), black_box(&lemma)))
    });
    c.bench_function("build_normal_generation_genus_7", |b| {
        b.iter_batched(
            || (),
            |_| build_normal_generation(black_box(&ctx)).unwrap(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("build_theorem_bundle_genus_7", |b| {
        b.iter_batched(
            || (),
            |_| build_theorem_main2(black_box(&ctx), 0).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_abelianization(c: &mut Criterion) {
    let ctx = Context::new(9).unwrap();
    c.bench_function("abelianize_catalog_genus_9", |b| {
        b.iter(|| abelianize_catalog(black_box(&ctx)).unwrap())
    });
}

criterion_group!(benches, bench_evaluate, bench_catalog, bench_certificates, bench_abelianization);
criterion_main!(benches);
