use criterion::{black_box, criterion_group, criterion_main, Criterion};
use cubic_bench::fourteen_letter_word;
use cubic_core::action::apply_word;
use cubic_core::cascade::{budget_for, run_cascade, seed_markoff, CascadeOptions, Expansion, SampleSpec};
use cubic_core::fatou::certify_monotone_escape;
use cubic_core::sampling::Domain;
use cubic_core::scalar::Precision;
use cubic_core::word::{enumerate_words, to_sl2, Parity};
use cubic_core::{re, ParameterQuadruple};

fn words(c: &mut Criterion) {
    c.bench_function("enumerate Γ-words up to length 12", |b| {
        b.iter(|| enumerate_words(black_box(12), Parity::Gamma).count())
    });
    let w = fourteen_letter_word().pow(8);
    c.bench_function("to_sl2 of a 112-letter word", |b| b.iter(|| to_sl2(black_box(&w)).unwrap()));
}

fn action(c: &mut Criterion) {
    let p = ParameterQuadruple::markoff();
    let w = fourteen_letter_word();
    let q = [re(0.1), re(-0.2), re(0.05)];
    c.bench_function("apply 14-letter word", |b| b.iter(|| apply_word(&p, black_box(&w), black_box(&q)).unwrap()));
}

fn certificates(c: &mut Criterion) {
    let p = ParameterQuadruple::markoff();
    let q = [re(-3.0); 3];
    c.bench_function("monotone escape at depth 10", |b| b.iter(|| certify_monotone_escape(&p, black_box(&q), 10)));

    let s0 = seed_markoff(&p);
    let budget = budget_for(1.0 / 64.0);
    let mut group = c.benchmark_group("cascade");
    group.sample_size(10);
    for (name, precision) in [("double", Precision::Double), ("dd", Precision::DoubleDouble)] {
        let opts = CascadeOptions {
            sample: SampleSpec { samples: 1000, domain: Domain::Surface, precision, seed: 0 },
            expansion: Expansion::Canonical,
        };
        group.bench_function(format!("levels 0..2, 1000 samples, {name}"), |b| {
            b.iter(|| run_cascade(&s0, &p, &budget, &[re(0.0); 3], 2, &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, words, action, certificates);
criterion_main!(benches);
