//! Throughput of the scoring and evaluation hot paths on synthetic
//! corpora. Run with the default features for the rayon-backed build and
//! with `--no-default-features` for the sequential fallback; criterion
//! keeps named baselines, so consecutive runs show the difference.

use criterion::{Criterion, criterion_group, criterion_main};
use std::hint::black_box;

use confsched_core::evaluation::{Gain, evaluate_year};
use confsched_core::scoring::{Factor, rank, score_table};
use confsched_core::synth::{SynthConfig, generate};
use confsched_core::{CalendarDate, Corpus};

fn corpus_of(n_conferences: usize, seed: u64) -> Corpus {
    let config = SynthConfig {
        n_conferences,
        ..SynthConfig::default()
    };
    generate(seed, &config)
        .assemble(None)
        .expect("synthetic rows assemble")
        .corpus
}

fn bench_scoring(c: &mut Criterion) {
    let now = CalendarDate::new(2016, 12).unwrap();
    let mut group = c.benchmark_group("scoring");
    for &n in &[200usize, 2000] {
        let corpus = corpus_of(n, 42);
        group.bench_function(format!("score_table/{n}"), |b| {
            b.iter(|| black_box(score_table(black_box(&corpus), now)))
        });
        group.bench_function(format!("rank_discontinued/{n}"), |b| {
            b.iter(|| black_box(rank(black_box(&corpus), now, Factor::Discontinued)))
        });
    }
    group.finish();
}

fn bench_evaluation(c: &mut Criterion) {
    let corpus = corpus_of(400, 7);
    let mut group = c.benchmark_group("evaluation");
    group.sample_size(20);
    group.bench_function("evaluate_year/400", |b| {
        b.iter(|| {
            black_box(
                evaluate_year(
                    black_box(&corpus),
                    2016,
                    &[Factor::Baseline, Factor::Discontinued],
                    &[10, 100],
                    Gain::Exponential,
                )
                .expect("twelve months suffice"),
            )
        })
    });
    group.finish();
}

criterion_group!(benches, bench_scoring, bench_evaluation);
criterion_main!(benches);
