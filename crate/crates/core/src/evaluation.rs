//! Evaluation of the rankings against pseudo-relevance judgments:
//! graded qrels from entry recency, a leave-out snapshot that hides the
//! evaluation year from the scorer, nDCG at cutoffs, and paired
//! significance tests against the baseline.

use std::collections::BTreeMap;

use crate::calendar::CalendarDate;
use crate::corpus::{ConfKey, Conference, Corpus};
use crate::error::StatsError;
use crate::exec;
use crate::scoring::{self, Factor, RankedList};
use crate::stats::paired_ttest_two_sided;

/// Graded pseudo-relevance judgments for one evaluation month.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QrelSet {
    pub now: CalendarDate,
    /// Grade in 0..=4 per rankable conference.
    pub judgments: BTreeMap<ConfKey, u8>,
}

impl QrelSet {
    pub fn query_id(&self) -> String {
        self.now.to_string()
    }

    pub fn grade(&self, key: &ConfKey) -> u8 {
        self.judgments.get(key).copied().unwrap_or(0)
    }
}

/// Pseudo-relevance grade of a conference at `now`: conferences whose
/// newest record arrived recently are the ones worth having ranked high,
/// graded on the same intervals as the delay score. Conferences without
/// any entry at or before `now` get grade 0.
pub fn pseudo_relevance_grade(conference: &Conference, now: CalendarDate) -> u8 {
    match conference.latest_entry(now) {
        Some(latest) => scoring::delay_weight(now.months_since(latest)),
        None => 0,
    }
}

/// Builds judgments for every rankable conference from the full data.
pub fn build_qrels(corpus_full: &Corpus, now: CalendarDate) -> QrelSet {
    let judgments = corpus_full
        .conferences
        .values()
        .filter(|c| c.is_rankable())
        .map(|c| (c.conf_key.clone(), pseudo_relevance_grade(c, now)))
        .collect();
    QrelSet { now, judgments }
}

/// A corpus view without anything learned during `eval_year` or later:
/// events entered before it, citation counts and author record counts
/// for earlier years only. Rating values are undated and survive.
pub fn leave_out_snapshot(corpus_full: &Corpus, eval_year: i32) -> Corpus {
    let conferences = corpus_full
        .conferences
        .iter()
        .map(|(key, conf)| {
            let mut kept = Conference::new(conf.conf_key.clone());
            kept.rating_values = conf.rating_values.clone();
            kept.events = conf
                .events
                .iter()
                .filter(|e| e.entry_date.year() < eval_year)
                .cloned()
                .map(|mut e| {
                    e.citations_per_year.retain(|&y, _| y < eval_year);
                    e
                })
                .collect();
            (key.clone(), kept)
        })
        .collect();
    let author_record_counts = corpus_full
        .author_record_counts
        .iter()
        .map(|(author, by_year)| {
            let truncated: BTreeMap<i32, u64> =
                by_year.range(..eval_year).map(|(&y, &c)| (y, c)).collect();
            (author.clone(), truncated)
        })
        .filter(|(_, by_year)| !by_year.is_empty())
        .collect();
    Corpus {
        conferences,
        author_record_counts,
    }
}

/// Gain assigned to a relevance grade inside DCG.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gain {
    /// 2^grade - 1, the usual graded-relevance choice.
    #[default]
    Exponential,
    /// The grade itself, for sensitivity checks.
    Linear,
}

impl Gain {
    fn of(&self, grade: u8) -> f64 {
        match self {
            Gain::Exponential => 2f64.powi(grade as i32) - 1.0,
            Gain::Linear => grade as f64,
        }
    }
}

fn dcg<I: IntoIterator<Item = u8>>(grades: I, k: usize, gain: Gain) -> f64 {
    grades
        .into_iter()
        .take(k)
        .enumerate()
        .map(|(i, g)| gain.of(g) / ((i + 2) as f64).log2())
        .sum()
}

/// Normalized discounted cumulative gain of `run` at cutoff `k`,
/// judged by `qrels`. Unjudged documents count as grade 0; an all-zero
/// judgment set yields 0.
pub fn ndcg_at_k(run: &RankedList, qrels: &QrelSet, k: usize, gain: Gain) -> f64 {
    let run_grades = run.entries.iter().map(|e| qrels.grade(&e.conf_key));
    let dcg_run = dcg(run_grades, k, gain);

    let mut ideal: Vec<u8> = qrels.judgments.values().copied().collect();
    ideal.sort_unstable_by(|a, b| b.cmp(a));
    let dcg_ideal = dcg(ideal, k, gain);

    if dcg_ideal == 0.0 {
        0.0
    } else {
        dcg_run / dcg_ideal
    }
}

/// Everything produced for one evaluation month.
#[derive(Debug, Clone)]
pub struct MonthOutcome {
    pub now: CalendarDate,
    pub qrels: QrelSet,
    /// One ranking per requested factor, in request order.
    pub runs: Vec<RankedList>,
    /// ndcg[factor index][cutoff index]
    pub ndcg: Vec<Vec<f64>>,
}

/// Year-level summary for one factor.
#[derive(Debug, Clone)]
pub struct EvalReport {
    pub factor: Factor,
    /// query id -> cutoff -> ndcg
    pub per_month_ndcg: BTreeMap<String, BTreeMap<usize, f64>>,
    /// cutoff -> mean over the twelve months
    pub yearly_average: BTreeMap<usize, f64>,
    /// cutoff -> two-sided p-value of this factor against the baseline
    pub p_value_vs_baseline: BTreeMap<usize, f64>,
}

/// Result of a whole-year evaluation.
#[derive(Debug, Clone)]
pub struct YearEvaluation {
    pub eval_year: i32,
    pub cutoffs: Vec<usize>,
    pub months: Vec<MonthOutcome>,
    pub reports: Vec<EvalReport>,
}

/// Runs the sliding-window protocol over the twelve months of
/// `eval_year`: rankings come from the leave-out snapshot, judgments
/// from the full data as of each month, and each factor's monthly nDCG
/// values are averaged and tested against the baseline.
pub fn evaluate_year(
    corpus_full: &Corpus,
    eval_year: i32,
    factors: &[Factor],
    cutoffs: &[usize],
    gain: Gain,
) -> Result<YearEvaluation, StatsError> {
    let snapshot = leave_out_snapshot(corpus_full, eval_year);

    let months_input: Vec<u32> = (1..=12).collect();
    let months: Vec<MonthOutcome> = exec::map(&months_input, |&month| {
        let now = CalendarDate::new(eval_year, month).expect("months 1..=12 are valid");
        let table = scoring::score_table(&snapshot, now);
        let qrels = build_qrels(corpus_full, now);
        let runs: Vec<RankedList> = factors
            .iter()
            .map(|&f| scoring::rank_table(&table, now, f))
            .collect();
        let ndcg = runs
            .iter()
            .map(|run| {
                cutoffs
                    .iter()
                    .map(|&k| ndcg_at_k(run, &qrels, k, gain))
                    .collect()
            })
            .collect();
        MonthOutcome {
            now,
            qrels,
            runs,
            ndcg,
        }
    });

    // baseline monthly vectors per cutoff, for the significance tests;
    // computed even when the baseline was not requested
    let baseline_by_cutoff: Vec<Vec<f64>> =
        match factors.iter().position(|&f| f == Factor::Baseline) {
            Some(idx) => cutoffs
                .iter()
                .enumerate()
                .map(|(ci, _)| months.iter().map(|m| m.ndcg[idx][ci]).collect())
                .collect(),
            None => {
                let extra: Vec<Vec<f64>> = exec::map(&months_input, |&month| {
                    let now = CalendarDate::new(eval_year, month).expect("months 1..=12 are valid");
                    let run = scoring::rank(&snapshot, now, Factor::Baseline);
                    let qrels = build_qrels(corpus_full, now);
                    cutoffs
                        .iter()
                        .map(|&k| ndcg_at_k(&run, &qrels, k, gain))
                        .collect()
                });
                (0..cutoffs.len())
                    .map(|ci| extra.iter().map(|row| row[ci]).collect())
                    .collect()
            }
        };

    let mut reports = Vec::with_capacity(factors.len());
    for (fi, &factor) in factors.iter().enumerate() {
        let mut per_month_ndcg = BTreeMap::new();
        let mut yearly_average = BTreeMap::new();
        let mut p_value_vs_baseline = BTreeMap::new();
        for (ci, &k) in cutoffs.iter().enumerate() {
            let monthly: Vec<f64> = months.iter().map(|m| m.ndcg[fi][ci]).collect();
            yearly_average.insert(k, monthly.iter().sum::<f64>() / monthly.len() as f64);
            p_value_vs_baseline.insert(
                k,
                paired_ttest_two_sided(&monthly, &baseline_by_cutoff[ci])?,
            );
        }
        for m in &months {
            let by_cutoff: BTreeMap<usize, f64> = cutoffs
                .iter()
                .enumerate()
                .map(|(ci, &k)| (k, m.ndcg[fi][ci]))
                .collect();
            per_month_ndcg.insert(m.now.to_string(), by_cutoff);
        }
        reports.push(EvalReport {
            factor,
            per_month_ndcg,
            yearly_average,
            p_value_vs_baseline,
        });
    }

    Ok(YearEvaluation {
        eval_year,
        cutoffs: cutoffs.to_vec(),
        months,
        reports,
    })
}
