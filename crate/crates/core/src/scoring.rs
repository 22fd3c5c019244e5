//! Urgency scoring: the delay-based base score, the five weighting
//! factors, and ranked priority lists.
//!
//! Every weighting factor is normalized against the corpus-wide maximum,
//! so covered conferences land in [1, 2] (the discontinuation penalty in
//! (0, 1]) and uncovered ones sit exactly at the neutral 1.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::calendar::CalendarDate;
use crate::corpus::{Conference, ConferenceProfile, Corpus};
use crate::exec;

/// The ranking criteria. `Baseline` orders by the raw delay; the others
/// multiply the delay score by one weighting factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Factor {
    Baseline,
    Rating,
    Internationality,
    Discontinued,
    Citation,
    Prominence,
}

impl Factor {
    pub const ALL: [Factor; 6] = [
        Factor::Baseline,
        Factor::Rating,
        Factor::Internationality,
        Factor::Discontinued,
        Factor::Citation,
        Factor::Prominence,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Factor::Baseline => "baseline",
            Factor::Rating => "rating",
            Factor::Internationality => "internationality",
            Factor::Discontinued => "discontinued",
            Factor::Citation => "citation",
            Factor::Prominence => "prominence",
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Factor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Factor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown factor {s:?}"))
    }
}

/// Expected entry date of the next event in the series: the mode month
/// in the year after the last entry plus one characteristic interval,
/// shifted by the characteristic entry delay.
pub fn expected_next_entry(profile: &ConferenceProfile) -> CalendarDate {
    let base = CalendarDate::new(
        profile.last_entry_date.year() + profile.delta_year as i32,
        profile.mode_month as u32,
    )
    .expect("profile months are valid and years only grow");
    base.plus_months(profile.delta_month as i32)
        .expect("non-negative shift from a valid date")
}

/// Months the series is presumably overdue at `now`. Negative when the
/// next entry is not yet expected.
pub fn delay_months(profile: &ConferenceProfile, now: CalendarDate) -> i32 {
    now.months_since(expected_next_entry(profile))
}

/// Base score from the delay: recently due series score highest, long
/// overdue ones decay in 4-month steps, not-yet-due ones score 0.
pub fn delay_weight(delta_months: i32) -> u8 {
    match delta_months {
        0..=3 => 4,
        4..=7 => 3,
        8..=11 => 2,
        d if d >= 12 => 1,
        _ => 0,
    }
}

/// Average of a conference's rating values, kept as an exact integer
/// fraction so normalization is stable under uniform rescaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatingMean {
    pub sum: u64,
    pub count: u64,
}

impl RatingMean {
    pub fn of(conference: &Conference) -> Option<RatingMean> {
        if conference.rating_values.is_empty() {
            return None;
        }
        Some(RatingMean {
            sum: conference.rating_values.iter().map(|&v| v as u64).sum(),
            count: conference.rating_values.len() as u64,
        })
    }

    fn gt(&self, other: &RatingMean) -> bool {
        // sum/count > other.sum/other.count, exactly
        (self.sum as u128) * (other.count as u128) > (other.sum as u128) * (self.count as u128)
    }
}

/// Rating weight: 1 + r(c) / max r. Unrated conferences and those whose
/// ratings average to zero get the neutral 1. The ratio is formed from
/// integer cross products, so uniform rescaling of the class values
/// cancels exactly.
pub fn rating_weight(mean: Option<RatingMean>, max: Option<RatingMean>) -> f64 {
    match (mean, max) {
        (Some(m), Some(mx)) if m.sum > 0 && mx.sum > 0 => {
            let num = m.sum as u128 * mx.count as u128;
            let den = m.count as u128 * mx.sum as u128;
            1.0 + num as f64 / den as f64
        }
        _ => 1.0,
    }
}

/// Distinct venue countries across the events visible at `now`.
pub fn distinct_countries(conference: &Conference, now: CalendarDate) -> u32 {
    conference
        .visible_events(now)
        .filter_map(|e| e.country.as_deref())
        .collect::<BTreeSet<_>>()
        .len() as u32
}

/// Internationality weight: 1 + i(c) / max i.
pub fn internationality_weight(distinct: u32, max: u32) -> f64 {
    if max == 0 {
        1.0
    } else {
        1.0 + distinct as f64 / max as f64
    }
}

/// Penalty for presumably discontinued series: (1 + years_since /
/// delta_year)^-2, so a series one characteristic interval silent drops
/// to 0.25 and long-dead ones approach 0.
pub fn discontinued_weight(years_since: u32, delta_year: u32) -> f64 {
    (1.0 + years_since as f64 / delta_year as f64).powi(-2)
}

/// Whole years since the last entry, clamped at zero.
pub fn years_since_last_entry(profile: &ConferenceProfile, now: CalendarDate) -> u32 {
    (now.year() - profile.last_entry_date.year()).max(0) as u32
}

/// Citations per paper, summed over the conference's event years that
/// precede `now`'s year. Events without papers are skipped.
pub fn citations_per_paper(conference: &Conference, now: CalendarDate) -> f64 {
    let citation_years: BTreeSet<i32> = conference
        .visible_events(now)
        .filter_map(|e| e.event_date)
        .map(|d| d.year())
        .filter(|&y| y < now.year())
        .collect();
    conference
        .visible_events(now)
        .filter(|e| e.paper_count > 0)
        .map(|e| {
            let cited: u64 = citation_years
                .iter()
                .filter_map(|y| e.citations_per_year.get(y))
                .sum();
            cited as f64 / e.paper_count as f64
        })
        .sum()
}

/// Citation weight: 1 + cit(c) / max cit.
pub fn citation_weight(citations_per_paper: f64, max: f64) -> f64 {
    if max <= 0.0 {
        1.0
    } else {
        1.0 + citations_per_paper / max
    }
}

/// Minimum publications for an event to count toward prominence; smaller
/// events are too noisy.
pub const PROMINENCE_MIN_PAPERS: u32 = 10;

/// Mean prior record count of an event's authors, as of the year before
/// `now`. `None` when the event is below [`PROMINENCE_MIN_PAPERS`] or
/// has no author information.
pub fn event_prominence(
    event: &crate::corpus::Event,
    corpus: &Corpus,
    now: CalendarDate,
) -> Option<f64> {
    if event.paper_count < PROMINENCE_MIN_PAPERS || event.author_ids.is_empty() {
        return None;
    }
    let cutoff = now.year() - 1;
    let total: u64 = event
        .author_ids
        .iter()
        .map(|a| corpus.author_records_until(a, cutoff))
        .sum();
    Some(total as f64 / event.author_ids.len() as f64)
}

/// Mean event prominence over the conference's qualifying visible
/// events; `None` when no event qualifies.
pub fn conference_prominence(
    conference: &Conference,
    corpus: &Corpus,
    now: CalendarDate,
) -> Option<f64> {
    let values: Vec<f64> = conference
        .visible_events(now)
        .filter_map(|e| event_prominence(e, corpus, now))
        .collect();
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Prominence weight: 1 + prm(c) / max prm.
pub fn prominence_weight(prominence: Option<f64>, max: f64) -> f64 {
    match prominence {
        Some(p) if max > 0.0 => 1.0 + p / max,
        _ => 1.0,
    }
}

/// Raw per-conference factor values, before normalization.
#[derive(Debug, Clone)]
struct FactorValues {
    rating: Option<RatingMean>,
    internationality: u32,
    citations_per_paper: f64,
    prominence: Option<f64>,
}

impl FactorValues {
    fn of(conference: &Conference, corpus: &Corpus, now: CalendarDate) -> Self {
        FactorValues {
            rating: RatingMean::of(conference),
            internationality: distinct_countries(conference, now),
            citations_per_paper: citations_per_paper(conference, now),
            prominence: conference_prominence(conference, corpus, now),
        }
    }
}

/// Corpus-wide factor maxima, taken over the rankable conferences.
#[derive(Debug, Clone, Default)]
struct CorpusMaxima {
    rating: Option<RatingMean>,
    internationality: u32,
    citations_per_paper: f64,
    prominence: f64,
}

impl CorpusMaxima {
    fn collect<'a>(values: impl Iterator<Item = &'a FactorValues>) -> Self {
        let mut max = CorpusMaxima::default();
        for v in values {
            if let Some(r) = v.rating
                && max.rating.is_none_or(|cur| r.gt(&cur))
            {
                max.rating = Some(r);
            }
            max.internationality = max.internationality.max(v.internationality);
            max.citations_per_paper = max.citations_per_paper.max(v.citations_per_paper);
            if let Some(p) = v.prominence {
                max.prominence = max.prominence.max(p);
            }
        }
        max
    }
}

/// All scoring ingredients for one conference at one reference date.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorWeights {
    /// Months overdue (may be negative).
    pub delta: i32,
    /// Base delay score in 0..=4.
    pub delay: u8,
    pub rating: f64,
    pub internationality: f64,
    pub discontinued: f64,
    pub citation: f64,
    pub prominence: f64,
}

impl FactorWeights {
    /// The weighting factor multiplied onto the delay score. Not defined
    /// for [`Factor::Baseline`], which ranks by the raw delay instead.
    pub fn weight(&self, factor: Factor) -> f64 {
        match factor {
            Factor::Baseline => panic!("baseline has no weighting factor"),
            Factor::Rating => self.rating,
            Factor::Internationality => self.internationality,
            Factor::Discontinued => self.discontinued,
            Factor::Citation => self.citation,
            Factor::Prominence => self.prominence,
        }
    }
}

/// Offset pushing not-yet-due conferences below every overdue one in the
/// baseline ordering. Far beyond any reachable delay (|delta| is bounded
/// by a few thousand months).
const BASELINE_NOT_DUE_OFFSET: f64 = -1_000_000.0;

/// Sort key realizing the baseline order: overdue conferences by delay
/// ascending, then not-yet-due ones by how soon they are expected.
fn baseline_key(delta: i32) -> f64 {
    if delta >= 0 {
        -(delta as f64)
    } else {
        BASELINE_NOT_DUE_OFFSET + delta as f64
    }
}

/// Score under one ranking criterion: the descending sort key for the
/// baseline, the delay score times the chosen weighting factor otherwise.
pub fn ranking_score(weights: &FactorWeights, factor: Factor) -> f64 {
    match factor {
        Factor::Baseline => baseline_key(weights.delta),
        f => weights.delay as f64 * weights.weight(f),
    }
}

/// Profile and weights of one rankable conference.
#[derive(Debug, Clone)]
pub struct ConferenceScores {
    pub conf_key: crate::corpus::ConfKey,
    pub profile: ConferenceProfile,
    pub weights: FactorWeights,
}

/// Computes profiles and all factor weights for every rankable
/// conference, in key order. Unrankable conferences are omitted.
pub fn score_table(corpus: &Corpus, now: CalendarDate) -> Vec<ConferenceScores> {
    let profiled: Vec<(&Conference, ConferenceProfile)> = corpus
        .conferences
        .values()
        .filter_map(|c| c.profile_at(now).ok().map(|p| (c, p)))
        .collect();

    let values = exec::map(&profiled, |p| FactorValues::of(p.0, corpus, now));
    let maxima = CorpusMaxima::collect(values.iter());

    let indices: Vec<usize> = (0..profiled.len()).collect();
    exec::map(&indices, |&i| {
        let (conf, profile) = &profiled[i];
        let values = &values[i];
        let delta = delay_months(profile, now);
        let weights = FactorWeights {
            delta,
            delay: delay_weight(delta),
            rating: rating_weight(values.rating, maxima.rating),
            internationality: internationality_weight(
                values.internationality,
                maxima.internationality,
            ),
            discontinued: discontinued_weight(
                years_since_last_entry(profile, now),
                profile.delta_year,
            ),
            citation: citation_weight(values.citations_per_paper, maxima.citations_per_paper),
            prominence: prominence_weight(values.prominence, maxima.prominence),
        };
        ConferenceScores {
            conf_key: conf.conf_key.clone(),
            profile: *profile,
            weights,
        }
    })
}

/// One line of a ranked priority list.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedEntry {
    pub conf_key: crate::corpus::ConfKey,
    pub score: f64,
    /// 1-based dense rank.
    pub rank: u32,
}

/// A scored ordering of the rankable conferences under one factor.
/// Scores are non-increasing; ties are broken by ascending key.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    pub now: CalendarDate,
    pub factor: Factor,
    pub entries: Vec<RankedEntry>,
}

impl RankedList {
    /// Identifier of the query this list answers: the reference month.
    pub fn query_id(&self) -> String {
        self.now.to_string()
    }
}

/// Ranks the corpus under one factor at `now`.
pub fn rank(corpus: &Corpus, now: CalendarDate, factor: Factor) -> RankedList {
    rank_table(&score_table(corpus, now), now, factor)
}

/// Ranks from a precomputed score table (lets callers reuse one table
/// for several factors).
pub fn rank_table(table: &[ConferenceScores], now: CalendarDate, factor: Factor) -> RankedList {
    let mut scored: Vec<(&crate::corpus::ConfKey, f64)> = table
        .iter()
        .map(|cs| (&cs.conf_key, ranking_score(&cs.weights, factor)))
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let entries = scored
        .into_iter()
        .enumerate()
        .map(|(i, (key, score))| RankedEntry {
            conf_key: key.clone(),
            score,
            rank: i as u32 + 1,
        })
        .collect();
    RankedList {
        now,
        factor,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{AuthorId, ConfKey, Event};
    use std::collections::{BTreeMap, BTreeSet};

    fn date(year: i32, month: u32) -> CalendarDate {
        CalendarDate::new(year, month).unwrap()
    }

    fn profile(
        delta_year: u32,
        mode_month: u8,
        delta_month: u32,
        last_entry: CalendarDate,
    ) -> ConferenceProfile {
        ConferenceProfile {
            delta_year,
            mode_month,
            delta_month,
            last_entry_date: last_entry,
        }
    }

    #[test]
    fn expected_next_entry_from_profile() {
        let p = profile(1, 6, 2, date(2015, 9));
        assert_eq!(expected_next_entry(&p), date(2016, 8));
    }

    #[test]
    fn expected_next_entry_carries_months() {
        let p = profile(1, 12, 1, date(2015, 12));
        assert_eq!(expected_next_entry(&p), date(2017, 1));
    }

    #[test]
    fn expected_next_entry_zero_delay() {
        let p = profile(2, 3, 0, date(2014, 3));
        assert_eq!(expected_next_entry(&p), date(2016, 3));
    }

    #[test]
    fn delay_counts_months_overdue() {
        let p = profile(1, 6, 2, date(2015, 9)); // expected 2016-08
        assert_eq!(delay_months(&p, date(2016, 12)), 4);
        assert_eq!(delay_months(&p, date(2016, 8)), 0);
        assert_eq!(delay_months(&p, date(2016, 6)), -2);
    }

    #[test]
    fn delay_weight_buckets() {
        assert_eq!(delay_weight(3), 4);
        assert_eq!(delay_weight(146), 1);
        assert_eq!(delay_weight(-1), 0);
        assert_eq!(delay_weight(0), 4);
        assert_eq!(delay_weight(4), 3);
        assert_eq!(delay_weight(7), 3);
        assert_eq!(delay_weight(8), 2);
        assert_eq!(delay_weight(11), 2);
        assert_eq!(delay_weight(12), 1);
    }

    fn rated(values: &[u32]) -> Conference {
        let mut c = Conference::new("c".into());
        c.rating_values = values.to_vec();
        c
    }

    #[test]
    fn rating_weight_examples() {
        let max = RatingMean::of(&rated(&[4, 4]));
        assert_eq!(rating_weight(RatingMean::of(&rated(&[4, 4])), max), 2.0);
        assert_eq!(rating_weight(RatingMean::of(&rated(&[])), max), 1.0);
        // mean 3 against max 4
        assert_eq!(rating_weight(RatingMean::of(&rated(&[4, 3, 2])), max), 1.75);
        // rated but averaging to zero stays neutral
        assert_eq!(rating_weight(RatingMean::of(&rated(&[0, 0])), max), 1.0);
    }

    #[test]
    fn internationality_weight_examples() {
        assert_eq!(internationality_weight(26, 26), 2.0);
        assert_eq!(internationality_weight(0, 26), 1.0);
        assert_eq!(internationality_weight(13, 26), 1.5);
        assert_eq!(internationality_weight(0, 0), 1.0);
    }

    #[test]
    fn discontinued_weight_examples() {
        assert_eq!(discontinued_weight(1, 1), 0.25);
        assert_eq!(discontinued_weight(15, 1), 1.0 / 256.0);
        assert_eq!(discontinued_weight(0, 7), 1.0);
        // two intervals silent
        assert_eq!(discontinued_weight(4, 2), 1.0 / 9.0);
    }

    fn event_with_citations(
        key: &str,
        event_date: CalendarDate,
        entry: CalendarDate,
        papers: u32,
        citations: &[(i32, u64)],
    ) -> Event {
        Event {
            event_key: key.into(),
            conf_key: "c".into(),
            event_date: Some(event_date),
            entry_date: entry,
            country: None,
            paper_count: papers,
            author_ids: BTreeSet::new(),
            citations_per_year: citations.iter().copied().collect(),
        }
    }

    #[test]
    fn citations_per_paper_sums_event_years_before_now() {
        // two events; citation years 1990 and 1991 are both event years,
        // so the first event contributes (5+5)/10 and the second nothing
        let mut c = Conference::new("c".into());
        c.events = vec![
            event_with_citations(
                "e1",
                date(1990, 6),
                date(1990, 8),
                10,
                &[(1990, 5), (1991, 5)],
            ),
            event_with_citations("e2", date(1991, 6), date(1991, 8), 5, &[]),
        ];
        c.sort_events();
        let cit = citations_per_paper(&c, date(2016, 12));
        assert_eq!(cit, 1.0);
        assert_eq!(citation_weight(cit, 2.0), 1.5);
    }

    #[test]
    fn citations_ignore_years_without_an_event_and_from_now_on() {
        let mut c = Conference::new("c".into());
        c.events = vec![event_with_citations(
            "e1",
            date(1990, 6),
            date(1990, 8),
            10,
            &[(1990, 5), (1991, 5)],
        )];
        // only 1990 is an event year, 1991 citations do not count
        assert_eq!(citations_per_paper(&c, date(2016, 12)), 0.5);
        // an event in now's year contributes no citation year
        c.events.push(event_with_citations(
            "e2",
            date(2016, 6),
            date(2016, 7),
            5,
            &[(2016, 9)],
        ));
        c.sort_events();
        assert_eq!(citations_per_paper(&c, date(2016, 12)), 0.5);
    }

    #[test]
    fn citation_weight_neutral_and_bound() {
        assert_eq!(citation_weight(0.0, 2.0), 1.0);
        assert_eq!(citation_weight(2.0, 2.0), 2.0);
        assert_eq!(citation_weight(0.0, 0.0), 1.0);
    }

    fn corpus_with_author_counts(counts: &[(&str, i32, u64)]) -> Corpus {
        let mut corpus = Corpus::default();
        for &(author, year, count) in counts {
            corpus
                .author_record_counts
                .entry(author.into())
                .or_default()
                .insert(year, count);
        }
        corpus
    }

    #[test]
    fn event_prominence_averages_author_records() {
        let corpus = corpus_with_author_counts(&[("a1", 2015, 10), ("a2", 2015, 30)]);
        let mut e = event_with_citations("e", date(2015, 6), date(2015, 7), 12, &[]);
        e.author_ids = BTreeSet::from([AuthorId::from("a1"), AuthorId::from("a2")]);
        assert_eq!(event_prominence(&e, &corpus, date(2016, 12)), Some(20.0));
        assert_eq!(prominence_weight(Some(20.0), 40.0), 1.5);
    }

    #[test]
    fn small_events_are_excluded_from_prominence() {
        let corpus = corpus_with_author_counts(&[("a1", 2015, 10)]);
        let mut e = event_with_citations("e", date(2015, 6), date(2015, 7), 9, &[]);
        e.author_ids = BTreeSet::from([AuthorId::from("a1")]);
        assert_eq!(event_prominence(&e, &corpus, date(2016, 12)), None);
        let mut c = Conference::new("c".into());
        c.events = vec![e];
        assert_eq!(conference_prominence(&c, &corpus, date(2016, 12)), None);
        assert_eq!(prominence_weight(None, 40.0), 1.0);
    }

    #[test]
    fn prominence_weight_attains_bound_at_max() {
        assert_eq!(prominence_weight(Some(40.0), 40.0), 2.0);
    }

    #[test]
    fn ranking_score_multiplies_delay_and_factor() {
        let w = FactorWeights {
            delta: 3,
            delay: 4,
            rating: 1.88,
            internationality: 1.0,
            discontinued: 0.25,
            citation: 1.0,
            prominence: 1.0,
        };
        assert!((ranking_score(&w, Factor::Rating) - 7.52).abs() < 1e-12);

        let not_due = FactorWeights {
            delta: -1,
            delay: 0,
            ..w
        };
        assert_eq!(ranking_score(&not_due, Factor::Rating), 0.0);
        assert_eq!(ranking_score(&not_due, Factor::Discontinued), 0.0);

        let dl = FactorWeights {
            delta: 146,
            delay: 1,
            discontinued: 0.004,
            ..w
        };
        assert!((ranking_score(&dl, Factor::Discontinued) - 0.004).abs() < 1e-12);
    }

    fn annual_conference(key: &str, last_event_year: i32, month: u32) -> Conference {
        let mut c = Conference::new(key.into());
        c.events = (last_event_year - 3..=last_event_year)
            .map(|y| {
                event_with_citations(
                    &format!("{key}-{y}"),
                    date(y, month),
                    date(y, month),
                    0,
                    &[],
                )
            })
            .map(|mut e| {
                e.conf_key = key.into();
                e
            })
            .collect();
        c.sort_events();
        c
    }

    fn corpus_of(confs: Vec<Conference>) -> Corpus {
        let mut corpus = Corpus::default();
        for c in confs {
            corpus.conferences.insert(c.conf_key.clone(), c);
        }
        corpus
    }

    #[test]
    fn rank_orders_by_score_descending() {
        let mut a = annual_conference("alpha", 2015, 1);
        a.rating_values = vec![4];
        let b = annual_conference("beta", 2015, 1);
        let corpus = corpus_of(vec![a, b]);
        let list = rank(&corpus, date(2016, 2), Factor::Rating);
        assert_eq!(list.entries[0].conf_key, ConfKey::from("alpha"));
        assert_eq!(list.entries[0].rank, 1);
        assert_eq!(list.entries[1].conf_key, ConfKey::from("beta"));
        assert_eq!(list.entries[1].rank, 2);
        assert!(list.entries[0].score > list.entries[1].score);
    }

    #[test]
    fn rank_breaks_ties_by_key() {
        let corpus = corpus_of(vec![
            annual_conference("zeta", 2015, 1),
            annual_conference("eta", 2015, 1),
        ]);
        let list = rank(&corpus, date(2016, 2), Factor::Rating);
        assert_eq!(list.entries[0].score, list.entries[1].score);
        assert_eq!(list.entries[0].conf_key, ConfKey::from("eta"));
    }

    #[test]
    fn baseline_orders_overdue_ascending_then_not_due() {
        // deltas 3, 0, -2 must come out as 0, 3, -2
        let corpus = corpus_of(vec![
            annual_conference("a-due3", 2015, 11), // expected 2016-11, delta 3 at 2017-02
            annual_conference("b-due0", 2016, 2),  // expected 2017-02, delta 0
            annual_conference("c-early", 2016, 4), // expected 2017-04, delta -2
        ]);
        let now = date(2017, 2);
        let list = rank(&corpus, now, Factor::Baseline);
        let keys: Vec<&str> = list.entries.iter().map(|e| e.conf_key.0.as_str()).collect();
        assert_eq!(keys, vec!["b-due0", "a-due3", "c-early"]);
    }

    #[test]
    fn rank_omits_unrankable_conferences() {
        let mut undated = Conference::new("undated".into());
        undated.events = vec![Event {
            event_key: "x".into(),
            conf_key: "undated".into(),
            event_date: None,
            entry_date: date(2015, 1),
            country: None,
            paper_count: 0,
            author_ids: BTreeSet::new(),
            citations_per_year: BTreeMap::new(),
        }];
        let corpus = corpus_of(vec![undated, annual_conference("ok", 2015, 1)]);
        let list = rank(&corpus, date(2016, 2), Factor::Rating);
        assert_eq!(list.entries.len(), 1);
        assert_eq!(list.entries[0].conf_key, ConfKey::from("ok"));
    }

    #[test]
    fn rank_is_deterministic() {
        let mut a = annual_conference("alpha", 2015, 3);
        a.rating_values = vec![3, 2];
        let corpus = corpus_of(vec![a, annual_conference("beta", 2014, 9)]);
        let r1 = rank(&corpus, date(2016, 6), Factor::Discontinued);
        let r2 = rank(&corpus, date(2016, 6), Factor::Discontinued);
        assert_eq!(r1, r2);
    }

    #[test]
    fn factor_names_round_trip() {
        for f in Factor::ALL {
            assert_eq!(f.name().parse::<Factor>().unwrap(), f);
        }
        assert!("pagerank".parse::<Factor>().is_err());
    }

    #[test]
    fn delay_weight_is_non_increasing_on_overdue_deltas() {
        for d in 0..240 {
            assert!(delay_weight(d) >= delay_weight(d + 1));
        }
    }

    fn rank_of(list: &RankedList, key: &str) -> u32 {
        list.entries
            .iter()
            .find(|e| e.conf_key.0 == key)
            .map(|e| e.rank)
            .unwrap()
    }

    #[test]
    fn raising_a_factor_value_never_lowers_the_rank() {
        // same delay bucket everywhere; only the factor value moves
        let build = |mid_ratings: Vec<u32>| {
            let mut low = annual_conference("low", 2015, 1);
            low.rating_values = vec![1];
            let mut mid = annual_conference("mid", 2015, 1);
            mid.rating_values = mid_ratings;
            let mut high = annual_conference("high", 2015, 1);
            high.rating_values = vec![4];
            corpus_of(vec![low, mid, high])
        };
        let now = date(2016, 2);
        let before = rank_of(&rank(&build(vec![2]), now, Factor::Rating), "mid");
        for better in [vec![3u32], vec![4], vec![4, 4]] {
            let after = rank_of(&rank(&build(better.clone()), now, Factor::Rating), "mid");
            assert!(
                after <= before,
                "ratings {better:?} dropped mid from rank {before} to {after}"
            );
        }
    }
}
