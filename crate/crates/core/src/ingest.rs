//! Corpus ingestion from the documented line-oriented input files.
//!
//! Events arrive as JSONL; missing event dates and countries are filled
//! from the title where possible. Ratings come as CSV rows mapped
//! through a class table, citations as pre-aggregated per-event yearly
//! counts, and author record counts are derived from an optional papers
//! file (or supplied precomputed). Rows that cannot be attached are
//! skipped with a warning; malformed lines abort with file and line.

use std::collections::BTreeMap;
use std::collections::btree_map::Entry;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::calendar::CalendarDate;
use crate::corpus::{AuthorId, Conference, Corpus, Event, EventKey};
use crate::error::IngestError;
use crate::title::{self, Gazetteer};

/// One line of the events file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRow {
    pub event_key: String,
    pub conf_key: String,
    #[serde(default)]
    pub title: String,
    /// Entry month, `YYYY-MM`.
    pub entry: String,
    /// Event month, `YYYY-MM`; parsed from the title when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub event: Option<String>,
    /// ISO-3166 alpha-2; parsed from the title when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub country: Option<String>,
    #[serde(default)]
    pub paper_count: u32,
    #[serde(default)]
    pub author_ids: Vec<String>,
}

/// One line of the papers file: either a publication record, from which
/// per-author counts are derived, or a precomputed cumulative count,
/// which wins over derived values for that author.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PaperRow {
    Record {
        record_key: String,
        author_ids: Vec<String>,
        year: i32,
    },
    CumulativeCount {
        author_id: String,
        year: i32,
        count: u64,
    },
}

/// One line of the citations file: incoming citations in `year` to the
/// papers of `event_key`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CitationRow {
    pub event_key: String,
    pub year: i32,
    pub count: u64,
}

/// One row of the ratings CSV: `conf_key,list_id,class`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatingRow {
    pub conf_key: String,
    pub list_id: String,
    pub class: String,
}

/// Class-to-value table for rating rows.
pub type RatingClassMap = BTreeMap<String, u32>;

/// The default rating classes.
pub fn default_rating_class_map() -> RatingClassMap {
    [
        ("A*".to_string(), 4),
        ("A".to_string(), 3),
        ("B".to_string(), 2),
        ("C".to_string(), 1),
        ("Other".to_string(), 0),
    ]
    .into_iter()
    .collect()
}

/// A skipped row or data-quality note; never fatal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestWarning {
    pub file: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for IngestWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "{}:{line}: {}", self.file, self.message),
            None => write!(f, "{}: {}", self.file, self.message),
        }
    }
}

/// Input files for one run. Only the events file is required.
#[derive(Debug, Clone, Default)]
pub struct IngestPaths {
    pub events: PathBuf,
    pub papers: Option<PathBuf>,
    pub ratings: Option<PathBuf>,
    pub citations: Option<PathBuf>,
    pub gazetteer: Option<PathBuf>,
}

/// Result of an ingestion: the corpus plus everything skipped on the way.
#[derive(Debug)]
pub struct IngestOutcome {
    pub corpus: Corpus,
    pub warnings: Vec<IngestWarning>,
}

/// Loads and assembles a corpus from disk.
pub fn load_corpus(
    paths: &IngestPaths,
    rating_class_map: &RatingClassMap,
) -> Result<IngestOutcome, IngestError> {
    let gazetteer = match &paths.gazetteer {
        Some(path) => Some(Gazetteer::from_path(path)?),
        None => None,
    };
    let events = read_jsonl::<EventRow>(&paths.events)?;
    let papers = match &paths.papers {
        Some(path) => read_jsonl::<PaperRow>(path)?,
        None => Parsed::empty(),
    };
    let citations = match &paths.citations {
        Some(path) => read_jsonl::<CitationRow>(path)?,
        None => Parsed::empty(),
    };
    let ratings = match &paths.ratings {
        Some(path) => read_ratings(path)?,
        None => Parsed::empty(),
    };
    assemble(
        events,
        papers,
        citations,
        ratings,
        rating_class_map,
        gazetteer.as_ref(),
    )
}

/// Rows of one file, each with its source line for error reporting.
#[derive(Debug, Clone)]
pub struct Parsed<T> {
    pub file: String,
    pub rows: Vec<(usize, T)>,
}

impl<T> Parsed<T> {
    pub fn empty() -> Self {
        Parsed {
            file: String::new(),
            rows: Vec::new(),
        }
    }

    /// Wraps in-memory rows (used by the synthetic generator and tests).
    pub fn in_memory(file: &str, rows: Vec<T>) -> Self {
        Parsed {
            file: file.to_string(),
            rows: rows
                .into_iter()
                .enumerate()
                .map(|(i, r)| (i + 1, r))
                .collect(),
        }
    }
}

fn read_jsonl<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Parsed<T>, IngestError> {
    let file = path.display().to_string();
    let handle = File::open(path).map_err(|source| IngestError::Io {
        file: file.clone(),
        source,
    })?;
    let mut rows = Vec::new();
    for (idx, line) in BufReader::new(handle).lines().enumerate() {
        let line = line.map_err(|source| IngestError::Io {
            file: file.clone(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let row: T = serde_json::from_str(&line).map_err(|e| IngestError::Malformed {
            file: file.clone(),
            line: idx + 1,
            reason: e.to_string(),
        })?;
        rows.push((idx + 1, row));
    }
    Ok(Parsed { file, rows })
}

fn read_ratings(path: &Path) -> Result<Parsed<RatingRow>, IngestError> {
    let file = path.display().to_string();
    let handle = File::open(path).map_err(|source| IngestError::Io {
        file: file.clone(),
        source,
    })?;
    let mut rows = Vec::new();
    for (idx, line) in BufReader::new(handle).lines().enumerate() {
        let line = line.map_err(|source| IngestError::Io {
            file: file.clone(),
            source,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.splitn(3, ',');
        let (conf, list, class) = match (fields.next(), fields.next(), fields.next()) {
            (Some(c), Some(l), Some(k)) => (c, l, k),
            _ => {
                return Err(IngestError::Malformed {
                    file: file.clone(),
                    line: idx + 1,
                    reason: "expected conf_key,list_id,class".to_string(),
                });
            }
        };
        rows.push((
            idx + 1,
            RatingRow {
                conf_key: conf.trim().to_string(),
                list_id: list.trim().to_string(),
                class: class.trim().to_string(),
            },
        ));
    }
    Ok(Parsed { file, rows })
}

/// Assembles a corpus from parsed rows. Shared by file ingestion and the
/// synthetic generator so both travel the same path.
pub fn assemble(
    events: Parsed<EventRow>,
    papers: Parsed<PaperRow>,
    citations: Parsed<CitationRow>,
    ratings: Parsed<RatingRow>,
    rating_class_map: &RatingClassMap,
    gazetteer: Option<&Gazetteer>,
) -> Result<IngestOutcome, IngestError> {
    let mut warnings = Vec::new();
    let mut by_event_key: BTreeMap<EventKey, Event> = BTreeMap::new();

    for (line, row) in events.rows {
        let malformed = |reason: String| IngestError::Malformed {
            file: events.file.clone(),
            line,
            reason,
        };
        let entry_date: CalendarDate = row
            .entry
            .parse()
            .map_err(|e| malformed(format!("entry: {e}")))?;
        let explicit_event = row
            .event
            .as_deref()
            .map(|s| s.parse::<CalendarDate>())
            .transpose()
            .map_err(|e| malformed(format!("event: {e}")))?;
        let event_date = explicit_event.or_else(|| title::parse_event_date(&row.title));
        let country = normalize_country(row.country)
            .or_else(|| gazetteer.and_then(|g| g.parse_country(&row.title)));
        let event = Event {
            event_key: row.event_key.clone().into(),
            conf_key: row.conf_key.into(),
            event_date,
            entry_date,
            country,
            paper_count: row.paper_count,
            author_ids: row.author_ids.into_iter().map(AuthorId::from).collect(),
            citations_per_year: BTreeMap::new(),
        };
        match by_event_key.entry(event.event_key.clone()) {
            Entry::Vacant(slot) => {
                slot.insert(event);
            }
            Entry::Occupied(_) => {
                return Err(IngestError::DuplicateEventKey {
                    file: events.file.clone(),
                    line,
                    key: row.event_key,
                });
            }
        }
    }

    for (line, row) in citations.rows {
        match by_event_key.get_mut(&EventKey::from(row.event_key.clone())) {
            Some(event) => {
                *event.citations_per_year.entry(row.year).or_insert(0) += row.count;
            }
            None => warnings.push(IngestWarning {
                file: citations.file.clone(),
                line: Some(line),
                message: format!("unknown event key {:?}, row skipped", row.event_key),
            }),
        }
    }

    let mut conferences: BTreeMap<_, Conference> = BTreeMap::new();
    for event in by_event_key.into_values() {
        conferences
            .entry(event.conf_key.clone())
            .or_insert_with(|| Conference::new(event.conf_key.clone()))
            .events
            .push(event);
    }
    for conf in conferences.values_mut() {
        conf.sort_events();
        if !conf.is_rankable() {
            warnings.push(IngestWarning {
                file: events.file.clone(),
                line: None,
                message: format!(
                    "conference {} has no event with a date and cannot be ranked",
                    conf.conf_key
                ),
            });
        }
    }

    for (line, row) in ratings.rows {
        let Some(&value) = rating_class_map.get(&row.class) else {
            warnings.push(IngestWarning {
                file: ratings.file.clone(),
                line: Some(line),
                message: format!("unknown rating class {:?}, row skipped", row.class),
            });
            continue;
        };
        match conferences.get_mut(&row.conf_key.clone().into()) {
            Some(conf) => conf.rating_values.push(value),
            None => warnings.push(IngestWarning {
                file: ratings.file.clone(),
                line: Some(line),
                message: format!("unknown conference key {:?}, row skipped", row.conf_key),
            }),
        }
    }
    for conf in conferences.values_mut() {
        conf.rating_values.sort_unstable();
    }

    let author_record_counts = accumulate_author_counts(papers.rows);
    for (author, by_year) in &author_record_counts {
        if by_year
            .values()
            .zip(by_year.values().skip(1))
            .any(|(a, b)| b < a)
        {
            warnings.push(IngestWarning {
                file: papers.file.clone(),
                line: None,
                message: format!("cumulative record counts for author {author} decrease over time"),
            });
        }
    }

    Ok(IngestOutcome {
        corpus: Corpus {
            conferences,
            author_record_counts,
        },
        warnings,
    })
}

fn normalize_country(country: Option<String>) -> Option<String> {
    country
        .map(|c| c.trim().to_uppercase())
        .filter(|c| !c.is_empty())
}

/// Turns paper rows into cumulative per-author counts. Precomputed rows
/// replace derived counts for their author entirely.
fn accumulate_author_counts(
    rows: Vec<(usize, PaperRow)>,
) -> BTreeMap<AuthorId, BTreeMap<i32, u64>> {
    let mut increments: BTreeMap<AuthorId, BTreeMap<i32, u64>> = BTreeMap::new();
    let mut precomputed: BTreeMap<AuthorId, BTreeMap<i32, u64>> = BTreeMap::new();
    for (_, row) in rows {
        match row {
            PaperRow::Record {
                author_ids, year, ..
            } => {
                for author in author_ids {
                    *increments
                        .entry(author.into())
                        .or_default()
                        .entry(year)
                        .or_insert(0) += 1;
                }
            }
            PaperRow::CumulativeCount {
                author_id,
                year,
                count,
            } => {
                precomputed
                    .entry(author_id.into())
                    .or_default()
                    .insert(year, count);
            }
        }
    }
    let mut counts: BTreeMap<AuthorId, BTreeMap<i32, u64>> = increments
        .into_iter()
        .map(|(author, by_year)| {
            let mut running = 0;
            let cumulative = by_year
                .into_iter()
                .map(|(year, n)| {
                    running += n;
                    (year, running)
                })
                .collect();
            (author, cumulative)
        })
        .collect();
    // precomputed wins on conflict
    for (author, by_year) in precomputed {
        counts.insert(author, by_year);
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn date(year: i32, month: u32) -> CalendarDate {
        CalendarDate::new(year, month).unwrap()
    }

    fn gazetteer() -> Gazetteer {
        let data = "country\tGermany\tDE\ncountry\tUSA\tUS\ncity\tParis\tFR\n";
        Gazetteer::from_reader("g.tsv", data.as_bytes()).unwrap()
    }

    fn event_rows(rows: Vec<EventRow>) -> Parsed<EventRow> {
        Parsed::in_memory("events.jsonl", rows)
    }

    fn row(event_key: &str, conf_key: &str, title: &str, entry: &str) -> EventRow {
        EventRow {
            event_key: event_key.to_string(),
            conf_key: conf_key.to_string(),
            title: title.to_string(),
            entry: entry.to_string(),
            event: None,
            country: None,
            paper_count: 0,
            author_ids: Vec::new(),
        }
    }

    fn assemble_events(rows: Vec<EventRow>) -> IngestOutcome {
        assemble(
            event_rows(rows),
            Parsed::empty(),
            Parsed::empty(),
            Parsed::empty(),
            &default_rating_class_map(),
            Some(&gazetteer()),
        )
        .unwrap()
    }

    #[test]
    fn titles_fill_missing_dates_and_countries() {
        let rows = vec![
            row(
                "a-16",
                "a",
                "Proc. A 2016, Paris, June 19-23, 2016",
                "2016-08",
            ),
            row(
                "b-15",
                "b",
                "Records B, Trier, Germany, May 2015",
                "2015-07",
            ),
            row("c-14", "c", "Notes C, March 2014", "2014-05"),
        ];
        let outcome = assemble_events(rows);
        let a = &outcome.corpus.conferences[&"a".into()].events[0];
        assert_eq!(a.event_date, Some(date(2016, 6)));
        assert_eq!(a.country, Some("FR".to_string()));
        let b = &outcome.corpus.conferences[&"b".into()].events[0];
        assert_eq!(b.event_date, Some(date(2015, 5)));
        assert_eq!(b.country, Some("DE".to_string()));
        let c = &outcome.corpus.conferences[&"c".into()].events[0];
        assert_eq!(c.event_date, Some(date(2014, 3)));
        assert_eq!(c.country, None);
        assert!(outcome.warnings.is_empty());
    }

    #[test]
    fn explicit_fields_win_over_the_title() {
        let mut r = row("a-16", "a", "Proc. A, Paris, June 2016", "2016-08");
        r.event = Some("2016-07".to_string());
        r.country = Some("de".to_string());
        let outcome = assemble_events(vec![r]);
        let a = &outcome.corpus.conferences[&"a".into()].events[0];
        assert_eq!(a.event_date, Some(date(2016, 7)));
        assert_eq!(a.country, Some("DE".to_string()));
    }

    #[test]
    fn undated_conferences_are_flagged() {
        let outcome = assemble_events(vec![row("x-1", "x", "no date here", "2015-03")]);
        assert!(!outcome.corpus.conferences[&"x".into()].is_rankable());
        assert_eq!(outcome.warnings.len(), 1);
        assert!(outcome.warnings[0].message.contains("cannot be ranked"));
    }

    #[test]
    fn duplicate_event_keys_are_fatal() {
        let err = assemble(
            event_rows(vec![
                row("dup", "a", "A, May 2015", "2015-06"),
                row("dup", "a", "A, May 2016", "2016-06"),
            ]),
            Parsed::empty(),
            Parsed::empty(),
            Parsed::empty(),
            &default_rating_class_map(),
            None,
        );
        assert!(matches!(
            err,
            Err(IngestError::DuplicateEventKey { line: 2, .. })
        ));
    }

    #[test]
    fn rating_rows_attach_through_the_class_map() {
        let outcome = assemble(
            event_rows(vec![row("jcdl-16", "jcdl", "JCDL, June 2016", "2016-07")]),
            Parsed::empty(),
            Parsed::empty(),
            Parsed::in_memory(
                "ratings.csv",
                vec![
                    RatingRow {
                        conf_key: "jcdl".to_string(),
                        list_id: "CORE2017".to_string(),
                        class: "A*".to_string(),
                    },
                    RatingRow {
                        conf_key: "ghost".to_string(),
                        list_id: "CORE2017".to_string(),
                        class: "B".to_string(),
                    },
                    RatingRow {
                        conf_key: "jcdl".to_string(),
                        list_id: "X".to_string(),
                        class: "A+".to_string(),
                    },
                ],
            ),
            &default_rating_class_map(),
            None,
        )
        .unwrap();
        assert_eq!(
            outcome.corpus.conferences[&"jcdl".into()].rating_values,
            vec![4]
        );
        assert_eq!(outcome.warnings.len(), 2);
        assert!(
            outcome.warnings[0]
                .message
                .contains("unknown conference key")
        );
        assert!(outcome.warnings[1].message.contains("unknown rating class"));
    }

    #[test]
    fn citation_rows_attach_to_events() {
        let outcome = assemble(
            event_rows(vec![row("a-15", "a", "A, May 2015", "2015-06")]),
            Parsed::empty(),
            Parsed::in_memory(
                "citations.jsonl",
                vec![
                    CitationRow {
                        event_key: "a-15".to_string(),
                        year: 2016,
                        count: 7,
                    },
                    CitationRow {
                        event_key: "missing".to_string(),
                        year: 2016,
                        count: 3,
                    },
                ],
            ),
            Parsed::empty(),
            &default_rating_class_map(),
            None,
        )
        .unwrap();
        let a = &outcome.corpus.conferences[&"a".into()].events[0];
        assert_eq!(a.citations_per_year, BTreeMap::from([(2016, 7)]));
        assert_eq!(outcome.warnings.len(), 1);
        assert!(outcome.warnings[0].message.contains("unknown event key"));
    }

    #[test]
    fn author_counts_accumulate_and_precomputed_wins() {
        let papers = Parsed::in_memory(
            "papers.jsonl",
            vec![
                PaperRow::Record {
                    record_key: "r1".to_string(),
                    author_ids: vec!["a1".to_string(), "a2".to_string()],
                    year: 2010,
                },
                PaperRow::Record {
                    record_key: "r2".to_string(),
                    author_ids: vec!["a1".to_string()],
                    year: 2012,
                },
                PaperRow::CumulativeCount {
                    author_id: "a2".to_string(),
                    year: 2012,
                    count: 40,
                },
            ],
        );
        let outcome = assemble(
            event_rows(vec![row("e", "c", "C, May 2015", "2015-06")]),
            papers,
            Parsed::empty(),
            Parsed::empty(),
            &default_rating_class_map(),
            None,
        )
        .unwrap();
        let corpus = &outcome.corpus;
        assert_eq!(corpus.author_records_until(&"a1".into(), 2010), 1);
        assert_eq!(corpus.author_records_until(&"a1".into(), 2012), 2);
        // derived count for a2 is replaced by the precomputed row
        assert_eq!(corpus.author_records_until(&"a2".into(), 2011), 0);
        assert_eq!(corpus.author_records_until(&"a2".into(), 2012), 40);
    }

    #[test]
    fn decreasing_precomputed_counts_are_flagged() {
        let papers = Parsed::in_memory(
            "papers.jsonl",
            vec![
                PaperRow::CumulativeCount {
                    author_id: "a1".to_string(),
                    year: 2010,
                    count: 9,
                },
                PaperRow::CumulativeCount {
                    author_id: "a1".to_string(),
                    year: 2012,
                    count: 4,
                },
            ],
        );
        let outcome = assemble(
            event_rows(vec![row("e", "c", "C, May 2015", "2015-06")]),
            papers,
            Parsed::empty(),
            Parsed::empty(),
            &default_rating_class_map(),
            None,
        )
        .unwrap();
        assert_eq!(outcome.warnings.len(), 1);
        assert!(outcome.warnings[0].message.contains("decrease over time"));
    }

    #[test]
    fn malformed_event_dates_are_fatal_with_line_numbers() {
        let err = assemble(
            event_rows(vec![row("a", "a", "t", "not-a-date")]),
            Parsed::empty(),
            Parsed::empty(),
            Parsed::empty(),
            &default_rating_class_map(),
            None,
        );
        match err {
            Err(IngestError::Malformed { line, reason, .. }) => {
                assert_eq!(line, 1);
                assert!(reason.contains("entry"));
            }
            other => panic!("expected malformed error, got {other:?}"),
        }
    }
}
