//! Deterministic synthetic corpus generation for tests, benchmarks, and
//! demos. The same seed always yields byte-identical files, and the rows
//! go through the regular ingestion path, so generated corpora behave
//! exactly like ingested ones.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::IngestError;
use crate::ingest::{
    self, CitationRow, EventRow, IngestOutcome, PaperRow, Parsed, RatingRow,
    default_rating_class_map,
};
use crate::title::Gazetteer;

/// Venue pool: (city, country name, ISO code). Kept in sync with the
/// sample gazetteer shipped under `data/`.
pub const VENUES: [(&str, &str, &str); 12] = [
    ("Newark", "USA", "US"),
    ("Paris", "France", "FR"),
    ("Trier", "Germany", "DE"),
    ("Tokyo", "Japan", "JP"),
    ("Toronto", "Canada", "CA"),
    ("London", "United Kingdom", "GB"),
    ("Sydney", "Australia", "AU"),
    ("Vienna", "Austria", "AT"),
    ("Seoul", "South Korea", "KR"),
    ("Florence", "Italy", "IT"),
    ("Madrid", "Spain", "ES"),
    ("Zurich", "Switzerland", "CH"),
];

const MONTH_NAMES: [&str; 12] = [
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
];

const RATING_LISTS: [&str; 3] = ["core2008", "core2017", "mg2008"];

/// Shape of the generated corpus.
#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub n_conferences: usize,
    /// First possible event year.
    pub start_year: i32,
    /// Last possible event year (inclusive).
    pub end_year: i32,
    /// Share of series running every second year instead of yearly.
    pub biennial_fraction: f64,
    /// Share of series that stopped well before the range end.
    pub discontinued_fraction: f64,
    /// Share of series appearing in at least one rating list.
    pub rated_fraction: f64,
    /// Share of series with citation counts.
    pub cited_fraction: f64,
    /// Share of series rotating venues across countries.
    pub international_fraction: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_conferences: 20,
            start_year: 2000,
            end_year: 2016,
            biennial_fraction: 0.2,
            discontinued_fraction: 0.15,
            rated_fraction: 0.5,
            cited_fraction: 0.7,
            international_fraction: 0.5,
        }
    }
}

/// Generated rows, ready to serialize or to assemble in memory.
#[derive(Debug, Clone, Default)]
pub struct SynthCorpus {
    pub events: Vec<EventRow>,
    pub papers: Vec<PaperRow>,
    pub ratings: Vec<RatingRow>,
    pub citations: Vec<CitationRow>,
}

/// Paths of the files written by [`SynthCorpus::write_to_dir`].
#[derive(Debug, Clone)]
pub struct SynthFiles {
    pub events: PathBuf,
    pub papers: PathBuf,
    pub ratings: PathBuf,
    pub citations: PathBuf,
}

pub fn generate(seed: u64, config: &SynthConfig) -> SynthCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SynthCorpus::default();
    let author_pool: Vec<String> = (0..config.n_conferences.max(1) * 12)
        .map(|i| format!("auth-{i:04}"))
        .collect();

    for ci in 0..config.n_conferences {
        let conf_key = format!("conf-{ci:03}");
        let interval: i32 = if rng.random_bool(config.biennial_fraction) {
            2
        } else {
            1
        };
        let month: u32 = rng.random_range(1..=12);
        // characteristic entry delay, occasionally a slow publisher
        let base_delay: i32 = if rng.random_bool(0.1) {
            rng.random_range(13..=18)
        } else {
            rng.random_range(0..=5)
        };
        let international = rng.random_bool(config.international_fraction);
        let home_venue = rng.random_range(0..VENUES.len());
        let cited = rng.random_bool(config.cited_fraction);

        let first_year = config.start_year + rng.random_range(0..interval);
        let last_year = if rng.random_bool(config.discontinued_fraction) {
            let latest_dead = (config.end_year - 2 * interval - 1).max(first_year);
            rng.random_range(first_year..=latest_dead)
        } else {
            config.end_year
        };

        let mut edition = 0usize;
        let mut year = first_year;
        while year <= last_year {
            edition += 1;
            let event_key = format!("{conf_key}-{year}");
            let venue = if international {
                VENUES[(home_venue + edition) % VENUES.len()]
            } else {
                VENUES[home_venue]
            };
            let day = rng.random_range(1..=24u32);
            let title = format!(
                "Proceedings of the {edition}. {} Conference, {}, {}, {} {day}-{}, {year}",
                conf_key.to_uppercase(),
                venue.0,
                venue.1,
                MONTH_NAMES[month as usize - 1],
                day + 3,
            );
            let delay = (base_delay + rng.random_range(0..=1)).max(0);
            let event_date = crate::calendar::CalendarDate::new(year, month).expect("valid");
            let entry_date = event_date.plus_months(delay).expect("forward shift");

            let paper_count: u32 = rng.random_range(4..=40);
            let n_authors = (paper_count as usize * 2).min(author_pool.len());
            let mut authors: Vec<String> =
                author_pool.sample(&mut rng, n_authors).cloned().collect();
            authors.sort_unstable();
            for p in 0..paper_count {
                let k = rng.random_range(1..=3usize).min(authors.len());
                let mut record_authors: Vec<String> =
                    authors.sample(&mut rng, k).cloned().collect();
                record_authors.sort_unstable();
                out.papers.push(PaperRow::Record {
                    record_key: format!("{event_key}/p{p}"),
                    author_ids: record_authors,
                    year,
                });
            }

            if cited {
                for cite_year in year..=(year + 4).min(config.end_year) {
                    let count = rng.random_range(0..=30u64);
                    if count > 0 {
                        out.citations.push(CitationRow {
                            event_key: event_key.clone(),
                            year: cite_year,
                            count,
                        });
                    }
                }
            }

            // most rows carry explicit fields; the rest exercise the
            // title parser during ingestion
            let explicit_date = rng.random_bool(0.7);
            let explicit_country = rng.random_bool(0.5);
            out.events.push(EventRow {
                event_key,
                conf_key: conf_key.clone(),
                title,
                entry: entry_date.to_string(),
                event: explicit_date.then(|| event_date.to_string()),
                country: explicit_country.then(|| venue.2.to_string()),
                paper_count,
                author_ids: authors,
            });

            year += interval;
        }

        // a degenerate year range can leave a series without events;
        // rating rows for it would only be dropped at ingestion
        if edition > 0 && rng.random_bool(config.rated_fraction) {
            let n_lists = rng.random_range(1..=RATING_LISTS.len());
            for list in RATING_LISTS.iter().take(n_lists) {
                let class = ["A*", "A", "B", "C", "Other"]
                    .choose(&mut rng)
                    .expect("non-empty");
                out.ratings.push(RatingRow {
                    conf_key: conf_key.clone(),
                    list_id: list.to_string(),
                    class: class.to_string(),
                });
            }
        }
    }
    out
}

impl SynthCorpus {
    /// Serializes the rows into the four input files under `dir`.
    pub fn write_to_dir(&self, dir: &Path) -> io::Result<SynthFiles> {
        std::fs::create_dir_all(dir)?;
        let files = SynthFiles {
            events: dir.join("events.jsonl"),
            papers: dir.join("papers.jsonl"),
            ratings: dir.join("ratings.csv"),
            citations: dir.join("citations.jsonl"),
        };

        let mut events = Vec::new();
        for row in &self.events {
            writeln!(events, "{}", serde_json::to_string(row)?)?;
        }
        std::fs::write(&files.events, events)?;

        let mut papers = Vec::new();
        for row in &self.papers {
            writeln!(papers, "{}", serde_json::to_string(row)?)?;
        }
        std::fs::write(&files.papers, papers)?;

        let mut ratings = Vec::new();
        for row in &self.ratings {
            writeln!(ratings, "{},{},{}", row.conf_key, row.list_id, row.class)?;
        }
        std::fs::write(&files.ratings, ratings)?;

        let mut citations = Vec::new();
        for row in &self.citations {
            writeln!(citations, "{}", serde_json::to_string(row)?)?;
        }
        std::fs::write(&files.citations, citations)?;

        Ok(files)
    }

    /// Assembles the rows into a corpus through the regular ingestion
    /// path, without touching the filesystem.
    pub fn assemble(&self, gazetteer: Option<&Gazetteer>) -> Result<IngestOutcome, IngestError> {
        ingest::assemble(
            Parsed::in_memory("events.jsonl", self.events.clone()),
            Parsed::in_memory("papers.jsonl", self.papers.clone()),
            Parsed::in_memory("citations.jsonl", self.citations.clone()),
            Parsed::in_memory("ratings.csv", self.ratings.clone()),
            &default_rating_class_map(),
            gazetteer,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shipped_gazetteer() -> Gazetteer {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/gazetteer.tsv");
        Gazetteer::from_path(&path).expect("sample gazetteer parses")
    }

    #[test]
    fn same_seed_gives_identical_files() {
        let dir = tempfile::tempdir().unwrap();
        let config = SynthConfig::default();
        let a = generate(42, &config);
        let b = generate(42, &config);
        let files_a = a.write_to_dir(&dir.path().join("a")).unwrap();
        let files_b = b.write_to_dir(&dir.path().join("b")).unwrap();
        for (fa, fb) in [
            (&files_a.events, &files_b.events),
            (&files_a.papers, &files_b.papers),
            (&files_a.ratings, &files_b.ratings),
            (&files_a.citations, &files_b.citations),
        ] {
            assert_eq!(
                std::fs::read(fa).unwrap(),
                std::fs::read(fb).unwrap(),
                "{fa:?} differs from {fb:?}"
            );
        }
    }

    #[test]
    fn different_seeds_differ() {
        let config = SynthConfig::default();
        assert_ne!(generate(1, &config).events, generate(2, &config).events);
    }

    #[test]
    fn no_discontinued_means_recent_entries_everywhere() {
        let config = SynthConfig {
            discontinued_fraction: 0.0,
            ..SynthConfig::default()
        };
        let corpus = generate(7, &config)
            .assemble(Some(&shipped_gazetteer()))
            .unwrap()
            .corpus;
        for conf in corpus.conferences.values() {
            let latest = conf
                .events
                .iter()
                .map(|e| e.entry_date.year())
                .max()
                .expect("every series has events");
            // intervals are at most biennial
            assert!(
                latest >= config.end_year - 1,
                "{} last entered {latest}",
                conf.conf_key
            );
        }
    }

    #[test]
    fn generated_rows_round_trip_through_ingest_without_warnings() {
        let outcome = generate(11, &SynthConfig::default())
            .assemble(Some(&shipped_gazetteer()))
            .unwrap();
        assert!(
            outcome.warnings.is_empty(),
            "unexpected warnings: {:?}",
            outcome.warnings
        );
        assert!(!outcome.corpus.conferences.is_empty());
        // every conference is rankable and every event ended up dated
        for conf in outcome.corpus.conferences.values() {
            assert!(conf.is_rankable());
            for event in &conf.events {
                assert!(event.event_date.is_some(), "{} undated", event.event_key);
                assert!(
                    event.country.is_some(),
                    "{} country missing",
                    event.event_key
                );
            }
        }
    }

    #[test]
    fn every_synth_venue_resolves_in_the_shipped_gazetteer() {
        let g = shipped_gazetteer();
        for (city, country, code) in VENUES {
            assert_eq!(
                g.parse_country(&format!("meeting in {city}")),
                Some(code.to_string()),
                "city {city}"
            );
            assert_eq!(
                g.parse_country(&format!("somewhere, {country}")),
                Some(code.to_string()),
                "country {country}"
            );
        }
    }
}
