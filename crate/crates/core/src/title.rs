//! Extraction of event dates and venue countries from proceedings titles.
//!
//! Proceedings titles conventionally end with "City, Country, Month
//! Day-Day, Year", so for both the date and the country the last match in
//! the title wins. Parsing is total: anything unparseable simply yields
//! `None`.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::calendar::CalendarDate;
use crate::error::IngestError;

const MONTHS: [&str; 12] = [
    "january",
    "february",
    "march",
    "april",
    "may",
    "june",
    "july",
    "august",
    "september",
    "october",
    "november",
    "december",
];

/// How far (in characters) a 4-digit year may start after the end of a
/// month name and still be read as that month's year.
const YEAR_WINDOW: usize = 12;

/// Years outside this range are treated as ordinary numbers.
const YEAR_RANGE: std::ops::RangeInclusive<i32> = 1900..=2100;

/// Extracts the event date from a proceedings title.
///
/// A date is an English month name (full or 3-letter abbreviation)
/// followed within 12 characters by a 4-digit year; the last such
/// occurrence in the title wins. Day ranges like "June 12-15, 2016"
/// resolve to the month that names them.
pub fn parse_event_date(title: &str) -> Option<CalendarDate> {
    let lower = title.to_lowercase();
    let bytes = lower.as_bytes();
    let mut best: Option<(usize, u32, i32)> = None;

    for (start, end, word) in alphabetic_words(&lower) {
        let Some(month) = month_of(word) else {
            continue;
        };
        // the year may start up to YEAR_WINDOW characters past the name
        let window_end = (end + YEAR_WINDOW + 1).min(bytes.len());
        if let Some(year) = first_year_in(bytes, end, window_end)
            && best.is_none_or(|(s, _, _)| start >= s)
        {
            best = Some((start, month, year));
        }
    }
    best.and_then(|(_, month, year)| CalendarDate::new(year, month).ok())
}

fn month_of(word: &str) -> Option<u32> {
    MONTHS
        .iter()
        .position(|m| *m == word || (word.len() == 3 && m.starts_with(word)))
        .map(|i| i as u32 + 1)
}

/// First standalone 4-digit number whose first digit lies in
/// `from..window_end`, read to its full extent.
fn first_year_in(bytes: &[u8], from: usize, window_end: usize) -> Option<i32> {
    let mut i = from;
    while i < window_end {
        if bytes[i].is_ascii_digit() {
            if i > 0 && bytes[i - 1].is_ascii_digit() {
                i += 1;
                continue;
            }
            let mut j = i;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j - i == 4 {
                let year: i32 = std::str::from_utf8(&bytes[i..j]).ok()?.parse().ok()?;
                if YEAR_RANGE.contains(&year) {
                    return Some(year);
                }
            }
            i = j;
        } else {
            i += 1;
        }
    }
    None
}

/// Yields (byte_start, byte_end, word) for each maximal alphabetic run.
fn alphabetic_words(s: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in s.char_indices() {
        if ch.is_alphabetic() {
            start.get_or_insert(i);
        } else if let Some(st) = start.take() {
            spans.push((st, i, &s[st..i]));
        }
    }
    if let Some(st) = start {
        spans.push((st, s.len(), &s[st..]));
    }
    spans.into_iter()
}

/// Country and city name tables for venue extraction.
///
/// Loaded from a tab-separated file (`kind<TAB>name<TAB>code`, kind one
/// of `country` / `city`, `#` comments) so coverage can grow without a
/// rebuild. Lookups are case-insensitive and whole-word; for homonym
/// cities the first file entry wins.
#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    country_names: HashMap<String, String>,
    city_to_country: HashMap<String, String>,
}

impl Gazetteer {
    pub fn from_reader<R: Read>(file: &str, reader: R) -> Result<Self, IngestError> {
        let mut gazetteer = Gazetteer::default();
        for (idx, line) in BufReader::new(reader).lines().enumerate() {
            let line = line.map_err(|source| IngestError::Io {
                file: file.to_string(),
                source,
            })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split('\t');
            let (kind, name, code) = match (fields.next(), fields.next(), fields.next()) {
                (Some(k), Some(n), Some(c)) => (k, n, c),
                _ => {
                    return Err(IngestError::Malformed {
                        file: file.to_string(),
                        line: idx + 1,
                        reason: "expected kind<TAB>name<TAB>code".to_string(),
                    });
                }
            };
            let name = name.trim().to_lowercase();
            let code = code.trim().to_uppercase();
            let table = match kind {
                "country" => &mut gazetteer.country_names,
                "city" => &mut gazetteer.city_to_country,
                other => {
                    return Err(IngestError::Malformed {
                        file: file.to_string(),
                        line: idx + 1,
                        reason: format!("unknown kind {other:?}, expected country or city"),
                    });
                }
            };
            // first entry wins on duplicates
            table.entry(name).or_insert(code);
        }
        Ok(gazetteer)
    }

    pub fn from_path(path: &Path) -> Result<Self, IngestError> {
        let file = path.display().to_string();
        let reader = std::fs::File::open(path).map_err(|source| IngestError::Io {
            file: file.clone(),
            source,
        })?;
        Self::from_reader(&file, reader)
    }

    pub fn len(&self) -> usize {
        self.country_names.len() + self.city_to_country.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Extracts the venue country from a title: the last whole-word
    /// country-name match wins; failing that, the last city match.
    pub fn parse_country(&self, title: &str) -> Option<String> {
        let lower = title.to_lowercase();
        self.last_match(&lower, &self.country_names)
            .or_else(|| self.last_match(&lower, &self.city_to_country))
    }

    fn last_match(&self, lower: &str, table: &HashMap<String, String>) -> Option<String> {
        let mut best: Option<(usize, usize, &String)> = None;
        for (name, code) in table {
            for (pos, _) in lower.match_indices(name.as_str()) {
                if !is_word_bounded(lower, pos, pos + name.len()) {
                    continue;
                }
                // later start wins; same start, longer name wins
                let candidate = (pos, name.len(), code);
                if best.is_none_or(|(p, l, _)| (pos, name.len()) >= (p, l)) {
                    best = Some(candidate);
                }
            }
        }
        best.map(|(_, _, code)| code.clone())
    }
}

fn is_word_bounded(s: &str, start: usize, end: usize) -> bool {
    let before = s[..start].chars().next_back();
    let after = s[end..].chars().next();
    before.is_none_or(|c| !c.is_alphanumeric()) && after.is_none_or(|c| !c.is_alphanumeric())
}
