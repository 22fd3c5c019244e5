//! Domain model: conference events, conference series, the corpus they
//! live in, and the characteristic profile derived from an event history.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::calendar::CalendarDate;
use crate::error::ProfileError;
use crate::stats::median_int;

macro_rules! string_key {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(
            Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
        )]
        #[serde(transparent)]
        pub struct $name(pub String);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_string())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }
    };
}

string_key!(
    /// Opaque identifier of a conference series.
    ConfKey
);
string_key!(
    /// Opaque identifier of a single conference event (one edition).
    EventKey
);
string_key!(
    /// Opaque identifier of an author.
    AuthorId
);

/// One conference edition as archived in the bibliography.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub event_key: EventKey,
    pub conf_key: ConfKey,
    /// When the event took place. Absent when it could not be extracted;
    /// such events are kept in the corpus but excluded from profiles.
    pub event_date: Option<CalendarDate>,
    /// When the proceedings record first appeared in the database.
    pub entry_date: CalendarDate,
    /// ISO-3166 alpha-2 venue country, when known.
    pub country: Option<String>,
    pub paper_count: u32,
    pub author_ids: BTreeSet<AuthorId>,
    /// Incoming citations to the event's papers, per citation year.
    pub citations_per_year: BTreeMap<i32, u64>,
}

impl Event {
    /// Number of distinct authors.
    pub fn author_count(&self) -> usize {
        self.author_ids.len()
    }
}

/// A conference series: its events plus any external rating values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Conference {
    pub conf_key: ConfKey,
    /// Ordered by event date ascending (undated first), then entry date,
    /// then event key. Maintained by [`Conference::sort_events`].
    pub events: Vec<Event>,
    /// One numeric value per rating list the series appears in. The
    /// default class mapping produces values in 0..=4.
    pub rating_values: Vec<u32>,
}

impl Conference {
    pub fn new(conf_key: ConfKey) -> Self {
        Self {
            conf_key,
            ..Self::default()
        }
    }

    /// Restores the canonical event ordering after mutation.
    pub fn sort_events(&mut self) {
        self.events.sort_by(|a, b| {
            (a.event_date, a.entry_date, &a.event_key).cmp(&(
                b.event_date,
                b.entry_date,
                &b.event_key,
            ))
        });
    }

    /// Events whose record had entered the database by `now`. Later
    /// entries are invisible, which is what makes leave-out snapshots
    /// consistent with live scoring.
    pub fn visible_events(&self, now: CalendarDate) -> impl Iterator<Item = &Event> {
        self.events.iter().filter(move |e| e.entry_date <= now)
    }

    /// Visible events that also carry an event date, in date order.
    pub fn dated_visible_events(&self, now: CalendarDate) -> Vec<&Event> {
        self.visible_events(now)
            .filter(|e| e.event_date.is_some())
            .collect()
    }

    /// Whether the series can be ranked at all: it needs at least one
    /// dated event, whenever entered.
    pub fn is_rankable(&self) -> bool {
        self.events.iter().any(|e| e.event_date.is_some())
    }

    /// Most recent entry date at or before `now`, across all events.
    pub fn latest_entry(&self, now: CalendarDate) -> Option<CalendarDate> {
        self.visible_events(now).map(|e| e.entry_date).max()
    }

    /// Derives the characteristic profile of this series from the events
    /// visible at `now`. See [`ConferenceProfile`].
    pub fn profile_at(&self, now: CalendarDate) -> Result<ConferenceProfile, ProfileError> {
        let dated = self.dated_visible_events(now);
        if dated.is_empty() {
            return Err(ProfileError::Unrankable(self.conf_key.0.clone()));
        }
        // events carrying a date are Some by construction of `dated`
        let event_date = |e: &Event| e.event_date.expect("dated event");

        // up to the five most recent events drive the interval and the
        // entry delay; the mode month looks at the full visible history
        let recent = &dated[dated.len().saturating_sub(5)..];

        let delta_year = if dated.len() == 1 {
            1
        } else {
            let gaps: Vec<i64> = recent
                .windows(2)
                .map(|w| (event_date(w[1]).year() - event_date(w[0]).year()) as i64)
                .collect();
            median_int(&gaps).expect("at least one gap").max(1) as u32
        };

        let mut month_counts = [0u32; 13];
        for e in &dated {
            month_counts[event_date(e).month() as usize] += 1;
        }
        let mode_month = (1..=12)
            .max_by_key(|&m| (month_counts[m as usize], std::cmp::Reverse(m)))
            .expect("twelve months") as u8;

        let delays: Vec<i64> = recent
            .iter()
            .map(|e| e.entry_date.months_since(event_date(e)).max(0) as i64)
            .collect();
        let delta_month = median_int(&delays).expect("at least one event") as u32;

        let latest_event_year = dated
            .iter()
            .map(|e| event_date(e).year())
            .max()
            .expect("non-empty");
        let last_entry_date = dated
            .iter()
            .filter(|e| event_date(e).year() == latest_event_year)
            .map(|e| e.entry_date)
            .max()
            .expect("non-empty");

        Ok(ConferenceProfile {
            delta_year,
            mode_month,
            delta_month,
            last_entry_date,
        })
    }
}

/// Characteristic parameters of a conference series at some reference
/// date: how often it runs, in which month, and how long its proceedings
/// usually take to enter the database.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConferenceProfile {
    /// Typical years between editions; at least 1.
    pub delta_year: u32,
    /// Most frequent event month (ties resolved to the smallest month).
    pub mode_month: u8,
    /// Typical months between an event and its record's entry.
    pub delta_month: u32,
    /// Entry date of the most recent known event.
    pub last_entry_date: CalendarDate,
}

/// The whole data set: conference series plus cumulative per-author
/// record counts used by the prominence factor.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub conferences: BTreeMap<ConfKey, Conference>,
    /// Per author: sorted map year -> records up to and including that
    /// year. Values are monotone non-decreasing in the year.
    pub author_record_counts: BTreeMap<AuthorId, BTreeMap<i32, u64>>,
}

impl Corpus {
    /// Cumulative number of records by `author` up to and including
    /// `year`; 0 for unknown authors.
    pub fn author_records_until(&self, author: &AuthorId, year: i32) -> u64 {
        self.author_record_counts
            .get(author)
            .and_then(|by_year| by_year.range(..=year).next_back())
            .map(|(_, &count)| count)
            .unwrap_or(0)
    }

    /// Conference keys that can be ranked (have at least one dated event).
    pub fn rankable_keys(&self) -> Vec<&ConfKey> {
        self.conferences
            .values()
            .filter(|c| c.is_rankable())
            .map(|c| &c.conf_key)
            .collect()
    }
}
