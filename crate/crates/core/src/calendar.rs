//! Month-granular calendar dates and arithmetic.
//!
//! All temporal reasoning in this crate happens on (year, month) pairs;
//! nothing is ever resolved finer than a month.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::DateError;

/// Earliest supported year. Dates below this are rejected.
pub const MIN_YEAR: i32 = 1900;

/// A Gregorian (year, month) pair. Ordered lexicographically by year,
/// then month.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CalendarDate {
    year: i32,
    month: u8,
}

impl CalendarDate {
    /// Builds a date, rejecting months outside 1..=12 and years before
    /// [`MIN_YEAR`].
    pub fn new(year: i32, month: u32) -> Result<Self, DateError> {
        if !(1..=12).contains(&month) {
            return Err(DateError::MonthOutOfRange(month));
        }
        if year < MIN_YEAR {
            return Err(DateError::YearBelowMinimum(year as i64));
        }
        Ok(Self {
            year,
            month: month as u8,
        })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn month(&self) -> u8 {
        self.month
    }

    /// Signed number of months from `earlier` to `self`.
    ///
    /// Antisymmetric: `a.months_since(b) == -b.months_since(a)`.
    pub fn months_since(&self, earlier: CalendarDate) -> i32 {
        (self.year - earlier.year) * 12 + (self.month as i32 - earlier.month as i32)
    }

    /// The date `delta` months later (earlier for negative `delta`).
    /// Fails if the result would fall before [`MIN_YEAR`].
    pub fn plus_months(&self, delta: i32) -> Result<CalendarDate, DateError> {
        let total = self.year as i64 * 12 + (self.month as i64 - 1) + delta as i64;
        let year = total.div_euclid(12);
        let month = total.rem_euclid(12) + 1;
        if year < MIN_YEAR as i64 {
            return Err(DateError::YearBelowMinimum(year));
        }
        Ok(CalendarDate {
            year: year as i32,
            month: month as u8,
        })
    }
}

impl fmt::Display for CalendarDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl FromStr for CalendarDate {
    type Err = DateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = || DateError::Invalid(s.to_string());
        let (y, m) = s.split_once('-').ok_or_else(invalid)?;
        let year: i32 = y.parse().map_err(|_| invalid())?;
        let month: u32 = m.parse().map_err(|_| invalid())?;
        CalendarDate::new(year, month)
    }
}

impl Serialize for CalendarDate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CalendarDate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}
