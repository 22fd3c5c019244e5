//! Ranking of conference series by how urgently their metadata should be
//! harvested next.
//!
//! A bibliography covering thousands of conference series cannot check
//! every source every night. This crate derives, for each series, how
//! often it runs, when its proceedings usually arrive, and how overdue
//! the next record presumably is, then ranks all series by that urgency.
//! The raw delay score can be weighted by external ratings, venue
//! internationality, a discontinuation penalty, citations per paper, or
//! author prominence. An evaluation harness replays a past year month by
//! month, judging each ranking against graded pseudo-relevance drawn
//! from what actually arrived, with nDCG at cutoffs and paired t-tests
//! against the raw-delay baseline.
//!
//! With the default `parallel` feature, per-conference scoring and the
//! monthly evaluation windows run on rayon; disabling it yields a fully
//! sequential build with identical output.

pub mod calendar;
pub mod corpus;
pub mod error;
pub mod evaluation;
mod exec;
pub mod formats;
pub mod ingest;
pub mod scoring;
pub mod stats;
pub mod synth;
pub mod title;

pub use calendar::CalendarDate;
pub use corpus::{AuthorId, ConfKey, Conference, ConferenceProfile, Corpus, Event, EventKey};
pub use evaluation::{EvalReport, Gain, QrelSet, YearEvaluation};
pub use scoring::{Factor, FactorWeights, RankedList};
