//! Motif Tracking Algorithm: discovery of unknown, variable-length repeating
//! motifs in univariate time series.
//!
//! The series is differenced, normalized and symbolized once. A population
//! of trackers then grows one symbol per generation, matching the
//! stride-`s` words of the series exactly, and every repeat that survives
//! symbol matching is confirmed with a Euclidean distance test. The crate
//! also carries a random-projection baseline, a brute-force oracle, a
//! planted-motif generator and periodicity analysis.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
extern crate alloc;

pub mod analysis;
pub mod baseline;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod preprocess;

pub use engine::{run_mta, run_mta_detailed, MotifPool, MotifRecord, MtaConfig, RunStats, ThresholdMode, TmePolicy};
pub use error::{Error, Result};
pub use preprocess::{PreparedSeries, Symbol, SymbolMatrix, TimeSeries};
