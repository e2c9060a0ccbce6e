//! The motif tracking loop.
//!
//! Each generation presents the stride-`s` words of the current length to
//! the tracker population, keeps the trackers that repeat, confirms them
//! against the prepared data, stores the confirmed motifs and grows the
//! survivors by one symbol. The loop ends when no tracker survives, and the
//! accumulated memory is streamlined into the final pool.

mod candidates;
mod confirm;
mod distance;
mod memory;
mod trackers;

use alloc::vec::Vec;

pub use candidates::{build_candidates, trivial_match_filter, valid_starts, CandidateMatrix, CandidateWord};
pub use confirm::confirm_motifs;
pub use distance::{euclidean_distance, within_threshold, DistanceMeter};
pub use memory::{canonical_order, streamline, MotifPool, MotifRecord, PairMatch};
pub use trackers::{
    eliminate_unsuccessful, init_trackers, match_trackers, proliferate_mutate, prune_unmatched, Tracker, TrackerPool,
};

use crate::error::{Error, Result};
use crate::preprocess::{make_alphabet, prepare, symbolize, PreparedSeries, Symbol, SymbolMatrix, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TmePolicy {
    /// Every start position is presented.
    #[default]
    Ntme,
    /// Consecutive identical words are suppressed, at most `s` in a row.
    Tme,
}

/// How the match threshold scales with subsequence length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThresholdMode {
    /// `distance <= r * n`
    #[default]
    PerPointLinear,
    /// `distance <= r * sqrt(n)`
    PerSqrtLength,
    /// `distance <= r`
    Absolute,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MtaConfig {
    pub symbol_size: usize,
    pub alphabet_size: usize,
    pub threshold: f64,
    pub tme_policy: TmePolicy,
    pub threshold_mode: ThresholdMode,
    pub max_generations: Option<usize>,
}

impl MtaConfig {
    pub fn new(symbol_size: usize, alphabet_size: usize, threshold: f64) -> Self {
        Self {
            symbol_size,
            alphabet_size,
            threshold,
            tme_policy: TmePolicy::Ntme,
            threshold_mode: ThresholdMode::PerPointLinear,
            max_generations: None,
        }
    }

    pub fn with_tme(mut self, policy: TmePolicy) -> Self {
        self.tme_policy = policy;
        self
    }

    pub fn with_threshold_mode(mut self, mode: ThresholdMode) -> Self {
        self.threshold_mode = mode;
        self
    }

    pub fn with_max_generations(mut self, max: Option<usize>) -> Self {
        self.max_generations = max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.symbol_size == 0 {
            return Err(Error::InvalidConfig("symbol size must be at least 1"));
        }
        if !(self.threshold.is_finite() && self.threshold > 0.0) {
            return Err(Error::InvalidConfig("threshold must be a positive finite number"));
        }
        if self.max_generations == Some(0) {
            return Err(Error::InvalidConfig("max generations must be at least 1"));
        }
        make_alphabet(self.alphabet_size).map(|_| ())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunStats {
    /// Generations that presented candidates to a non-empty tracker pool.
    pub generations: usize,
    /// Euclidean evaluations against the prepared series.
    pub data_accesses: u64,
    /// Largest tracker population presented for matching.
    pub trackers_peak: usize,
    pub wall_time_ms: u64,
}

/// Everything a run produces, including the memory before streamlining.
#[derive(Debug, Clone, PartialEq)]
pub struct MtaOutcome {
    pub pool: MotifPool,
    pub stats: RunStats,
    /// Confirmed motifs in the order they were stored.
    pub memory: Vec<MotifRecord>,
    pub prepared: PreparedSeries,
    pub symbols: SymbolMatrix,
}

/// Runs the motif tracking algorithm and returns the streamlined pool.
pub fn run_mta(ts: &TimeSeries, cfg: &MtaConfig) -> Result<(MotifPool, RunStats)> {
    run_mta_detailed(ts, cfg, || 0).map(|o| (o.pool, o.stats))
}

/// Runs the algorithm; `clock` returns milliseconds and is sampled at the
/// start and end of the run to fill `wall_time_ms`.
pub fn run_mta_detailed<C: Fn() -> u64>(ts: &TimeSeries, cfg: &MtaConfig, clock: C) -> Result<MtaOutcome> {
    let started = clock();
    cfg.validate()?;
    let alphabet = make_alphabet(cfg.alphabet_size)?;
    let prepared = prepare(ts)?;
    let symbols = symbolize(&prepared, cfg.symbol_size, &alphabet)?;

    let mut meter = DistanceMeter::for_config(cfg);
    let mut stats = RunStats::default();
    let mut memory = Vec::new();
    let mut pool = init_trackers(&alphabet);
    let mut template: Vec<Symbol> = Vec::new();
    let mut generation = 1usize;

    while !pool.is_empty() {
        if cfg.max_generations.is_some_and(|max| generation > max) {
            break;
        }
        let candidates = match build_candidates(&symbols, generation, cfg.tme_policy) {
            Ok(c) => c,
            Err(Error::GenerationTooLong { .. }) => break,
            Err(e) => return Err(e),
        };
        stats.generations = generation;
        stats.trackers_peak = stats.trackers_peak.max(pool.len());

        let matched = prune_unmatched(match_trackers(pool, &candidates)?);
        if matched.is_empty() {
            break;
        }
        let (found, confirmed) = confirm_motifs(matched, &candidates, &prepared, &mut meter)?;
        let survivors = eliminate_unsuccessful(confirmed);
        memory.extend(found);
        if survivors.is_empty() {
            break;
        }
        if generation == 1 {
            template = survivors.trackers().iter().map(|t| t.word[0]).collect();
        }
        pool = proliferate_mutate(survivors, &template)?;
        generation += 1;
    }

    stats.data_accesses = meter.accesses();
    let pool = streamline(memory.clone());
    stats.wall_time_ms = clock().saturating_sub(started);
    Ok(MtaOutcome {
        pool,
        stats,
        memory,
        prepared,
        symbols,
    })
}
