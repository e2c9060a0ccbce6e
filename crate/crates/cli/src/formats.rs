//! JSON artifacts: `motifs.json`, `stats.json`, `comparison.json` and
//! `analysis.json`.
//!
//! Field order is fixed by the struct definitions and every real number is
//! rounded to 6 significant digits before it is written, so loading a file
//! and writing it back reproduces it byte for byte.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};

use mta_core::analysis::{ComparisonReport, PeriodicityReport};
use mta_core::baseline::BaselineParams;
use mta_core::engine::{MotifPool, MotifRecord, MtaConfig, PairMatch, RunStats, ThresholdMode, TmePolicy};
use mta_core::preprocess::{word_from_str, word_to_string};

/// Rounds to 6 significant digits.
pub fn round_sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

fn sig6<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig6(*x))
}

fn sig6_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| round_sig6(*x)))
}

fn sig6_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig6(*v)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeName {
    PerPoint,
    PerSqrt,
    Absolute,
}

impl From<ThresholdMode> for ModeName {
    fn from(m: ThresholdMode) -> Self {
        match m {
            ThresholdMode::PerPointLinear => ModeName::PerPoint,
            ThresholdMode::PerSqrtLength => ModeName::PerSqrt,
            ThresholdMode::Absolute => ModeName::Absolute,
        }
    }
}

impl From<ModeName> for ThresholdMode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::PerPoint => ThresholdMode::PerPointLinear,
            ModeName::PerSqrt => ThresholdMode::PerSqrtLength,
            ModeName::Absolute => ThresholdMode::Absolute,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TmeName {
    Ntme,
    Tme,
}

impl From<TmePolicy> for TmeName {
    fn from(p: TmePolicy) -> Self {
        match p {
            TmePolicy::Ntme => TmeName::Ntme,
            TmePolicy::Tme => TmeName::Tme,
        }
    }
}

impl From<TmeName> for TmePolicy {
    fn from(p: TmeName) -> Self {
        match p {
            TmeName::Ntme => TmePolicy::Ntme,
            TmeName::Tme => TmePolicy::Tme,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesInfo {
    pub name: String,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "snake_case")]
pub enum ConfigDoc {
    Mta {
        symbol_size: usize,
        alphabet_size: usize,
        #[serde(serialize_with = "sig6")]
        threshold: f64,
        threshold_mode: ModeName,
        tme_policy: TmeName,
        max_generations: Option<usize>,
    },
    Baseline {
        motif_lengths: Vec<usize>,
        symbol_size: usize,
        alphabet_size: usize,
        mask_size: usize,
        projection_iterations: usize,
        cutoff: usize,
        #[serde(serialize_with = "sig6")]
        threshold: f64,
        threshold_mode: ModeName,
        tme_policy: TmeName,
        seed: u64,
    },
}

impl ConfigDoc {
    pub fn mta(cfg: &MtaConfig) -> Self {
        ConfigDoc::Mta {
            symbol_size: cfg.symbol_size,
            alphabet_size: cfg.alphabet_size,
            threshold: cfg.threshold,
            threshold_mode: cfg.threshold_mode.into(),
            tme_policy: cfg.tme_policy.into(),
            max_generations: cfg.max_generations,
        }
    }

    pub fn baseline(lengths: &[usize], symbol_size: usize, p: &BaselineParams) -> Self {
        ConfigDoc::Baseline {
            motif_lengths: lengths.to_vec(),
            symbol_size,
            alphabet_size: p.alphabet_size,
            mask_size: p.mask_size,
            projection_iterations: p.projection_iterations,
            cutoff: p.cutoff,
            threshold: p.threshold,
            threshold_mode: p.threshold_mode.into(),
            tme_policy: p.tme_policy.into(),
            seed: p.rng_seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotifDoc {
    pub word: String,
    pub length_points: usize,
    pub occurrences: Vec<usize>,
    #[serde(serialize_with = "sig6_vec")]
    pub distances: Vec<f64>,
    /// Start pairs behind `distances`, index for index.
    #[serde(default)]
    pub pairs: Vec<[usize; 2]>,
}

impl MotifDoc {
    pub fn from_record(r: &MotifRecord) -> Self {
        Self {
            word: word_to_string(&r.word),
            length_points: r.length_points,
            occurrences: r.occurrences.clone(),
            distances: r.distances().collect(),
            pairs: r.pairs.iter().map(|p| [p.first, p.second]).collect(),
        }
    }

    pub fn to_record(&self) -> Result<MotifRecord, String> {
        let word = word_from_str(&self.word).ok_or_else(|| format!("invalid motif word {:?}", self.word))?;
        if !self.pairs.is_empty() && self.pairs.len() != self.distances.len() {
            return Err(format!(
                "motif {:?} lists {} pairs but {} distances",
                self.word,
                self.pairs.len(),
                self.distances.len()
            ));
        }
        let pairs = self
            .pairs
            .iter()
            .zip(&self.distances)
            .map(|(&[first, second], &distance)| PairMatch {
                first,
                second,
                distance,
            })
            .collect();
        let mut occurrences = self.occurrences.clone();
        occurrences.sort_unstable();
        occurrences.dedup();
        Ok(MotifRecord {
            word,
            length_points: self.length_points,
            occurrences,
            pairs,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotifsDoc {
    pub series: SeriesInfo,
    pub config: ConfigDoc,
    pub motifs: Vec<MotifDoc>,
}

impl MotifsDoc {
    pub fn new(series: SeriesInfo, config: ConfigDoc, pool: &MotifPool) -> Self {
        Self {
            series,
            config,
            motifs: pool.iter().map(MotifDoc::from_record).collect(),
        }
    }

    pub fn pool(&self) -> Result<MotifPool, String> {
        Ok(MotifPool::from_records(
            self.motifs.iter().map(MotifDoc::to_record).collect::<Result<_, _>>()?,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsDoc {
    pub generations: usize,
    pub data_accesses: u64,
    pub trackers_peak: usize,
    pub wall_time_ms: u64,
}

impl From<RunStats> for StatsDoc {
    fn from(s: RunStats) -> Self {
        Self {
            generations: s.generations,
            data_accesses: s.data_accesses,
            trackers_peak: s.trackers_peak,
            wall_time_ms: s.wall_time_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRowDoc {
    /// 1-based position in the reference pool.
    pub motif: usize,
    pub reference_word: String,
    pub reference_length: usize,
    pub reference_occurrences: Vec<usize>,
    pub found: bool,
    pub frequency_error: i64,
    pub length_error: i64,
    #[serde(serialize_with = "sig6")]
    pub length_error_pct: f64,
    pub location_error: i64,
    #[serde(serialize_with = "sig6")]
    pub location_error_pct: f64,
    pub candidate_occurrences: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTotalsDoc {
    pub found: usize,
    pub missing: usize,
    pub frequency_error: i64,
    pub length_error: i64,
    #[serde(serialize_with = "sig6")]
    pub length_error_pct: f64,
    pub location_error: i64,
    pub reference_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonDoc {
    pub reference: String,
    pub candidate: String,
    pub rows: Vec<ComparisonRowDoc>,
    pub totals: ComparisonTotalsDoc,
}

impl ComparisonDoc {
    pub fn new(
        reference_label: &str,
        candidate_label: &str,
        reference: &MotifPool,
        candidate: &MotifPool,
        report: &ComparisonReport,
    ) -> Self {
        let rows = report
            .rows
            .iter()
            .zip(reference.iter())
            .enumerate()
            .map(|(k, (row, r))| ComparisonRowDoc {
                motif: k + 1,
                reference_word: word_to_string(&r.word),
                reference_length: r.length_points,
                reference_occurrences: r.occurrences.clone(),
                found: row.found,
                frequency_error: row.frequency_error,
                length_error: row.length_error,
                length_error_pct: row.length_error_pct,
                location_error: row.location_error,
                location_error_pct: row.location_error_pct,
                candidate_occurrences: row.candidate.map(|i| candidate.motifs()[i].occurrences.clone()),
            })
            .collect();
        let t = &report.totals;
        Self {
            reference: reference_label.to_owned(),
            candidate: candidate_label.to_owned(),
            rows,
            totals: ComparisonTotalsDoc {
                found: t.found,
                missing: t.missing,
                frequency_error: t.frequency_error,
                length_error: t.length_error,
                length_error_pct: t.length_error_pct,
                location_error: t.location_error,
                reference_points: t.reference_points,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnomalyDoc {
    pub previous_start: usize,
    pub expected_start: usize,
    pub actual_start: Option<usize>,
    pub gap_window: [usize; 2],
    /// Delay of the actual start past the expected one, in days.
    #[serde(serialize_with = "sig6_opt")]
    pub delay_days: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicityDoc {
    /// 1-based position in the motif pool.
    pub motif: usize,
    pub word: String,
    pub length_points: usize,
    pub occurrences: Vec<usize>,
    pub intervals: Vec<usize>,
    pub expected_interval: usize,
    #[serde(serialize_with = "sig6_opt")]
    pub expected_interval_days: Option<f64>,
    pub anomalies: Vec<AnomalyDoc>,
}

impl PeriodicityDoc {
    pub fn new(index: usize, motif: &MotifRecord, report: &PeriodicityReport, points_per_day: Option<f64>) -> Self {
        let days = |points: f64| points_per_day.map(|ppd| points / ppd);
        Self {
            motif: index + 1,
            word: word_to_string(&motif.word),
            length_points: motif.length_points,
            occurrences: motif.occurrences.clone(),
            intervals: report.intervals.clone(),
            expected_interval: report.expected_interval,
            expected_interval_days: days(report.expected_interval as f64),
            anomalies: report
                .anomalies
                .iter()
                .map(|a| AnomalyDoc {
                    previous_start: a.previous_start,
                    expected_start: a.expected_start,
                    actual_start: a.actual_start,
                    gap_window: [a.gap_window.0, a.gap_window.1],
                    delay_days: a.actual_start.and_then(|s| days(s as f64 - a.expected_start as f64)),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedDoc {
    pub motif: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisDoc {
    #[serde(serialize_with = "sig6")]
    pub tolerance: f64,
    #[serde(serialize_with = "sig6_opt")]
    pub points_per_day: Option<f64>,
    pub motifs: Vec<PeriodicityDoc>,
    pub skipped: Vec<SkippedDoc>,
}

/// Ground truth written next to a synthetic series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruthDoc {
    pub series_length: usize,
    pub seed: u64,
    pub motifs: Vec<PlantedDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedDoc {
    pub starts: Vec<usize>,
    pub length: usize,
}

/// Pretty JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let text = to_canonical_json(value).map_err(std::io::Error::other)?;
    fs::write(path, text)
}

pub fn read_motifs(path: &Path) -> Result<MotifsDoc, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}
