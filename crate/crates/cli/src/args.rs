//! Command-line definitions.

use std::ops::Range;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mta_core::baseline::BaselineParams;
use mta_core::engine::{MtaConfig, ThresholdMode, TmePolicy};

use crate::ingest::{parse_slice, CsvSource};

#[derive(Debug, Parser)]
#[command(name = "mta", version, about = "Motif discovery in univariate time series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the motif tracking algorithm and write motifs.json, stats.json and plot.gp.
    Run(RunArgs),
    /// Compare motif pools and write comparison.json plus a text table.
    Compare(CompareArgs),
    /// Scan the motifs of a motifs.json file for periodicity anomalies.
    Analyze(AnalyzeArgs),
    /// Generate a planted-motif series with a ground-truth sidecar.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Zero-based column holding the series.
    #[arg(long, default_value_t = 0)]
    pub column: usize,
    /// Keep every k-th row, starting with the first.
    #[arg(long, default_value_t = 1, value_name = "K")]
    pub every: usize,
    /// Keep values START..END of the decimated series.
    #[arg(long, value_name = "START:END", value_parser = parse_slice)]
    pub slice: Option<Range<usize>>,
    /// Ignore the first non-blank row.
    #[arg(long)]
    pub skip_header: bool,
}

impl SourceArgs {
    pub fn csv_source(&self) -> CsvSource {
        CsvSource {
            column: self.column,
            every: self.every,
            slice: self.slice.clone(),
            skip_header: self.skip_header,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    PerPoint,
    PerSqrt,
    Absolute,
}

impl From<ModeArg> for ThresholdMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::PerPoint => ThresholdMode::PerPointLinear,
            ModeArg::PerSqrt => ThresholdMode::PerSqrtLength,
            ModeArg::Absolute => ThresholdMode::Absolute,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct MtaArgs {
    /// Data points per symbol.
    #[arg(long, default_value_t = 10)]
    pub symbol_size: usize,
    #[arg(long, default_value_t = 6)]
    pub alphabet: usize,
    /// Match threshold r.
    #[arg(long, default_value_t = 0.15)]
    pub threshold: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::PerPoint)]
    pub threshold_mode: ModeArg,
    /// Enable trivial match elimination.
    #[arg(long, overrides_with = "no_tme")]
    pub tme: bool,
    /// Disable trivial match elimination (default).
    #[arg(long, overrides_with = "tme")]
    pub no_tme: bool,
    #[arg(long)]
    pub max_generations: Option<usize>,
}

impl MtaArgs {
    pub fn config(&self) -> MtaConfig {
        let policy = if self.tme { TmePolicy::Tme } else { TmePolicy::Ntme };
        MtaConfig::new(self.symbol_size, self.alphabet, self.threshold)
            .with_tme(policy)
            .with_threshold_mode(self.threshold_mode.into())
            .with_max_generations(self.max_generations)
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub mta: MtaArgs,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Motifs highlighted in plot.gp.
    #[arg(long, default_value_t = 10)]
    pub plot_motifs: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BaselineArgs {
    /// Motif lengths for the baseline, e.g. 80,70,60,50,40.
    #[arg(long = "motif-length", value_delimiter = ',')]
    pub motif_lengths: Vec<usize>,
    /// Symbols per motif; defaults to motif length / symbol size.
    #[arg(long)]
    pub num_symbols: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub mask_size: usize,
    #[arg(long, default_value_t = 20)]
    pub iterations: usize,
    #[arg(long, default_value_t = 20)]
    pub cutoff: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Drop every consecutive repeat of a baseline word.
    #[arg(long)]
    pub baseline_tme: bool,
    /// Largest start shift merged when condensing offset duplicates;
    /// defaults to the number of symbols.
    #[arg(long)]
    pub condense_shift: Option<usize>,
}

impl BaselineArgs {
    pub fn params(&self, motif_length: usize, mta: &MtaConfig) -> BaselineParams {
        let num_symbols = self
            .num_symbols
            .unwrap_or_else(|| (motif_length / mta.symbol_size.max(1)).max(1));
        BaselineParams {
            motif_length,
            num_symbols,
            alphabet_size: mta.alphabet_size,
            mask_size: self.mask_size.min(num_symbols),
            projection_iterations: self.iterations,
            cutoff: self.cutoff,
            threshold: mta.threshold,
            threshold_mode: mta.threshold_mode,
            tme_policy: if self.baseline_tme {
                TmePolicy::Tme
            } else {
                TmePolicy::Ntme
            },
            rng_seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Against {
    /// Reference: condensed baseline pool; candidate: MTA pool.
    Baseline,
    /// Reference: MTA without elimination; candidate: MTA with elimination.
    Tme,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Series to run both detectors on; not needed with --reference-pool/--candidate-pool.
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub mta: MtaArgs,
    #[command(flatten)]
    pub baseline: BaselineArgs,
    #[arg(long, value_enum, default_value_t = Against::Baseline)]
    pub against: Against,
    /// Compare two existing motifs.json files instead of running detectors.
    #[arg(long, requires = "candidate_pool")]
    pub reference_pool: Option<PathBuf>,
    #[arg(long, requires = "reference_pool")]
    pub candidate_pool: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    pub motifs: PathBuf,
    /// Allowed deviation from the median interval, as a fraction of it.
    #[arg(long, default_value_t = 0.1)]
    pub tolerance: f64,
    /// Sampling rate used to express gaps in days, e.g. 96 for 15-minute data.
    #[arg(long)]
    pub points_per_day: Option<f64>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 1000)]
    pub length: usize,
    #[arg(long, default_value_t = 1)]
    pub templates: usize,
    #[arg(long, default_value_t = 81)]
    pub motif_length: usize,
    #[arg(long, default_value_t = 3)]
    pub copies: usize,
    /// Standard deviation of the per-copy perturbation.
    #[arg(long, default_value_t = 0.05)]
    pub noise: f64,
    /// Standard deviation of the background noise.
    #[arg(long, default_value_t = 1.0)]
    pub background: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}
