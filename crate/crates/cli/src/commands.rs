//! Subcommand implementations.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use mta_core::analysis::{compare_pools, periodicity_scan, ComparisonReport};
use mta_core::baseline::{condense_offset_duplicates, random_projection_detect};
use mta_core::engine::{canonical_order, euclidean_distance, within_threshold, MotifPool, MtaConfig};
use mta_core::oracle::{generate_planted, MotifTemplate, PlantSpec};
use mta_core::{run_mta_detailed, TimeSeries};

use crate::args::{Against, AnalyzeArgs, CompareArgs, RunArgs, SynthArgs};
use crate::formats::{
    write_json, AnalysisDoc, ComparisonDoc, ConfigDoc, GroundTruthDoc, MotifsDoc, PeriodicityDoc, PlantedDoc,
    SeriesInfo, SkippedDoc, StatsDoc,
};
use crate::ingest::{load_csv, IngestError};
use crate::plot;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("{module}: {err}", module = module_of(.0), err = .0)]
    Core(mta_core::Error),
    #[error("data: {0}")]
    Data(String),
    #[error("output: cannot write {}: {source}", path.display())]
    Output { path: PathBuf, source: std::io::Error },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(mta_core::Error::InvalidConfig(_) | mta_core::Error::InvalidParams(_)) => 2,
            CliError::Core(mta_core::Error::InvalidAlphabetSize { .. } | mta_core::Error::InvalidTolerance) => 2,
            CliError::Ingest(IngestError::BadDecimation) => 2,
            CliError::Ingest(_) | CliError::Core(_) | CliError::Data(_) | CliError::Output { .. } => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<mta_core::Error> for CliError {
    fn from(e: mta_core::Error) -> Self {
        CliError::Core(e)
    }
}

fn module_of(e: &mta_core::Error) -> &'static str {
    use mta_core::Error::*;
    match e {
        EmptySeries
        | NonFiniteValue { .. }
        | SeriesTooShort { .. }
        | InvalidAlphabetSize { .. }
        | WindowTooLarge { .. } => "preprocess",
        GenerationTooLong { .. }
        | GenerationMismatch { .. }
        | LengthMismatch { .. }
        | EmptyTemplate
        | InvalidConfig(_) => "engine",
        InvalidParams(_) | IndivisibleLength { .. } => "baseline",
        TooFewOccurrences { .. } | InvalidTolerance => "analysis",
        SeriesTooLong { .. } | PlacementFailed { .. } => "oracle",
    }
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Output {
        path: dir.to_path_buf(),
        source,
    })
}

fn write_doc<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    write_json(&path, value).map_err(|source| CliError::Output {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    fs::write(&path, text).map_err(|source| CliError::Output {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

/// Result of one MTA run, with wall time measured by the std clock.
pub struct MtaRun {
    pub series: TimeSeries,
    pub config: MtaConfig,
    pub outcome: mta_core::engine::MtaOutcome,
}

pub fn run_mta_timed(series: TimeSeries, config: MtaConfig) -> Result<MtaRun, CliError> {
    config.validate()?;
    let t0 = Instant::now();
    let outcome = run_mta_detailed(&series, &config, || t0.elapsed().as_millis() as u64)?;
    check_pool(&outcome.pool, &outcome.prepared.values, &config)?;
    Ok(MtaRun {
        series,
        config,
        outcome,
    })
}

/// Re-evaluates every recorded pair against the prepared data.
fn check_pool(pool: &MotifPool, prepared: &[f64], cfg: &MtaConfig) -> Result<(), CliError> {
    for m in pool.iter() {
        if m.occurrences.len() < 2 {
            return Err(CliError::Invariant(format!(
                "motif with fewer than two occurrences at {:?}",
                m.occurrences
            )));
        }
        for p in &m.pairs {
            let len = m.length_points;
            let d = euclidean_distance(&prepared[p.first..p.first + len], &prepared[p.second..p.second + len])?;
            if d.to_bits() != p.distance.to_bits() || !within_threshold(d, len, cfg.threshold, cfg.threshold_mode) {
                return Err(CliError::Invariant(format!(
                    "pair ({}, {}) of length {len} does not reproduce its recorded distance",
                    p.first, p.second
                )));
            }
        }
    }
    Ok(())
}

fn series_info(ts: &TimeSeries) -> SeriesInfo {
    SeriesInfo {
        name: ts.name.clone(),
        length: ts.len(),
    }
}

pub fn cmd_run(args: &RunArgs) -> Result<Vec<PathBuf>, CliError> {
    let series = load_csv(&args.input, &args.source.csv_source())?;
    let run = run_mta_timed(series, args.mta.config())?;
    ensure_dir(&args.out)?;

    let doc = MotifsDoc::new(series_info(&run.series), ConfigDoc::mta(&run.config), &run.outcome.pool);
    let stats = StatsDoc::from(run.outcome.stats);
    let mut written = vec![
        write_doc(&args.out, "motifs.json", &doc)?,
        write_doc(&args.out, "stats.json", &stats)?,
        write_text(&args.out, "series.csv", &plot::series_csv(run.series.values()))?,
    ];
    let title = format!("{}: {} motifs", run.series.name, run.outcome.pool.len());
    written.push(write_text(
        &args.out,
        "plot.gp",
        &plot::gnuplot_script(&title, "series.csv", &run.outcome.pool, args.plot_motifs),
    )?);
    println!(
        "{} motifs over {} generations, {} data accesses, {} ms",
        run.outcome.pool.len(),
        stats.generations,
        stats.data_accesses,
        stats.wall_time_ms
    );
    Ok(written)
}

/// Per-length baseline statistics.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BaselineRun {
    pub motif_length: usize,
    pub candidate_pairs: usize,
    pub confirmed: usize,
    pub condensed: usize,
    pub data_accesses: u64,
}

/// Runs the baseline once per motif length and pools the condensed results.
pub fn baseline_pool(
    series: &TimeSeries,
    args: &crate::args::BaselineArgs,
    mta: &MtaConfig,
) -> Result<(MotifPool, Vec<BaselineRun>), CliError> {
    if args.motif_lengths.is_empty() {
        return Err(CliError::Usage(
            "--motif-length is required when comparing against the baseline".into(),
        ));
    }
    let mut records = Vec::new();
    let mut runs = Vec::new();
    for &length in &args.motif_lengths {
        let params = args.params(length, mta);
        let outcome = random_projection_detect(series, &params)?;
        let condensed = condense_offset_duplicates(&outcome.pool, args.condense_shift.unwrap_or(params.num_symbols));
        runs.push(BaselineRun {
            motif_length: length,
            candidate_pairs: outcome.candidate_pairs.len(),
            confirmed: outcome.pool.len(),
            condensed: condensed.len(),
            data_accesses: outcome.data_accesses,
        });
        records.extend(condensed.into_records());
    }
    records.sort_by(canonical_order);
    Ok((MotifPool::from_records(records), runs))
}

/// Table-style rendering of a comparison.
pub fn comparison_table(doc: &ComparisonDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "reference: {}", doc.reference);
    let _ = writeln!(out, "candidate: {}", doc.candidate);
    let _ = writeln!(
        out,
        "{:>5}  {:>6}  {:>6}  {:>10}  {:>8}  {:>8}  {:>8}  {:>8}",
        "motif", "length", "found", "freq.err", "len.err", "len.%", "loc.err", "loc.%"
    );
    for r in &doc.rows {
        let _ = writeln!(
            out,
            "{:>5}  {:>6}  {:>6}  {:>10}  {:>8}  {:>7.1}%  {:>8}  {:>7.1}%",
            r.motif,
            r.reference_length,
            if r.found { "Yes" } else { "No" },
            r.frequency_error,
            r.length_error,
            r.length_error_pct,
            r.location_error,
            r.location_error_pct
        );
    }
    let t = &doc.totals;
    let _ = writeln!(
        out,
        "found {}/{}; length error {} points ({:.2}% of {}); location error {}",
        t.found,
        t.found + t.missing,
        t.length_error,
        t.length_error_pct,
        t.reference_points,
        t.location_error
    );
    out
}

fn load_pool(path: &Path) -> Result<MotifPool, CliError> {
    if !path.exists() {
        return Err(CliError::Ingest(IngestError::FileNotFound(path.to_path_buf())));
    }
    crate::formats::read_motifs(path)
        .and_then(|doc| doc.pool())
        .map_err(CliError::Data)
}

pub fn cmd_compare(args: &CompareArgs) -> Result<ComparisonReport, CliError> {
    ensure_dir(&args.out)?;
    let (reference_label, candidate_label, reference, candidate, runs) =
        match (&args.reference_pool, &args.candidate_pool) {
            (Some(r), Some(c)) => (
                r.display().to_string(),
                c.display().to_string(),
                load_pool(r)?,
                load_pool(c)?,
                Vec::new(),
            ),
            _ => {
                let input = args
                    .input
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("an input series or two pools are required".into()))?;
                let series = load_csv(input, &args.source.csv_source())?;
                let mta_cfg = args.mta.config();
                match args.against {
                    Against::Baseline => {
                        let (base, runs) = baseline_pool(&series, &args.baseline, &mta_cfg)?;
                        let lengths = args.baseline.motif_lengths.clone();
                        let base_params = args.baseline.params(lengths[0], &mta_cfg);
                        let run = run_mta_timed(series, mta_cfg)?;
                        write_doc(
                            &args.out,
                            "baseline_motifs.json",
                            &MotifsDoc::new(
                                series_info(&run.series),
                                ConfigDoc::baseline(&lengths, run.config.symbol_size, &base_params),
                                &base,
                            ),
                        )?;
                        write_doc(
                            &args.out,
                            "motifs.json",
                            &MotifsDoc::new(series_info(&run.series), ConfigDoc::mta(&run.config), &run.outcome.pool),
                        )?;
                        ("baseline".to_owned(), "mta".to_owned(), base, run.outcome.pool, runs)
                    }
                    Against::Tme => {
                        let ntme_cfg = mta_cfg.clone().with_tme(mta_core::TmePolicy::Ntme);
                        let tme_cfg = mta_cfg.with_tme(mta_core::TmePolicy::Tme);
                        let ntme = run_mta_timed(series.clone(), ntme_cfg)?;
                        let tme = run_mta_timed(series, tme_cfg)?;
                        println!(
                            "data accesses: ntme {} tme {}",
                            ntme.outcome.stats.data_accesses, tme.outcome.stats.data_accesses
                        );
                        (
                            "mta-ntme".to_owned(),
                            "mta-tme".to_owned(),
                            ntme.outcome.pool,
                            tme.outcome.pool,
                            Vec::new(),
                        )
                    }
                }
            }
        };
    let report = compare_pools(&reference, &candidate);
    let doc = ComparisonDoc::new(&reference_label, &candidate_label, &reference, &candidate, &report);
    write_doc(&args.out, "comparison.json", &doc)?;
    let mut table = comparison_table(&doc);
    for r in &runs {
        let _ = writeln!(
            table,
            "baseline length {}: {} candidate pairs, {} confirmed, {} after condensing",
            r.motif_length, r.candidate_pairs, r.confirmed, r.condensed
        );
    }
    if !runs.is_empty() {
        write_doc(&args.out, "baseline_runs.json", &runs)?;
    }
    write_text(&args.out, "comparison.txt", &table)?;
    print!("{table}");
    Ok(report)
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<AnalysisDoc, CliError> {
    if !(args.tolerance > 0.0 && args.tolerance < 1.0) {
        return Err(CliError::Usage("--tolerance must lie strictly between 0 and 1".into()));
    }
    if args.points_per_day.is_some_and(|p| !(p > 0.0 && p.is_finite())) {
        return Err(CliError::Usage("--points-per-day must be positive".into()));
    }
    let pool = load_pool(&args.motifs)?;
    let mut motifs = Vec::new();
    let mut skipped = Vec::new();
    for (k, motif) in pool.iter().enumerate() {
        match periodicity_scan(motif, args.tolerance) {
            Ok(report) => motifs.push(PeriodicityDoc::new(k, motif, &report, args.points_per_day)),
            Err(mta_core::Error::TooFewOccurrences { found, .. }) => {
                eprintln!("warning: motif {} has {found} occurrence(s); skipped", k + 1);
                skipped.push(SkippedDoc {
                    motif: k + 1,
                    reason: format!("{found} occurrence(s), at least 3 needed"),
                });
            }
            Err(e) => return Err(e.into()),
        }
    }
    let doc = AnalysisDoc {
        tolerance: args.tolerance,
        points_per_day: args.points_per_day,
        motifs,
        skipped,
    };
    ensure_dir(&args.out)?;
    write_doc(&args.out, "analysis.json", &doc)?;
    for m in &doc.motifs {
        for a in &m.anomalies {
            println!(
                "motif {} ({} points): expected start {} but next occurrence at {}; window {}..={}",
                m.motif,
                m.length_points,
                a.expected_start,
                a.actual_start.map_or("none".to_owned(), |s| s.to_string()),
                a.gap_window[0],
                a.gap_window[1]
            );
        }
    }
    Ok(doc)
}

/// Deterministic template shape number `k`.
pub fn synth_shape(k: usize, length: usize) -> Vec<f64> {
    let slow = 13.0 + 3.0 * k as f64;
    let fast = 5.0 + k as f64;
    (0..length)
        .map(|i| {
            let t = i as f64;
            10.0 * (t / slow).sin() + 4.0 * (t / fast).cos()
        })
        .collect()
}

pub fn cmd_synth(args: &SynthArgs) -> Result<Vec<PathBuf>, CliError> {
    let spec = PlantSpec {
        series_length: args.length,
        motif_templates: (0..args.templates)
            .map(|k| MotifTemplate {
                shape: synth_shape(k, args.motif_length),
                copies: args.copies,
                noise_std: args.noise,
            })
            .collect(),
        background_std: args.background,
        rng_seed: args.seed,
    };
    let (series, truth) = generate_planted(&spec)?;
    ensure_dir(&args.out)?;
    let mut csv = String::with_capacity(series.len() * 12);
    for v in series.values() {
        let _ = writeln!(csv, "{v}");
    }
    let doc = GroundTruthDoc {
        series_length: args.length,
        seed: args.seed,
        motifs: truth
            .into_iter()
            .map(|t| PlantedDoc {
                starts: t.starts,
                length: t.length,
            })
            .collect(),
    };
    Ok(vec![
        write_text(&args.out, "series.csv", &csv)?,
        write_doc(&args.out, "ground_truth.json", &doc)?,
    ])
}
