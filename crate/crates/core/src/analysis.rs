//! Pool-to-pool accuracy reports and periodicity anomaly scans.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::engine::{canonical_order, MotifPool, MotifRecord};
use crate::error::{Error, Result};

/// Accuracy of the candidate pool with respect to one reference motif.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub found: bool,
    /// Candidate occurrence count minus reference occurrence count.
    pub frequency_error: i64,
    /// Candidate length minus reference length, in data points.
    pub length_error: i64,
    pub length_error_pct: f64,
    /// Largest start offset over the matched occurrences.
    pub location_error: i64,
    pub location_error_pct: f64,
    /// Index of the matched motif in the candidate pool.
    pub candidate: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComparisonTotals {
    pub found: usize,
    pub missing: usize,
    pub frequency_error: i64,
    pub length_error: i64,
    pub length_error_pct: f64,
    pub location_error: i64,
    pub reference_points: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    pub totals: ComparisonTotals,
}

impl ComparisonReport {
    pub fn is_exact(&self) -> bool {
        self.totals.missing == 0
            && self
                .rows
                .iter()
                .all(|r| r.frequency_error == 0 && r.length_error == 0 && r.location_error == 0)
    }
}

fn overlap(a: usize, a_len: usize, b: usize, b_len: usize) -> usize {
    (a + a_len).min(b + b_len).saturating_sub(a.max(b))
}

/// The candidate occurrence best aligned with `start`: largest overlap,
/// then nearest start, then earliest.
fn best_occurrence(start: usize, len: usize, candidate: &MotifRecord) -> Option<(usize, usize)> {
    candidate
        .occurrences
        .iter()
        .map(|&p| (p, overlap(start, len, p, candidate.length_points)))
        .filter(|&(_, ov)| ov > 0)
        .min_by(|x, y| {
            y.1.cmp(&x.1)
                .then_with(|| x.0.abs_diff(start).cmp(&y.0.abs_diff(start)))
                .then_with(|| x.0.cmp(&y.0))
        })
}

struct Alignment {
    covers_all: bool,
    total_overlap: usize,
    length_gap: usize,
    offset_sum: usize,
    count_gap: usize,
}

fn align(reference: &MotifRecord, candidate: &MotifRecord) -> Alignment {
    let mut covers_all = true;
    let mut total_overlap = 0;
    let mut offset_sum = 0;
    for &o in &reference.occurrences {
        match best_occurrence(o, reference.length_points, candidate) {
            Some((p, ov)) => {
                total_overlap += ov;
                offset_sum += p.abs_diff(o);
            }
            None => covers_all = false,
        }
    }
    Alignment {
        covers_all,
        total_overlap,
        length_gap: reference.length_points.abs_diff(candidate.length_points),
        offset_sum,
        count_gap: reference.occurrences.len().abs_diff(candidate.occurrences.len()),
    }
}

/// Compares each reference motif with its best-overlapping candidate.
///
/// A reference motif is found when one candidate overlaps every one of its
/// occurrences. Among such candidates the one with the largest summed
/// overlap wins, then the closest in length, start offsets and occurrence
/// count; remaining ties go to canonical pool order, so the result does not
/// depend on how either pool is ordered.
pub fn compare_pools(reference: &MotifPool, candidate: &MotifPool) -> ComparisonReport {
    let mut order: Vec<usize> = (0..candidate.len()).collect();
    order.sort_by(|&a, &b| canonical_order(&candidate.motifs()[a], &candidate.motifs()[b]));

    let mut rows = Vec::with_capacity(reference.len());
    let mut totals = ComparisonTotals::default();
    for r in reference.iter() {
        let ref_len = r.length_points as i64;
        let best = order
            .iter()
            .map(|&i| (i, align(r, &candidate.motifs()[i])))
            .filter(|(_, a)| a.covers_all)
            .min_by(|(_, x), (_, y)| {
                y.total_overlap
                    .cmp(&x.total_overlap)
                    .then(x.length_gap.cmp(&y.length_gap))
                    .then(x.offset_sum.cmp(&y.offset_sum))
                    .then(x.count_gap.cmp(&y.count_gap))
                    .then(Ordering::Less)
            });
        let pct = |e: i64| {
            if ref_len == 0 {
                0.0
            } else {
                100.0 * e as f64 / ref_len as f64
            }
        };
        let row = match best {
            Some((index, _)) => {
                let c = &candidate.motifs()[index];
                let location_error = r
                    .occurrences
                    .iter()
                    .filter_map(|&o| best_occurrence(o, r.length_points, c).map(|(p, _)| p.abs_diff(o)))
                    .max()
                    .unwrap_or(0) as i64;
                let length_error = c.length_points as i64 - ref_len;
                ComparisonRow {
                    found: true,
                    frequency_error: c.occurrences.len() as i64 - r.occurrences.len() as i64,
                    length_error,
                    length_error_pct: pct(length_error),
                    location_error,
                    location_error_pct: pct(location_error),
                    candidate: Some(index),
                }
            }
            None => ComparisonRow {
                found: false,
                frequency_error: -(r.occurrences.len() as i64),
                length_error: -ref_len,
                length_error_pct: -100.0,
                location_error: 0,
                location_error_pct: 0.0,
                candidate: None,
            },
        };
        if row.found {
            totals.found += 1;
        } else {
            totals.missing += 1;
        }
        totals.frequency_error += row.frequency_error;
        totals.length_error += row.length_error;
        totals.location_error += row.location_error;
        totals.reference_points += r.length_points;
        rows.push(row);
    }
    if totals.reference_points > 0 {
        totals.length_error_pct = 100.0 * totals.length_error as f64 / totals.reference_points as f64;
    }
    ComparisonReport { rows, totals }
}

/// A break in an otherwise regular repetition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodicityAnomaly {
    /// Start of the occurrence preceding the irregular gap.
    pub previous_start: usize,
    /// Where the next occurrence would start on schedule.
    pub expected_start: usize,
    pub actual_start: Option<usize>,
    /// Inclusive span the on-schedule occurrence would have covered.
    pub gap_window: (usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicityReport {
    pub intervals: Vec<usize>,
    /// Lower median of the intervals.
    pub expected_interval: usize,
    pub anomalies: Vec<PeriodicityAnomaly>,
}

/// Flags gaps between consecutive occurrences that deviate from the median
/// gap by more than `tolerance_frac` of it.
pub fn periodicity_scan(motif: &MotifRecord, tolerance_frac: f64) -> Result<PeriodicityReport> {
    if !(tolerance_frac > 0.0 && tolerance_frac < 1.0) {
        return Err(Error::InvalidTolerance);
    }
    let mut starts = motif.occurrences.clone();
    starts.sort_unstable();
    starts.dedup();
    if starts.len() < 3 {
        return Err(Error::TooFewOccurrences {
            found: starts.len(),
            required: 3,
        });
    }
    let intervals: Vec<usize> = starts.windows(2).map(|w| w[1] - w[0]).collect();
    let mut sorted = intervals.clone();
    sorted.sort_unstable();
    let expected_interval = sorted[(sorted.len() - 1) / 2];
    let limit = tolerance_frac * expected_interval as f64;

    let anomalies = intervals
        .iter()
        .enumerate()
        .filter(|(_, &gap)| (gap as f64 - expected_interval as f64).abs() > limit)
        .map(|(k, _)| {
            let expected_start = starts[k] + expected_interval;
            PeriodicityAnomaly {
                previous_start: starts[k],
                expected_start,
                actual_start: Some(starts[k + 1]),
                gap_window: (expected_start, expected_start + motif.length_points.saturating_sub(1)),
            }
        })
        .collect();
    Ok(PeriodicityReport {
        intervals,
        expected_interval,
        anomalies,
    })
}
