//! Euclidean confirmation against the prepared series.

use crate::error::{Error, Result};

use super::{MtaConfig, ThresholdMode};

/// Plain Euclidean distance between equal-length subsequences.
pub fn euclidean_distance(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let sum: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(libm::sqrt(sum))
}

/// Threshold test for a distance over `n` points.
pub fn within_threshold(distance: f64, n: usize, threshold: f64, mode: ThresholdMode) -> bool {
    let limit = match mode {
        ThresholdMode::PerPointLinear => threshold * n as f64,
        ThresholdMode::PerSqrtLength => threshold * libm::sqrt(n as f64),
        ThresholdMode::Absolute => threshold,
    };
    distance <= limit
}

/// Counts every distance evaluation made against the underlying series.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMeter {
    threshold: f64,
    mode: ThresholdMode,
    accesses: u64,
}

impl DistanceMeter {
    pub fn new(threshold: f64, mode: ThresholdMode) -> Self {
        Self {
            threshold,
            mode,
            accesses: 0,
        }
    }

    pub fn for_config(cfg: &MtaConfig) -> Self {
        Self::new(cfg.threshold, cfg.threshold_mode)
    }

    /// Distance and match verdict; one data access per call.
    pub fn euclidean_match(&mut self, x: &[f64], y: &[f64]) -> Result<(f64, bool)> {
        let distance = euclidean_distance(x, y)?;
        self.accesses += 1;
        Ok((distance, self.admits(distance, x.len())))
    }

    pub fn admits(&self, distance: f64, n: usize) -> bool {
        within_threshold(distance, n, self.threshold, self.mode)
    }

    pub fn accesses(&self) -> u64 {
        self.accesses
    }
}
