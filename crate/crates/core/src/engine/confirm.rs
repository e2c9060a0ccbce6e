//! Confirms symbol-level repeats against the prepared data.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Result;
use crate::preprocess::{PreparedSeries, Symbol};

use super::candidates::CandidateMatrix;
use super::distance::DistanceMeter;
use super::memory::{MotifRecord, PairMatch};
use super::trackers::TrackerPool;

/// For every tracker, evaluates all unordered pairs among the candidate
/// words equal to it. A tracker with at least one matched pair is
/// stimulated (its count becomes the number of matched pairs) and yields a
/// motif record; the rest stay at count 0.
pub fn confirm_motifs(
    mut pool: TrackerPool,
    candidates: &CandidateMatrix,
    prep: &PreparedSeries,
    meter: &mut DistanceMeter,
) -> Result<(Vec<MotifRecord>, TrackerPool)> {
    let mut groups: BTreeMap<&[Symbol], Vec<usize>> = BTreeMap::new();
    for w in &candidates.words {
        groups.entry(w.symbols.as_slice()).or_default().push(w.start);
    }
    let span = match candidates.words.first() {
        Some(w) => w.span,
        None => return Ok((Vec::new(), pool)),
    };

    let mut motifs = Vec::new();
    for tracker in pool.trackers_mut() {
        let Some(starts) = groups.get(tracker.word.as_slice()) else {
            continue;
        };
        let mut pairs = Vec::new();
        for (k, &a) in starts.iter().enumerate() {
            let x = prep.window(a, span);
            for &b in &starts[k + 1..] {
                let (distance, matched) = meter.euclidean_match(x, prep.window(b, span))?;
                if matched {
                    pairs.push(PairMatch {
                        first: a,
                        second: b,
                        distance,
                    });
                }
            }
        }
        tracker.match_count = pairs.len();
        if !pairs.is_empty() {
            motifs.push(MotifRecord::from_pairs(tracker.word.clone(), span, pairs));
        }
    }
    Ok((motifs, pool))
}
