//! Random-projection motif detection with locally normalized SAX words.
//!
//! Every subsequence of a fixed motif length is z-normalized on its own,
//! reduced to `num_symbols` frame means and symbolized. Each projection
//! round hashes the words on a random subset of symbol positions and
//! counts collisions per pair; pairs that collide in at least `cutoff`
//! rounds are confirmed with the same Euclidean test the engine uses.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{
    canonical_order, trivial_match_filter, DistanceMeter, MotifPool, MotifRecord, PairMatch, ThresholdMode, TmePolicy,
};
use crate::error::{Error, Result};
use crate::preprocess::{make_alphabet, prepare, Alphabet, Symbol, TimeSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineParams {
    pub motif_length: usize,
    pub num_symbols: usize,
    pub alphabet_size: usize,
    /// Symbol positions hashed per projection round.
    pub mask_size: usize,
    pub projection_iterations: usize,
    /// Minimum collision count for a pair to be confirmed.
    pub cutoff: usize,
    pub threshold: f64,
    pub threshold_mode: ThresholdMode,
    /// `Tme` drops every consecutive repeat of a word, with no cap.
    pub tme_policy: TmePolicy,
    pub rng_seed: u64,
}

impl BaselineParams {
    /// Settings matching an MTA run with symbol size `symbol_size`: one
    /// symbol per `symbol_size` points, mask of up to 4, 20 rounds, cutoff 20.
    pub fn for_length(motif_length: usize, symbol_size: usize, alphabet_size: usize, threshold: f64) -> Self {
        let num_symbols = (motif_length / symbol_size.max(1)).max(1);
        Self {
            motif_length,
            num_symbols,
            alphabet_size,
            mask_size: num_symbols.min(4),
            projection_iterations: 20,
            cutoff: 20,
            threshold,
            threshold_mode: ThresholdMode::PerPointLinear,
            tme_policy: TmePolicy::Ntme,
            rng_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_symbols == 0 || self.motif_length == 0 {
            return Err(Error::InvalidParams(
                "motif length and number of symbols must be positive",
            ));
        }
        if !self.motif_length.is_multiple_of(self.num_symbols) {
            return Err(Error::InvalidParams(
                "motif length must be divisible by the number of symbols",
            ));
        }
        if self.mask_size == 0 || self.mask_size > self.num_symbols {
            return Err(Error::InvalidParams("mask size must lie in 1..=num_symbols"));
        }
        if self.projection_iterations == 0 || self.cutoff == 0 || self.cutoff > self.projection_iterations {
            return Err(Error::InvalidParams("cutoff must lie in 1..=projection_iterations"));
        }
        if !(self.threshold.is_finite() && self.threshold > 0.0) {
            return Err(Error::InvalidParams("threshold must be a positive finite number"));
        }
        make_alphabet(self.alphabet_size).map(|_| ())
    }
}

/// Locally normalized SAX word of one subsequence.
pub fn local_sax(subseq: &[f64], num_symbols: usize, alphabet: &Alphabet) -> Result<Vec<Symbol>> {
    if num_symbols == 0 || subseq.is_empty() || !subseq.len().is_multiple_of(num_symbols) {
        return Err(Error::IndivisibleLength {
            len: subseq.len(),
            frames: num_symbols,
        });
    }
    let n = subseq.len() as f64;
    let mean = subseq.iter().sum::<f64>() / n;
    let std = libm::sqrt(subseq.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n);
    let frame = subseq.len() / num_symbols;
    Ok(subseq
        .chunks(frame)
        .map(|chunk| {
            let paa = if std < 1e-12 {
                0.0
            } else {
                chunk.iter().map(|x| (x - mean) / std).sum::<f64>() / frame as f64
            };
            alphabet.symbol_for(paa)
        })
        .collect())
}

/// Sparse symmetric collision counts keyed by `(low, high)` start pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CollisionMatrix {
    counts: BTreeMap<(usize, usize), usize>,
}

impl CollisionMatrix {
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.counts.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }

    fn bump(&mut self, a: usize, b: usize) {
        *self.counts.entry((a.min(b), a.max(b))).or_default() += 1;
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Pairs whose count reaches `cutoff`, in ascending order.
    pub fn candidates(&self, cutoff: usize) -> Vec<(usize, usize)> {
        self.counts
            .iter()
            .filter(|(_, &c)| c >= cutoff)
            .map(|(&k, _)| k)
            .collect()
    }
}

/// Runs the projection rounds over `(start, word)` entries. Pairs whose
/// subsequences overlap (`|a - b| < motif_length`) are never counted.
pub fn collision_matrix(entries: &[(usize, Vec<Symbol>)], params: &BaselineParams) -> CollisionMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let mut matrix = CollisionMatrix::default();
    for _ in 0..params.projection_iterations {
        let mut mask = index::sample(&mut rng, params.num_symbols, params.mask_size).into_vec();
        mask.sort_unstable();
        let mut buckets: BTreeMap<Vec<Symbol>, Vec<usize>> = BTreeMap::new();
        for (start, word) in entries {
            let key = mask.iter().map(|&p| word[p]).collect();
            buckets.entry(key).or_default().push(*start);
        }
        for starts in buckets.values() {
            for (k, &a) in starts.iter().enumerate() {
                for &b in &starts[k + 1..] {
                    if a.abs_diff(b) >= params.motif_length {
                        matrix.bump(a, b);
                    }
                }
            }
        }
    }
    matrix
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineOutcome {
    /// One record per confirmed pair, in pair order.
    pub pool: MotifPool,
    pub collisions: CollisionMatrix,
    pub candidate_pairs: Vec<(usize, usize)>,
    pub data_accesses: u64,
}

/// Local SAX words of every subsequence of `motif_length` that also fits
/// within the prepared series, after the configured trivial match rule.
pub fn baseline_words(ts: &TimeSeries, params: &BaselineParams) -> Result<Vec<(usize, Vec<Symbol>)>> {
    params.validate()?;
    let alphabet = make_alphabet(params.alphabet_size)?;
    let prepared_len = ts.len().saturating_sub(1);
    if params.motif_length > prepared_len {
        return Err(Error::WindowTooLarge {
            window: params.motif_length,
            len: prepared_len,
        });
    }
    let raw = ts.values();
    let all = (0..=prepared_len - params.motif_length)
        .map(|i| {
            Ok((
                i,
                local_sax(&raw[i..i + params.motif_length], params.num_symbols, &alphabet)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match params.tme_policy {
        TmePolicy::Ntme => all,
        TmePolicy::Tme => {
            let words: Vec<&Vec<Symbol>> = all.iter().map(|(_, w)| w).collect();
            let keep = trivial_match_filter(&words, None);
            keep.into_iter().map(|i| all[i].clone()).collect()
        }
    })
}

pub fn random_projection_detect(ts: &TimeSeries, params: &BaselineParams) -> Result<BaselineOutcome> {
    let entries = baseline_words(ts, params)?;
    let prepared = prepare(ts)?;
    let collisions = collision_matrix(&entries, params);
    let candidate_pairs = collisions.candidates(params.cutoff);

    let words: BTreeMap<usize, &Vec<Symbol>> = entries.iter().map(|(i, w)| (*i, w)).collect();
    let mut meter = DistanceMeter::new(params.threshold, params.threshold_mode);
    let mut records = Vec::new();
    for &(a, b) in &candidate_pairs {
        let len = params.motif_length;
        let (distance, matched) = meter.euclidean_match(prepared.window(a, len), prepared.window(b, len))?;
        if matched {
            let pair = PairMatch {
                first: a,
                second: b,
                distance,
            };
            records.push(MotifRecord::from_pairs(words[&a].clone(), len, alloc::vec![pair]));
        }
    }
    Ok(BaselineOutcome {
        pool: MotifPool::from_records(records),
        collisions,
        candidate_pairs,
        data_accesses: meter.accesses(),
    })
}

/// Collapses motifs that are the same pattern seen at slightly shifted
/// starts. Records join a cluster when their occurrence offsets are
/// identical and their first starts differ by at most `max_shift` from a
/// neighbour in the cluster. Each cluster keeps its lowest-distance member,
/// breaking ties by earliest start.
pub fn condense_offset_duplicates(pool: &MotifPool, max_shift: usize) -> MotifPool {
    let mut by_shape: BTreeMap<(usize, Vec<usize>), Vec<&MotifRecord>> = BTreeMap::new();
    for r in pool.iter() {
        let first = r.first_occurrence();
        let shape = r.occurrences.iter().map(|o| o - first).collect();
        by_shape.entry((r.length_points, shape)).or_default().push(r);
    }
    let mut kept = Vec::new();
    for mut members in by_shape.into_values() {
        members.sort_by_key(|r| r.first_occurrence());
        let mut cluster: Vec<&MotifRecord> = Vec::new();
        for r in members {
            if let Some(last) = cluster.last() {
                if r.first_occurrence() - last.first_occurrence() > max_shift {
                    kept.push(best_of(&cluster).clone());
                    cluster.clear();
                }
            }
            cluster.push(r);
        }
        if !cluster.is_empty() {
            kept.push(best_of(&cluster).clone());
        }
    }
    kept.sort_by(canonical_order);
    MotifPool::from_records(kept)
}

fn best_of<'a>(cluster: &[&'a MotifRecord]) -> &'a MotifRecord {
    let score = |r: &MotifRecord| r.distances().fold(f64::INFINITY, f64::min);
    cluster
        .iter()
        .copied()
        .min_by(|a, b| {
            score(a)
                .total_cmp(&score(b))
                .then_with(|| a.first_occurrence().cmp(&b.first_occurrence()))
        })
        .expect("cluster is non-empty")
}
