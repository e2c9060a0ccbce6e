//! Ground truth: an exhaustive pairwise motif finder and a planted-motif
//! series generator.
//!
//! The brute-force search deliberately ignores trackers and candidate
//! matrices. It reads stride-`s` words straight out of the symbol matrix and
//! compares every pair of starts, so it can check the engine from outside.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::engine::{streamline, DistanceMeter, MotifPool, MotifRecord, MtaConfig, PairMatch};
use crate::error::{Error, Result};
use crate::preprocess::{make_alphabet, symbolize, PreparedSeries, Symbol, TimeSeries};

/// Default ceiling on the prepared length accepted by the quadratic search.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 5_000;

/// Matched pairs for one subsequence length.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthPairs {
    pub length: usize,
    pub pairs: Vec<PairMatch>,
    /// Stride-`s` word of each pair when symbol equality was required.
    pub words: Vec<Option<Vec<Symbol>>>,
}

/// All start pairs `(i, j)`, `i < j`, of each length whose prepared
/// subsequences pass the configured match test. With
/// `require_symbol_equality`, only pairs with identical stride-`s` words
/// are evaluated.
pub fn brute_force_pairs(
    prep: &PreparedSeries,
    lengths: &[usize],
    cfg: &MtaConfig,
    require_symbol_equality: bool,
    cap: usize,
) -> Result<Vec<LengthPairs>> {
    if prep.len() > cap {
        return Err(Error::SeriesTooLong { len: prep.len(), cap });
    }
    cfg.validate()?;
    let alphabet = make_alphabet(cfg.alphabet_size)?;
    let symbols = symbolize(prep, cfg.symbol_size, &alphabet)?;
    let s = cfg.symbol_size;
    let mut meter = DistanceMeter::for_config(cfg);

    let mut out = Vec::with_capacity(lengths.len());
    for &length in lengths {
        if length == 0 || length > prep.len() {
            return Err(Error::WindowTooLarge {
                window: length,
                len: prep.len(),
            });
        }
        let starts = prep.len() - length + 1;
        let word_of = |i: usize| -> Option<Vec<Symbol>> {
            if !require_symbol_equality {
                return None;
            }
            let g = length / s;
            if g == 0 || g * s != length {
                return None;
            }
            symbols.word_at(i, g)
        };
        let words: Vec<Option<Vec<Symbol>>> = (0..starts).map(word_of).collect();

        let mut pairs = Vec::new();
        let mut pair_words = Vec::new();
        for i in 0..starts {
            for j in i + 1..starts {
                if require_symbol_equality {
                    match (&words[i], &words[j]) {
                        (Some(a), Some(b)) if a == b => {}
                        _ => continue,
                    }
                }
                let (distance, matched) = meter.euclidean_match(prep.window(i, length), prep.window(j, length))?;
                if matched {
                    pairs.push(PairMatch {
                        first: i,
                        second: j,
                        distance,
                    });
                    pair_words.push(words[i].clone());
                }
            }
        }
        out.push(LengthPairs {
            length,
            pairs,
            words: pair_words,
        });
    }
    Ok(out)
}

/// Exhaustive motif pool. Matched pairs are grouped by word when symbol
/// equality is required and by connected component otherwise; the
/// resulting records go through the engine's streamlining.
pub fn brute_force_motifs(
    prep: &PreparedSeries,
    lengths: &[usize],
    cfg: &MtaConfig,
    require_symbol_equality: bool,
) -> Result<MotifPool> {
    let per_length = brute_force_pairs(prep, lengths, cfg, require_symbol_equality, DEFAULT_BRUTE_FORCE_CAP)?;
    let mut records = Vec::new();
    for lp in per_length {
        if require_symbol_equality {
            let mut groups: BTreeMap<Vec<Symbol>, Vec<PairMatch>> = BTreeMap::new();
            for (pair, word) in lp.pairs.into_iter().zip(lp.words) {
                groups.entry(word.unwrap_or_default()).or_default().push(pair);
            }
            for (word, pairs) in groups {
                records.push(MotifRecord::from_pairs(word, lp.length, pairs));
            }
        } else {
            records.extend(components(lp.length, lp.pairs));
        }
    }
    Ok(streamline(records))
}

fn components(length: usize, pairs: Vec<PairMatch>) -> Vec<MotifRecord> {
    fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let p = *parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let root = find(parent, p);
        parent.insert(x, root);
        root
    }
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &pairs {
        let (a, b) = (find(&mut parent, p.first), find(&mut parent, p.second));
        if a != b {
            parent.insert(a.max(b), a.min(b));
        }
    }
    let mut groups: BTreeMap<usize, Vec<PairMatch>> = BTreeMap::new();
    for p in pairs {
        let root = find(&mut parent, p.first);
        groups.entry(root).or_default().push(p);
    }
    groups
        .into_values()
        .map(|pairs| MotifRecord::from_pairs(Vec::new(), length, pairs))
        .collect()
}

/// A shape to plant several times.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifTemplate {
    pub shape: Vec<f64>,
    pub copies: usize,
    /// Standard deviation of the Gaussian perturbation added to each copy.
    pub noise_std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantSpec {
    pub series_length: usize,
    pub motif_templates: Vec<MotifTemplate>,
    pub background_std: f64,
    pub rng_seed: u64,
}

/// Where one template's copies landed, in raw-series coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedMotif {
    pub starts: Vec<usize>,
    pub length: usize,
}

const PLACEMENT_ATTEMPTS: usize = 10_000;

/// Gaussian background with non-overlapping perturbed copies of each template.
pub fn generate_planted(spec: &PlantSpec) -> Result<(TimeSeries, Vec<PlantedMotif>)> {
    if spec.series_length < 2 {
        return Err(Error::SeriesTooShort {
            len: spec.series_length,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let mut values: Vec<f64> = match gaussian(spec.background_std) {
        Some(dist) => (0..spec.series_length).map(|_| dist.sample(&mut rng)).collect(),
        None => alloc::vec![0.0; spec.series_length],
    };

    let mut occupied: Vec<(usize, usize)> = Vec::new();
    let mut truth = Vec::with_capacity(spec.motif_templates.len());
    for (index, template) in spec.motif_templates.iter().enumerate() {
        let len = template.shape.len();
        if len == 0 || len > spec.series_length {
            return Err(Error::PlacementFailed { template: index });
        }
        let noise = gaussian(template.noise_std);
        let mut starts = Vec::with_capacity(template.copies);
        for _ in 0..template.copies {
            let mut placed = None;
            for _ in 0..PLACEMENT_ATTEMPTS {
                let start = rng.random_range(0..=spec.series_length - len);
                let end = start + len;
                if occupied.iter().all(|&(s, e)| end <= s || e <= start) {
                    placed = Some(start);
                    break;
                }
            }
            let start = placed.ok_or(Error::PlacementFailed { template: index })?;
            occupied.push((start, start + len));
            for (k, v) in template.shape.iter().enumerate() {
                let jitter = noise.as_ref().map_or(0.0, |d| d.sample(&mut rng));
                values[start + k] = v + jitter;
            }
            starts.push(start);
        }
        starts.sort_unstable();
        truth.push(PlantedMotif { starts, length: len });
    }
    Ok((TimeSeries::new(values, "planted", "synthetic")?, truth))
}

fn gaussian(std: f64) -> Option<Normal<f64>> {
    if std > 0.0 {
        Normal::new(0.0, std).ok()
    } else {
        None
    }
}
