//! Tracker population: initialization, stimulation, pruning and growth.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::preprocess::{Alphabet, Symbol};

use super::candidates::CandidateMatrix;

/// A candidate motif signature and its stimulation counter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tracker {
    pub word: Vec<Symbol>,
    pub match_count: usize,
}

/// Trackers kept sorted by word; words are unique.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrackerPool {
    trackers: Vec<Tracker>,
}

impl TrackerPool {
    /// Pool with the given words at count 0; duplicates collapse.
    pub fn from_words<I: IntoIterator<Item = Vec<Symbol>>>(words: I) -> Self {
        let unique: BTreeSet<Vec<Symbol>> = words.into_iter().collect();
        Self {
            trackers: unique
                .into_iter()
                .map(|word| Tracker { word, match_count: 0 })
                .collect(),
        }
    }

    pub fn trackers(&self) -> &[Tracker] {
        &self.trackers
    }

    pub fn len(&self) -> usize {
        self.trackers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trackers.is_empty()
    }

    /// Word length shared by every tracker, or `None` for an empty pool.
    pub fn generation(&self) -> Option<usize> {
        self.trackers.first().map(|t| t.word.len())
    }

    pub(crate) fn trackers_mut(&mut self) -> &mut [Tracker] {
        &mut self.trackers
    }

    /// Keeps trackers with `match_count >= minimum` and resets their counts.
    pub(crate) fn retain_stimulated(self, minimum: usize) -> Self {
        Self {
            trackers: self
                .trackers
                .into_iter()
                .filter(|t| t.match_count >= minimum)
                .map(|t| Tracker { match_count: 0, ..t })
                .collect(),
        }
    }
}

/// One single-symbol tracker per alphabet letter.
pub fn init_trackers(alphabet: &Alphabet) -> TrackerPool {
    TrackerPool::from_words(alphabet.symbols().map(|s| alloc::vec![s]))
}

/// Sets each tracker's count to the number of candidate words exactly equal to it.
pub fn match_trackers(mut pool: TrackerPool, candidates: &CandidateMatrix) -> Result<TrackerPool> {
    if let Some(found) = pool.generation() {
        if found != candidates.generation {
            return Err(Error::GenerationMismatch {
                expected: candidates.generation,
                found,
            });
        }
    }
    let mut counts: BTreeMap<&[Symbol], usize> = BTreeMap::new();
    for w in &candidates.words {
        *counts.entry(w.symbols.as_slice()).or_default() += 1;
    }
    for t in pool.trackers_mut() {
        t.match_count = counts.get(t.word.as_slice()).copied().unwrap_or(0);
    }
    Ok(pool)
}

/// Drops trackers matched fewer than twice; survivors restart at 0.
pub fn prune_unmatched(pool: TrackerPool) -> TrackerPool {
    pool.retain_stimulated(2)
}

/// Drops trackers that no confirmed pair stimulated; survivors restart at 0.
pub fn eliminate_unsuccessful(pool: TrackerPool) -> TrackerPool {
    pool.retain_stimulated(1)
}

/// Clones every tracker once per template symbol and appends that symbol.
/// Parents are not carried over.
pub fn proliferate_mutate(pool: TrackerPool, template: &[Symbol]) -> Result<TrackerPool> {
    if template.is_empty() {
        return Err(Error::EmptyTemplate);
    }
    Ok(TrackerPool::from_words(pool.trackers.iter().flat_map(|t| {
        template.iter().map(move |&c| {
            let mut word = Vec::with_capacity(t.word.len() + 1);
            word.extend_from_slice(&t.word);
            word.push(c);
            word
        })
    })))
}
