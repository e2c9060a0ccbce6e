//! Confirmed motifs and the memory pool they accumulate into.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::preprocess::Symbol;

/// One confirmed pair of occurrences and their Euclidean distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairMatch {
    pub first: usize,
    pub second: usize,
    pub distance: f64,
}

/// A motif: a symbol word whose underlying data repeats at least once.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifRecord {
    pub word: Vec<Symbol>,
    pub length_points: usize,
    /// Sorted, deduplicated start indices in prepared-series coordinates.
    pub occurrences: Vec<usize>,
    /// Matched pairs in enumeration order, `first < second`.
    pub pairs: Vec<PairMatch>,
}

impl MotifRecord {
    /// Builds a record whose occurrence set is every start incident to a pair.
    pub fn from_pairs(word: Vec<Symbol>, length_points: usize, pairs: Vec<PairMatch>) -> Self {
        let mut occurrences: Vec<usize> = pairs.iter().flat_map(|p| [p.first, p.second]).collect();
        occurrences.sort_unstable();
        occurrences.dedup();
        Self {
            word,
            length_points,
            occurrences,
            pairs,
        }
    }

    pub fn distances(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().map(|p| p.distance)
    }

    pub fn first_occurrence(&self) -> usize {
        self.occurrences.first().copied().unwrap_or(0)
    }

    /// True when every occurrence interval of `self` lies inside some
    /// occurrence interval of `other` and `other` is at least as long.
    pub fn encapsulated_by(&self, other: &MotifRecord) -> bool {
        if other.length_points < self.length_points {
            return false;
        }
        self.occurrences.iter().all(|&o| {
            let end = o + self.length_points;
            other
                .occurrences
                .iter()
                .any(|&p| p <= o && end <= p + other.length_points)
        })
    }

    fn same_identity(&self, other: &MotifRecord) -> bool {
        self.word == other.word && self.occurrences == other.occurrences
    }
}

/// Canonical pool order: longest first, then earliest first occurrence,
/// then more occurrences, then word, then occurrence list.
pub fn canonical_order(a: &MotifRecord, b: &MotifRecord) -> Ordering {
    b.length_points
        .cmp(&a.length_points)
        .then_with(|| a.first_occurrence().cmp(&b.first_occurrence()))
        .then_with(|| b.occurrences.len().cmp(&a.occurrences.len()))
        .then_with(|| a.word.cmp(&b.word))
        .then_with(|| a.occurrences.cmp(&b.occurrences))
}

/// An ordered collection of motif records.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MotifPool {
    motifs: Vec<MotifRecord>,
}

impl MotifPool {
    /// Wraps records as given, without streamlining or reordering.
    pub fn from_records(motifs: Vec<MotifRecord>) -> Self {
        Self { motifs }
    }

    pub fn motifs(&self) -> &[MotifRecord] {
        &self.motifs
    }

    pub fn into_records(self) -> Vec<MotifRecord> {
        self.motifs
    }

    pub fn len(&self) -> usize {
        self.motifs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motifs.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, MotifRecord> {
        self.motifs.iter()
    }
}

impl<'a> IntoIterator for &'a MotifPool {
    type Item = &'a MotifRecord;
    type IntoIter = core::slice::Iter<'a, MotifRecord>;

    fn into_iter(self) -> Self::IntoIter {
        self.motifs.iter()
    }
}

/// Removes duplicate records and records encapsulated within other records.
///
/// Records are visited in canonical order and a record is dropped when an
/// already kept record duplicates or encapsulates it. Anything that
/// encapsulates a record sorts ahead of it, so the result is the same as
/// checking against the whole input, and a second pass changes nothing.
pub fn streamline(motifs: Vec<MotifRecord>) -> MotifPool {
    let mut sorted = motifs;
    sorted.sort_by(canonical_order);
    let mut kept: Vec<MotifRecord> = Vec::with_capacity(sorted.len());
    for record in sorted {
        let absorbed = kept
            .iter()
            .any(|k| k.same_identity(&record) || record.encapsulated_by(k));
        if !absorbed {
            kept.push(record);
        }
    }
    MotifPool { motifs: kept }
}
