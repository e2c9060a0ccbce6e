//! Candidate matrix generation with trivial match elimination.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::preprocess::{Symbol, SymbolMatrix};

use super::TmePolicy;

/// A generation-`g` word: `g` symbols read from the symbol matrix at stride `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateWord {
    pub symbols: Vec<Symbol>,
    pub start: usize,
    /// Data points covered, `g * s`.
    pub span: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateMatrix {
    pub generation: usize,
    pub words: Vec<CandidateWord>,
    pub tme_policy: TmePolicy,
}

impl CandidateMatrix {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().map(|w| w.start)
    }
}

/// Number of starts that admit a full word of `generation` symbols.
pub fn valid_starts(matrix: &SymbolMatrix, generation: usize) -> usize {
    let reach = (generation.saturating_sub(1)) * matrix.symbol_size;
    matrix.len().saturating_sub(reach)
}

/// Indices of the words kept by trivial match elimination.
///
/// A word is kept when it differs from the last kept word. With
/// `cap = Some(c)`, an identical word is also kept once `c` words in a row
/// have been suppressed; the suppression counter restarts at every kept
/// word. With `cap = None` every repeat is suppressed. The first word is
/// always kept.
pub fn trivial_match_filter<T: PartialEq>(words: &[T], cap: Option<usize>) -> Vec<usize> {
    let mut kept = Vec::new();
    let mut last: Option<&T> = None;
    let mut suppressed = 0usize;
    for (i, word) in words.iter().enumerate() {
        let emit = match last {
            None => true,
            Some(prev) if prev != word => true,
            Some(_) => cap == Some(suppressed),
        };
        if emit {
            kept.push(i);
            last = Some(word);
            suppressed = 0;
        } else {
            suppressed += 1;
        }
    }
    kept
}

/// Builds the generation-`g` candidate matrix in start order.
pub fn build_candidates(matrix: &SymbolMatrix, generation: usize, policy: TmePolicy) -> Result<CandidateMatrix> {
    if generation == 0 {
        return Err(Error::GenerationTooLong { generation });
    }
    let count = valid_starts(matrix, generation);
    if count == 0 {
        return Err(Error::GenerationTooLong { generation });
    }
    let s = matrix.symbol_size;
    let span = generation * s;
    let all: Vec<CandidateWord> = (0..count)
        .map(|start| CandidateWord {
            symbols: (0..generation).map(|k| matrix.symbols[start + k * s]).collect(),
            start,
            span,
        })
        .collect();
    let words = match policy {
        TmePolicy::Ntme => all,
        TmePolicy::Tme => {
            let symbols: Vec<&[Symbol]> = all.iter().map(|w| w.symbols.as_slice()).collect();
            let keep = trivial_match_filter(&symbols, Some(s));
            let mut keep = keep.into_iter().peekable();
            all.into_iter()
                .enumerate()
                .filter_map(|(i, w)| {
                    if keep.peek() == Some(&i) {
                        keep.next();
                        Some(w)
                    } else {
                        None
                    }
                })
                .collect()
        }
    };
    Ok(CandidateMatrix {
        generation,
        words,
        tme_policy: policy,
    })
}
