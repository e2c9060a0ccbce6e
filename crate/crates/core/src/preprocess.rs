//! Series preparation: first differencing, global z-normalization and
//! sliding-window symbolization against equiprobable Gaussian breakpoints.
//!
//! Every sliding window of `s` prepared points is reduced to its mean and
//! mapped to one alphabet symbol, so the resulting [`SymbolMatrix`] holds one
//! single-symbol word per window start.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Smallest supported alphabet.
pub const MIN_ALPHABET: usize = 2;
/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = 20;

/// Population standard deviations below this are treated as a constant input.
const DEGENERATE_STD: f64 = 1e-12;

/// A raw univariate series.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    pub name: String,
    pub source: String,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>, name: impl Into<String>, source: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { index });
        }
        Ok(Self {
            values,
            name: name.into(),
            source: source.into(),
        })
    }

    /// Unnamed series built in memory.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::new(values, "series", "synthetic")
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The differenced, globally z-normalized series the engine works on.
///
/// Prepared index `i` covers the raw interval `[i, i + 1]`, so motif
/// locations reported in prepared coordinates line up with raw starts.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedSeries {
    pub values: Vec<f64>,
    pub offset_shift: usize,
    pub mean_removed: f64,
    pub std_divisor: f64,
    /// Set when the input was constant and normalization collapsed to zeros.
    pub degenerate: bool,
}

impl PreparedSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The `len` prepared values starting at `start`.
    pub fn window(&self, start: usize, len: usize) -> &[f64] {
        &self.values[start..start + len]
    }
}

/// First-order differences of the raw values.
pub fn difference(ts: &TimeSeries) -> Result<Vec<f64>> {
    let values = ts.values();
    if values.len() < 2 {
        return Err(Error::SeriesTooShort { len: values.len() });
    }
    Ok(values.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Global z-normalization with population standard deviation.
///
/// A constant input yields all zeros, `std_divisor == 1` and the degenerate flag.
pub fn z_normalize(diffs: &[f64]) -> PreparedSeries {
    let n = diffs.len().max(1) as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    let std = libm::sqrt(var);
    if std < DEGENERATE_STD {
        return PreparedSeries {
            values: alloc::vec![0.0; diffs.len()],
            offset_shift: 1,
            mean_removed: mean,
            std_divisor: 1.0,
            degenerate: true,
        };
    }
    PreparedSeries {
        values: diffs.iter().map(|x| (x - mean) / std).collect(),
        offset_shift: 1,
        mean_removed: mean,
        std_divisor: std,
        degenerate: false,
    }
}

/// Difference then normalize.
pub fn prepare(ts: &TimeSeries) -> Result<PreparedSeries> {
    Ok(z_normalize(&difference(ts)?))
}

/// One alphabet letter, stored as its zero-based rank (`0` is `'a'`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

impl Symbol {
    pub fn from_index(index: usize) -> Self {
        debug_assert!(index < MAX_ALPHABET);
        Symbol(index as u8)
    }

    pub fn from_char(c: char) -> Option<Self> {
        let c = c as u32;
        let a = 'a' as u32;
        if c >= a && c < a + MAX_ALPHABET as u32 {
            Some(Symbol((c - a) as u8))
        } else {
            None
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn to_char(self) -> char {
        (b'a' + self.0) as char
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Renders a symbol string such as `"cbec"`.
pub fn word_to_string(word: &[Symbol]) -> String {
    word.iter().map(|s| s.to_char()).collect()
}

/// Parses a symbol string; `None` on any character outside `a..=t`.
pub fn word_from_str(text: &str) -> Option<Vec<Symbol>> {
    text.chars().map(Symbol::from_char).collect()
}

/// Equiprobable Gaussian breakpoints for an alphabet of `size` letters.
#[derive(Debug, Clone, PartialEq)]
pub struct Alphabet {
    size: usize,
    breakpoints: Vec<f64>,
}

impl Alphabet {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.size).map(Symbol::from_index)
    }

    /// Maps a value to the symbol whose half-open interval `[β_{k-1}, β_k)`
    /// contains it; a value equal to a breakpoint takes the higher symbol.
    pub fn symbol_for(&self, value: f64) -> Symbol {
        Symbol::from_index(self.breakpoints.partition_point(|b| *b <= value))
    }
}

pub fn make_alphabet(size: usize) -> Result<Alphabet> {
    if !(MIN_ALPHABET..=MAX_ALPHABET).contains(&size) {
        return Err(Error::InvalidAlphabetSize { size });
    }
    let a = size as f64;
    let mut breakpoints = alloc::vec![0.0; size - 1];
    for k in 1..size {
        // upper half mirrors the lower half so antisymmetry is exact
        breakpoints[k - 1] = if 2 * k < size {
            inverse_normal_cdf(k as f64 / a)
        } else if 2 * k == size {
            0.0
        } else {
            -inverse_normal_cdf((size - k) as f64 / a)
        };
    }
    Ok(Alphabet { size, breakpoints })
}

/// Standard normal cumulative distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}

/// Inverse standard normal CDF for `0 < p < 1`.
///
/// Rational approximation (Acklam) followed by one Halley step against
/// `erfc`, which brings the error to roughly machine precision.
pub fn inverse_normal_cdf(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.024_25;

    debug_assert!(p > 0.0 && p < 1.0);
    let x = if p < P_LOW {
        let q = libm::sqrt(-2.0 * libm::log(p));
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = libm::sqrt(-2.0 * libm::log(1.0 - p));
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };

    let e = normal_cdf(x) - p;
    let u = e * libm::sqrt(2.0 * core::f64::consts::PI) * libm::exp(x * x / 2.0);
    x - u / (1.0 + x * u / 2.0)
}

/// One symbol per sliding-window start over the prepared series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolMatrix {
    pub symbols: Vec<Symbol>,
    pub symbol_size: usize,
    pub prepared_len: usize,
}

impl SymbolMatrix {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The stride-`s` word of `generation` symbols starting at `start`, if it fits.
    pub fn word_at(&self, start: usize, generation: usize) -> Option<Vec<Symbol>> {
        let last = start + (generation.checked_sub(1)?) * self.symbol_size;
        if last >= self.symbols.len() {
            return None;
        }
        Some(
            (0..generation)
                .map(|k| self.symbols[start + k * self.symbol_size])
                .collect(),
        )
    }
}

/// Slides a window of `symbol_size` points one step at a time and maps
/// each window mean to a symbol.
pub fn symbolize(prep: &PreparedSeries, symbol_size: usize, alphabet: &Alphabet) -> Result<SymbolMatrix> {
    if symbol_size == 0 {
        return Err(Error::InvalidConfig("symbol size must be at least 1"));
    }
    if symbol_size > prep.len() {
        return Err(Error::WindowTooLarge {
            window: symbol_size,
            len: prep.len(),
        });
    }
    let s = symbol_size as f64;
    let symbols = prep
        .values
        .windows(symbol_size)
        .map(|w| alphabet.symbol_for(w.iter().sum::<f64>() / s))
        .collect();
    Ok(SymbolMatrix {
        symbols,
        symbol_size,
        prepared_len: prep.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    fn ts(values: &[f64]) -> TimeSeries {
        TimeSeries::from_values(values.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_series() {
        assert_eq!(TimeSeries::from_values(vec![]), Err(Error::EmptySeries));
        assert_eq!(
            TimeSeries::from_values(vec![1.0, f64::NAN]),
            Err(Error::NonFiniteValue { index: 1 })
        );
    }

    #[test]
    fn difference_examples() {
        assert_eq!(difference(&ts(&[1.0, 3.0, 2.0, 2.0])).unwrap(), vec![2.0, -1.0, 0.0]);
        assert_eq!(difference(&ts(&[5.0; 4])).unwrap(), vec![0.0; 3]);
        assert_eq!(difference(&ts(&[1.0])), Err(Error::SeriesTooShort { len: 1 }));
    }

    #[test]
    fn z_normalize_examples() {
        let p = z_normalize(&[0.0, 0.0, 0.0]);
        assert!(p.degenerate);
        assert_eq!(p.values, vec![0.0; 3]);
        assert_eq!(p.std_divisor, 1.0);

        let p = z_normalize(&[-1.0, 1.0]);
        assert!(!p.degenerate);
        assert_eq!(p.values, vec![-1.0, 1.0]);

        // hand computation: mean 1/3, population std sqrt(14/9)
        let p = z_normalize(&[2.0, -1.0, 0.0]);
        let std = libm::sqrt(14.0 / 9.0);
        let expected = [(2.0 - 1.0 / 3.0) / std, (-1.0 - 1.0 / 3.0) / std, (-1.0 / 3.0) / std];
        for (got, want) in p.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
        let mean: f64 = p.values.iter().sum::<f64>() / 3.0;
        let var: f64 = p.values.iter().map(|v| v * v).sum::<f64>() / 3.0;
        assert!(mean.abs() < 1e-9 && (var - 1.0).abs() < 1e-9);
    }

    #[test]
    fn alphabet_examples() {
        assert_eq!(make_alphabet(2).unwrap().breakpoints(), &[0.0]);
        let a4 = make_alphabet(4).unwrap();
        let want = [-0.674_489_75, 0.0, 0.674_489_75];
        for (got, want) in a4.breakpoints().iter().zip(want) {
            assert!((got - want).abs() < 1e-3);
        }
        let a6 = make_alphabet(6).unwrap();
        assert!((a6.breakpoints()[1] + 0.43).abs() < 5e-3);
        assert!((a6.breakpoints()[3] - 0.43).abs() < 5e-3);
        assert_eq!(make_alphabet(1), Err(Error::InvalidAlphabetSize { size: 1 }));
        assert_eq!(make_alphabet(21), Err(Error::InvalidAlphabetSize { size: 21 }));
    }

    #[test]
    fn breakpoint_quantiles_and_symmetry() {
        for size in MIN_ALPHABET..=MAX_ALPHABET {
            let alpha = make_alphabet(size).unwrap();
            let b = alpha.breakpoints();
            assert_eq!(b.len(), size - 1);
            for k in 1..size {
                assert!((normal_cdf(b[k - 1]) - k as f64 / size as f64).abs() < 1e-6);
                assert!((b[k - 1] + b[size - 1 - k]).abs() < 1e-9);
            }
            assert!(b.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn tie_goes_to_higher_symbol() {
        let a6 = make_alphabet(6).unwrap();
        assert_eq!(a6.symbol_for(0.0).to_char(), 'd');
        let b = a6.breakpoints()[0];
        assert_eq!(a6.symbol_for(b).to_char(), 'b');
        assert_eq!(a6.symbol_for(-100.0).to_char(), 'a');
        assert_eq!(a6.symbol_for(100.0).to_char(), 'f');
    }

    #[test]
    fn boundary_means_straddle_point_43() {
        let a6 = make_alphabet(6).unwrap();
        assert_eq!(a6.symbol_for(0.433622).to_char(), 'e');
        assert_eq!(a6.symbol_for(0.410164).to_char(), 'd');
    }

    #[test]
    fn symbolize_examples() {
        let a6 = make_alphabet(6).unwrap();
        let zeros = z_normalize(&[0.0; 30]);
        let sm = symbolize(&zeros, 10, &a6).unwrap();
        assert_eq!(sm.len(), 21);
        assert!(sm.symbols.iter().all(|s| s.to_char() == 'd'));

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let raw: Vec<f64> = (0..201).map(|_| StandardNormal.sample(&mut rng)).collect();
        let prep = prepare(&ts(&raw)).unwrap();
        assert_eq!(prep.len(), 200);
        assert_eq!(symbolize(&prep, 10, &a6).unwrap().len(), 191);

        assert_eq!(
            symbolize(&prep, 201, &a6),
            Err(Error::WindowTooLarge { window: 201, len: 200 })
        );
    }

    #[test]
    fn symbols_uniform_on_gaussian_input() {
        // chi-square critical values at alpha = 0.001 for df = a - 1
        let cases = [(4usize, 16.266), (6, 20.515), (10, 27.877)];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (size, critical) in cases {
            let alpha = make_alphabet(size).unwrap();
            let values: Vec<f64> = (0..10_000).map(|_| StandardNormal.sample(&mut rng)).collect();
            let prep = PreparedSeries {
                values,
                offset_shift: 1,
                mean_removed: 0.0,
                std_divisor: 1.0,
                degenerate: false,
            };
            let sm = symbolize(&prep, 1, &alpha).unwrap();
            let mut counts = vec![0usize; size];
            for s in &sm.symbols {
                counts[s.index()] += 1;
            }
            let expected = 10_000.0 / size as f64;
            let chi2: f64 = counts
                .iter()
                .map(|&c| (c as f64 - expected) * (c as f64 - expected) / expected)
                .sum();
            assert!(chi2 < critical, "a={size} chi2={chi2}");
        }
    }

    #[test]
    fn word_text_roundtrip() {
        let w = word_from_str("cbec").unwrap();
        assert_eq!(word_to_string(&w), "cbec");
        assert!(word_from_str("cbz").is_none());
    }
}
