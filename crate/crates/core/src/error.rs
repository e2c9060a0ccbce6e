use core::fmt;

/// Errors produced by the motif tracking library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The raw series has no values.
    EmptySeries,
    /// A raw value is NaN or infinite.
    NonFiniteValue {
        index: usize,
    },
    /// Differencing needs at least two raw values.
    SeriesTooShort {
        len: usize,
    },
    InvalidAlphabetSize {
        size: usize,
    },
    /// The symbol window is larger than the prepared series.
    WindowTooLarge {
        window: usize,
        len: usize,
    },
    /// No candidate word of the requested generation fits in the symbol matrix.
    GenerationTooLong {
        generation: usize,
    },
    GenerationMismatch {
        expected: usize,
        found: usize,
    },
    LengthMismatch {
        left: usize,
        right: usize,
    },
    EmptyTemplate,
    InvalidConfig(&'static str),
    InvalidParams(&'static str),
    /// A subsequence cannot be split into equal frames.
    IndivisibleLength {
        len: usize,
        frames: usize,
    },
    TooFewOccurrences {
        found: usize,
        required: usize,
    },
    InvalidTolerance,
    SeriesTooLong {
        len: usize,
        cap: usize,
    },
    PlacementFailed {
        template: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptySeries => write!(f, "time series is empty"),
            Error::NonFiniteValue { index } => {
                write!(f, "time series value at index {index} is not finite")
            }
            Error::SeriesTooShort { len } => {
                write!(f, "time series has {len} value(s), at least 2 are required")
            }
            Error::InvalidAlphabetSize { size } => {
                write!(f, "alphabet size {size} is outside the supported range 2..=20")
            }
            Error::WindowTooLarge { window, len } => write!(
                f,
                "symbol window of {window} points exceeds prepared series length {len}"
            ),
            Error::GenerationTooLong { generation } => write!(
                f,
                "no candidate word of generation {generation} fits in the symbol matrix"
            ),
            Error::GenerationMismatch { expected, found } => write!(
                f,
                "tracker word length {found} does not match candidate generation {expected}"
            ),
            Error::LengthMismatch { left, right } => {
                write!(f, "subsequence lengths differ ({left} vs {right})")
            }
            Error::EmptyTemplate => write!(f, "mutation template is empty"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::InvalidParams(msg) => write!(f, "invalid baseline parameters: {msg}"),
            Error::IndivisibleLength { len, frames } => {
                write!(f, "subsequence length {len} is not divisible into {frames} frames")
            }
            Error::TooFewOccurrences { found, required } => {
                write!(f, "motif has {found} occurrence(s), at least {required} are required")
            }
            Error::InvalidTolerance => write!(f, "tolerance must lie strictly between 0 and 1"),
            Error::SeriesTooLong { len, cap } => {
                write!(f, "series of length {len} exceeds the brute-force cap of {cap}")
            }
            Error::PlacementFailed { template } => {
                write!(f, "could not place all copies of template {template} without overlap")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
