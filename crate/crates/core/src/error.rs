use alloc::string::String;
use core::fmt;

/// Errors produced by spec construction, codecs, kernels, and mean operators.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A generating radix was below 2.
    InvalidRadix { position: usize, radix: u32 },
    /// Fewer radices were supplied than the requested resolution.
    TooFewRadices { needed: usize, available: usize },
    /// The quotient order M_N would exceed the configured cap.
    ResolutionTooLarge { cap: u64 },
    /// An integer index fell outside `0..bound`.
    IndexOutOfRange { value: u64, bound: u64 },
    /// A digit exceeded the radix at its position.
    DigitOutOfRange {
        position: usize,
        digit: u32,
        radix: u32,
    },
    /// A digit vector had the wrong length for the spec.
    LengthMismatch { expected: usize, got: usize },
    /// Two operands belong to different group specs.
    SpecMismatch,
    /// A coset-family pair (k, l) violated 0 <= k < l <= depth.
    InvalidCosetPair { k: usize, l: usize, depth: usize },
    /// A coset depth exceeded the spec resolution.
    DepthOutOfRange { depth: usize, resolution: usize },
    /// The structured index q_A needs M_{2A}, which the resolution lacks.
    QIndexOutOfRange { index: usize, resolution: usize },
    /// The Fejér kernel of order zero is undefined.
    UndefinedKernel,
    /// A kernel order fell below the block order the statement requires.
    KernelOrderTooSmall { n: u64, minimum: u64 },
    /// A maximal-operator truncation bound below M_N is unsound.
    TruncationUnsound { n_max: u64, required: u64 },
    /// The spec resolution is too small for the requested construction.
    ResolutionInsufficient { needed: usize, available: usize },
    /// A function could not be lifted: the target spec does not extend its own.
    NotAnEmbedding,
    /// A tabulated weight broke monotonicity or dipped below one.
    InvalidWeightTable { position: usize },
    /// A radix-sequence token failed to parse.
    ParseRadix { token: String },
    /// An internal consistency verification failed.
    ConsistencyFailure { check: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRadix { position, radix } => {
                write!(f, "radix {radix} at position {position} is below 2")
            }
            Error::TooFewRadices { needed, available } => {
                write!(
                    f,
                    "resolution {needed} requested but only {available} radices given"
                )
            }
            Error::ResolutionTooLarge { cap } => {
                write!(f, "quotient order exceeds the cap of {cap} points")
            }
            Error::IndexOutOfRange { value, bound } => {
                write!(f, "index {value} outside 0..{bound}")
            }
            Error::DigitOutOfRange {
                position,
                digit,
                radix,
            } => {
                write!(
                    f,
                    "digit {digit} at position {position} exceeds radix {radix}"
                )
            }
            Error::LengthMismatch { expected, got } => {
                write!(f, "expected {expected} digits, got {got}")
            }
            Error::SpecMismatch => write!(f, "operands belong to different group specs"),
            Error::InvalidCosetPair { k, l, depth } => {
                write!(
                    f,
                    "coset family needs 0 <= k < l <= depth, got k={k} l={l} depth={depth}"
                )
            }
            Error::DepthOutOfRange { depth, resolution } => {
                write!(f, "coset depth {depth} exceeds resolution {resolution}")
            }
            Error::QIndexOutOfRange { index, resolution } => {
                write!(
                    f,
                    "q_{index} needs resolution above {}, have {resolution}",
                    2 * index
                )
            }
            Error::UndefinedKernel => write!(f, "the Fejér kernel of order 0 is undefined"),
            Error::KernelOrderTooSmall { n, minimum } => {
                write!(f, "kernel order {n} below required minimum {minimum}")
            }
            Error::TruncationUnsound { n_max, required } => {
                write!(
                    f,
                    "maximal truncation at {n_max} is unsound below {required}"
                )
            }
            Error::ResolutionInsufficient { needed, available } => {
                write!(
                    f,
                    "construction needs resolution {needed}, spec has {available}"
                )
            }
            Error::NotAnEmbedding => write!(f, "target spec does not extend the source spec"),
            Error::InvalidWeightTable { position } => {
                write!(f, "weight table invalid at position {position}")
            }
            Error::ParseRadix { token } => write!(f, "cannot parse radix token {token:?}"),
            Error::ConsistencyFailure { check } => {
                write!(f, "internal consistency check failed: {check}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
