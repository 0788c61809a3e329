use thiserror::Error;

/// Errors produced by word handling, channel simulation, code membership
/// tests, decoders, and verification sweeps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("symbol {symbol} out of range for alphabet of size {q}")]
    SymbolOutOfRange { symbol: u64, q: u64 },

    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u64),

    #[error("alphabet mismatch: expected q={expected}, got q={got}")]
    AlphabetMismatch { expected: u64, got: u64 },

    #[error("expected word length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("position {pos} outside valid range [{lo}, {hi}]")]
    PositionOutOfRange { pos: usize, lo: usize, hi: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("not in the image of the lifting map: {0}")]
    NotInLiftImage(String),

    #[error("decoding failed: {0}")]
    DecodeFailure(String),

    /// Two or more distinct codewords explain the same corrupted word. This
    /// can only happen when the ball-disjointness guarantee of the code is
    /// violated, so surfacing it loudly is deliberate.
    #[error("ambiguous decoding: {0}")]
    AmbiguousDecode(String),

    #[error("enumeration of {needed} words exceeds the configured cap of {cap}")]
    EnumerationCapExceeded { needed: u128, cap: u128 },

    #[error("cannot parse {input:?}: {reason}")]
    ParseError { input: String, reason: String },

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),
}

pub type Result<T> = std::result::Result<T, CodeError>;
