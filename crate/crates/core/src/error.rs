use thiserror::Error;

/// Errors produced anywhere in the pipeline.
///
/// Variants are grouped so the CLI can map them onto exit codes:
/// format/corruption problems (`Pgm`, `Payload`, `CircuitText`) versus
/// violated preconditions and internal invariants.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pgm: {0}")]
    Pgm(String),

    #[error("payload: {0}")]
    Payload(#[from] PayloadError),

    #[error("circuit text, line {line}: {msg}")]
    CircuitText { line: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimensions(String),

    #[error("invalid quantization factor {0} (must be >= 1)")]
    QuantFactor(u32),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("simulator: {0}")]
    Simulator(String),
}

/// Payload-level decoding failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PayloadError {
    #[error("bad magic {0:?}")]
    BadMagic([u8; 4]),
    #[error("unsupported version {0}")]
    Version(u8),
    #[error("unsupported block size {0}")]
    BlockSize(u8),
    #[error("truncated stream")]
    Truncated,
    #[error("field out of range: {0}")]
    OutOfRange(String),
    #[error("count overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
