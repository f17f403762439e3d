use thiserror::Error;

/// Errors raised by the workbench operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("empty word not allowed here")]
    EmptyWord,
    #[error("word {0:?} is not in the language of the subshift")]
    NotInLanguage(String),
    #[error("invalid range: lo {lo} > hi {hi}")]
    InvalidRange { lo: i64, hi: i64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("empty graph")]
    EmptyGraph,
    #[error("word too short for sliding block code: need at least {needed} symbols, got {got}")]
    WordTooShort { needed: usize, got: usize },
    #[error("unknown zoo shift {0:?}")]
    UnknownZoo(String),
    #[error("invalid sigma spec: {0}")]
    InvalidSigma(String),
    #[error("invalid subshift: {0}")]
    InvalidSubshift(String),
    #[error("operation requires a one-dimensional subshift")]
    NotOneDimensional,
    #[error("operation requires a multidimensional subshift of finite type")]
    NotZd,
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not certified at depth {depth}: {reason}")]
    NotCertified { depth: usize, reason: String },
    #[error("no stabilizing minimizer found within depth {0}")]
    Unstable(usize),
    #[error("gluing search exhausted at length cap {0}")]
    GluingExhausted(usize),
    #[error("periodicization output failed verification: {0}")]
    VerificationFailed(String),
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
    #[error("invalid measure spec: {0}")]
    InvalidMeasure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
