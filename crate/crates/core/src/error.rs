use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("literal {0:?} has an even denominator")]
    EvenDenominator(String),

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("polynomial is not Eisenstein at 2: {0}")]
    NotEisenstein(String),

    #[error("ramification index {0} is not supported (1..={max})", max = crate::field::MAX_E)]
    UnsupportedDegree(usize),

    #[error("unit residue known to {have} digits, {need} required")]
    InsufficientPrecision { have: u32, need: u32 },

    #[error("operation needs a nonzero element")]
    ZeroElement,

    #[error("gram matrix is degenerate")]
    Degenerate,

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("vector has zero norm")]
    ZeroNorm,

    #[error("vector is not a primitive element of the lattice")]
    NotPrimitive,

    #[error("expected rank {expected}, got {got}")]
    RankError { expected: usize, got: usize },

    #[error("lattices have different ranks ({0} and {1})")]
    RankMismatch(usize, usize),

    #[error("lattices live over different fields")]
    FieldMismatch,

    #[error("field mismatch: method {method} needs e = 1, field has e = {e}")]
    MethodFieldMismatch { method: String, e: usize },

    #[error("symbols have different R-vectors")]
    RMismatch,

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("unknown method {0:?}")]
    UnknownMethod(String),

    #[error("internal verification failed: {0}")]
    InternalVerificationFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
