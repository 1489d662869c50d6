use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("operands carry different t-caps ({0} vs {1})")]
    CapMismatch(u32, u32),
    #[error("division by a series whose leading coefficient is not invertible")]
    SingularDivision,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("conversion error: {0}")]
    Conversion(String),
    #[error("unknown atom {0} for this geometry")]
    UnknownAtom(String),
    #[error("unsupported plethysm: {0}")]
    UnsupportedPlethysm(String),
    #[error("unsupported weight {0}")]
    UnsupportedWeight(u32),
    #[error("singular linear system")]
    Singular,
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("unknown theorem id {0}")]
    UnknownTheorem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
