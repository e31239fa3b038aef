use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative valuation: residue undefined")]
    NegativeValuation,
    #[error("polynomial is zero after normalization")]
    NotMonicAfterNormalization,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("operands belong to different algebras")]
    SpecMismatch,
    #[error("norm valuation is indeterminate for these quaternion parameters")]
    IndeterminateNorm,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("wrong algebra kind: {0}")]
    WrongKind(String),
    #[error("matrix is not hermitian")]
    NotHermitian,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element is not symmetric for the involution")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("element is not in the gauge ring")]
    NotInRing,
    #[error("no positive cone containing 1 exists over this ordering")]
    InvalidCone,
    #[error("form is not definite at this ordering")]
    NotDefinite,
    #[error("unsupported variant: {0}")]
    UnsupportedVariant(String),
    #[error("config error at {location}: {msg}")]
    Config { location: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
