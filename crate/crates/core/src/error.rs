use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },

    #[error("matrix is not symmetric: entry ({i},{j}) differs from ({j},{i})")]
    Asymmetric { i: usize, j: usize },

    #[error("form is not unimodular: determinant {det}")]
    NotUnimodular { det: String },

    #[error("form is degenerate: {zeros} zero eigenvalue(s) after diagonalization")]
    Degenerate { zeros: usize },

    #[error("scaling factor must be nonzero")]
    ZeroScale,

    #[error("invalid invariants: {0}")]
    InvalidInvariants(String),

    #[error("even form with signature {signature} not divisible by 8")]
    EvenSignatureNotMultipleOf8 { signature: i64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("cannot compose: inner target differs from outer source")]
    ChainMismatch,

    #[error("degree must be positive")]
    ZeroDegree,

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u64, u64),

    #[error("degree {0} is not supported by this construction")]
    UnsupportedDegree(u64),

    #[error("no orthogonal frame of norm {0} found in E8")]
    FrameNotFound(u64),

    #[error("form is not positive definite")]
    NotPositiveDefinite,

    #[error("degree {0} is not in the guaranteed family")]
    NotGuaranteed(u64),

    #[error("summand allocation infeasible: {0}")]
    AllocationInfeasible(String),

    #[error("linking matrix is not symmetric at ({i},{j})")]
    AsymmetricLinking { i: usize, j: usize },

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("parse error: {0}")]
    Parse(String),
}
