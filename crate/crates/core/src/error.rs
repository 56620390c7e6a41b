use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },

    #[error("variable index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("zero denominator at position {position}")]
    ZeroDenominator { position: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkew { row: usize, col: usize },

    #[error("degree bound violated: {0}")]
    DegreeMismatch(String),

    #[error("vector field is not homogeneous Kolmogorov on the sphere")]
    NotHomogeneous,

    #[error("hypersurface `{0}` is not invariant")]
    NotInvariant(String),

    #[error("cofactor `{0}` is not of the form k0 + sum k_i x_i^2")]
    UnstructuredCofactor(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("radius {0} is not allowed (must differ from 0, 1 and -1)")]
    BadRadius(String),

    #[error("input is not a syzygy of the pure powers")]
    NotASyzygy,

    #[error("all hyperplane coefficients a_1..a_n+1 are zero")]
    AllZeroCoefficients,

    #[error("seed skew matrix is zero")]
    ZeroSeed,

    #[error("independence hypothesis fails for index {index}: rank {rank} < {expected}")]
    HypothesisFailed {
        index: usize,
        rank: usize,
        expected: usize,
    },

    #[error("odd dimension {0}; Hamiltonian fields live in even dimension")]
    OddDimension(usize),

    #[error("non-finite state at step {step}")]
    NonFinite { step: usize },

    #[error("|f_{surface}| fell below the floor at step {step}")]
    DomainViolation { step: usize, surface: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
    /// A certification check found a counterexample.
    #[error("{0}")]
    CheckFailed(String),
}
