use thiserror::Error;

/// Errors raised by the algebra, ideal, structure and TRO routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not self-adjoint (asymmetry {asymmetry:.3e})")]
    NotSelfAdjoint { asymmetry: f64 },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("threshold {tau} lies within the gap window of eigenvalue {eigenvalue}")]
    ThresholdInsideSpectrum { tau: f64, eigenvalue: f64 },

    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("invalid matrix data: {0}")]
    InvalidMatrix(String),

    #[error("element {index} is not in the parent space (residual {residual:.3e})")]
    MembershipViolation { index: usize, residual: f64 },

    #[error("closure did not stabilize after {rounds} rounds (dimension {dim})")]
    ClosureDidNotStabilize { rounds: usize, dim: usize },

    #[error("coefficient solve failed (residual {residual:.3e})")]
    CoefficientSolveFailed { residual: f64 },

    #[error("no spectral gap separates the zero cluster")]
    GapNotFound,

    #[error("matrix is not a projection: {0}")]
    NotAProjection(String),

    #[error("matrix is not in the algebra (residual {residual:.3e})")]
    NotInAlgebra { residual: f64 },

    #[error("ideal or submodule is not proper")]
    NotProper,

    #[error("right ideal is not maximal")]
    NotMaximal,

    #[error("algebra has no unit")]
    NotUnital,

    #[error("random central element failed gap detection for {attempts} successive seeds")]
    DegenerateRandomness { attempts: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("zero submodule has no finite-generation certificate")]
    ZeroSubmodule,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("verification failed: {invariant} ({detail})")]
    Verification { invariant: String, detail: String },
}

impl Error {
    pub(crate) fn verification(invariant: &str, detail: impl Into<String>) -> Self {
        Error::Verification {
            invariant: invariant.to_string(),
            detail: detail.into(),
        }
    }

    /// True when the error reports a violated mathematical invariant rather
    /// than bad input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::Verification { .. }
                | Error::CoefficientSolveFailed { .. }
                | Error::GapNotFound
                | Error::DegenerateRandomness { .. }
                | Error::ClosureDidNotStabilize { .. }
                | Error::NumericalFailure(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
