use thiserror::Error;

/// Which of the three period-domain constraints failed on ingested data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaConstraint {
    /// `ω·h = 0`
    HyperplanePairing,
    /// `ω·ω = 0`
    SelfPairing,
    /// `ω·ω̄ > 0`
    Positivity,
}

impl std::fmt::Display for OmegaConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OmegaConstraint::HyperplanePairing => "omega.h = 0",
            OmegaConstraint::SelfPairing => "omega.omega = 0",
            OmegaConstraint::Positivity => "omega.conj(omega) > 0",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree underflow: operation needs a polynomial of positive degree")]
    DegreeUnderflow,
    #[error("degree {degree} is below the minimum {minimum}")]
    DegreeTooLow { degree: u32, minimum: u32 },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("the quartic defines a singular surface (degree-12 slice not in the Jacobian ideal)")]
    SingularSurface,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precision too low: {0}")]
    PrecisionTooLow(String),
    #[error("lattice is not even: diagonal entry {index} is odd")]
    NotEven { index: usize },
    #[error("lattice is not unimodular: determinant {det}")]
    NotUnimodular { det: String },
    #[error("lattice has signature ({pos},{neg}), expected (3,19)")]
    WrongSignature { pos: usize, neg: usize },
    #[error("hyperplane class has h.h = {0}, expected 4")]
    WrongHSquare(i64),
    #[error("invalid Noether-Lefschetz index: {0}")]
    InvalidIndex(String),
    #[error("dimension ledger inconsistency: {0}")]
    LedgerInconsistency(String),
    #[error("coefficient {index} of the theta combination is not divisible by 2^22")]
    DivisibilityViolation { index: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("period data violates {0}")]
    OmegaConstraintViolated(OmegaConstraint),
    #[error("divisor chain violated at index {index}")]
    ChainViolation { index: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
