use thiserror::Error;

/// Broad category of a failure, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input or API misuse.
    Usage,
    /// Arithmetic domain violation (inverse of zero, bad constant term).
    Domain,
    /// Enumeration budget or fixed-width limits.
    Resource,
    /// A mathematical check failed: the data contradicts a theorem-backed
    /// property (non-integral census, integrality violation, no fit).
    Check,
    /// Numerical routine failed to converge.
    Numerical,
    /// Broken internal invariant.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(usize),
    #[error("modulus must be monic and irreducible of degree {degree} over F_{p}")]
    BadModulus { p: u64, degree: usize },
    #[error("operands live in different fields")]
    ContextMismatch,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("cannot embed F_{p}^{from} into F_{target_p}^{target}")]
    BadEmbedding {
        p: u64,
        from: usize,
        target_p: u64,
        target: usize,
    },
    #[error("enumeration of {required} candidates exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("series truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("{op} requires constant term {expected}")]
    ConstantTerm { op: &'static str, expected: &'static str },
    #[error("series order {have} is too small, need at least {needed}")]
    InsufficientOrder { needed: usize, have: usize },
    #[error("no rational function with numerator degree <= {num} and denominator degree <= {den} fits the series")]
    NoRationalFit { num: usize, den: usize },
    #[error("reconstructed coefficient {value} of the {part} at t^{index} is not an integer")]
    IntegralityViolation {
        part: &'static str,
        index: usize,
        value: String,
    },
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("not a smooth projective curve zeta: {0}")]
    NotCurveZeta(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("root finder did not converge after {iterations} iterations (max residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("over F_{{q^{n}}}: {inner}")]
    AtDegree { n: u32, inner: Box<Error> },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotPrime(_)
            | Error::InvalidDegree(_)
            | Error::BadModulus { .. }
            | Error::ContextMismatch
            | Error::BadEmbedding { .. }
            | Error::OrderMismatch { .. }
            | Error::InsufficientOrder { .. }
            | Error::NotApplicable(_)
            | Error::Invalid(_) => ErrorKind::Usage,
            Error::ZeroInverse | Error::ConstantTerm { .. } => ErrorKind::Domain,
            Error::BudgetExceeded { .. } | Error::Overflow(_) => ErrorKind::Resource,
            Error::NoRationalFit { .. }
            | Error::IntegralityViolation { .. }
            | Error::Consistency(_)
            | Error::NotCurveZeta(_) => ErrorKind::Check,
            Error::NoConvergence { .. } => ErrorKind::Numerical,
            Error::Internal(_) => ErrorKind::Internal,
            Error::AtDegree { inner, .. } => inner.kind(),
        }
    }

    /// Short stable tag for machine-readable error lines.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not-prime",
            Error::InvalidDegree(_) => "invalid-degree",
            Error::BadModulus { .. } => "bad-modulus",
            Error::ContextMismatch => "context-mismatch",
            Error::ZeroInverse => "zero-inverse",
            Error::BadEmbedding { .. } => "bad-embedding",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::OrderMismatch { .. } => "order-mismatch",
            Error::ConstantTerm { .. } => "constant-term",
            Error::InsufficientOrder { .. } => "insufficient-order",
            Error::NoRationalFit { .. } => "no-rational-fit",
            Error::IntegralityViolation { .. } => "integrality-violation",
            Error::Consistency(_) => "consistency",
            Error::NotCurveZeta(_) => "not-a-curve-zeta",
            Error::NotApplicable(_) => "not-applicable",
            Error::NoConvergence { .. } => "no-convergence",
            Error::Invalid(_) => "invalid-input",
            Error::Overflow(_) => "overflow",
            Error::Internal(_) => "internal",
            Error::AtDegree { inner, .. } => inner.tag(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
