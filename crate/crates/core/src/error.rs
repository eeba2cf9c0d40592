use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system {family}{rank}")]
    InvalidRootSystem { family: char, rank: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes under specialization")]
    SpecializationPole,

    #[error("denominator vanishes at the evaluation point")]
    EvaluationPole,

    #[error("exponent {0} is not representable in the parameter exponent lattice")]
    UnrepresentableExponent(String),

    #[error("weight {0} is not antidominant")]
    NotAntidominant(String),

    #[error("index {0} is not a minuscule (diagram automorphism) index")]
    NotMinuscule(usize),

    #[error("operation requires a root system of type A, got {0}")]
    RequiresTypeA(String),

    #[error("polynomial in y is not W-invariant")]
    NotInvariant,

    #[error("operator does not preserve Laurent polynomials: non-exact division")]
    NotPolynomial,

    #[error("coefficient is not regular at the origin")]
    NotRegular,

    #[error("eigenvalues collide for weights {0} and {1}")]
    EigenvalueCollision(String, String),

    #[error("operator matrix is not triangular in dominance order")]
    NotTriangular,

    #[error("shift class set must be non-empty")]
    EmptyClassSet,

    #[error("{0} is not a root length of this system")]
    UnknownLengthClass(String),

    #[error("weight {0} does not lie in B_- after the shift")]
    ShiftOutOfRange(String),

    #[error("singular linear system")]
    SingularSystem,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
