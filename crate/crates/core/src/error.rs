use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("zero denominator in rational literal")]
    DivByZero,
    #[error("polynomial degree {0} is too low")]
    DegreeTooLow(usize),
    #[error("prime {0} divides a denominator or the leading coefficient")]
    BadPrime(u64),
    #[error("the zero polynomial has no normal form")]
    ZeroPolynomial,
    #[error("polynomial is not irreducible over Q: {0}")]
    NotIrreducible(String),
    #[error("field is not cyclic Galois: {0}")]
    NotGalois(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree must be at least 2, got {0}")]
    BadDegree(usize),
    #[error("closed-form splitting matrix is singular")]
    SingularPhi,
    #[error("no invertible averaged matrix after {0} attempts")]
    ExhaustedRetries(usize),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("elements do not form a basis")]
    NotABasis,
    #[error("coefficient expected rational but is not: {0}")]
    NonRationalCoefficient(String),
    #[error("point lies in the indeterminacy locus")]
    IndeterminacyLocus,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax_error",
            Error::DivByZero => "div_by_zero",
            Error::DegreeTooLow(_) => "degree_too_low",
            Error::BadPrime(_) => "bad_prime",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotIrreducible(_) => "not_irreducible",
            Error::NotGalois(_) => "not_galois",
            Error::DivisionByZero => "division_by_zero",
            Error::MixedFields => "mixed_fields",
            Error::ZeroAlpha => "zero_alpha",
            Error::ZeroVector => "zero_vector",
            Error::SingularMatrix => "singular_matrix",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::BadDegree(_) => "bad_degree",
            Error::SingularPhi => "singular_phi",
            Error::ExhaustedRetries(_) => "exhausted_retries",
            Error::ValidationFailed(_) => "validation_failed",
            Error::NotABasis => "not_a_basis",
            Error::NonRationalCoefficient(_) => "non_rational_coefficient",
            Error::IndeterminacyLocus => "indeterminacy_locus",
            Error::SingularSystem => "singular_system",
            Error::Invalid(_) => "invalid_input",
        }
    }

    /// True for errors caused by malformed user input rather than by the
    /// mathematics of a well-formed request.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::DivByZero
                | Error::ZeroAlpha
                | Error::ZeroVector
                | Error::BadDegree(_)
                | Error::DegreeTooLow(_)
                | Error::BadPrime(_)
                | Error::DimensionMismatch(_)
                | Error::Invalid(_)
        )
    }
}
