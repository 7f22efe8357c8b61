use thiserror::Error;

/// Errors raised by constructions and exact linear algebra.
///
/// Verification failures are never reported through this type; they are
/// carried by the report structs of the verifying functions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("invalid group: {0}")]
    Group(String),
    #[error("group is not abelian or carries no abelian coordinates: {0}")]
    NotAbelian(String),
    #[error("invalid bicharacter: {0}")]
    Bicharacter(String),
    #[error("invalid twist: {0}")]
    Twist(String),
    #[error("septuple invariant violated: {0}")]
    SeptupleInvariantViolation(String),
    #[error("unsupported stratum: {0}")]
    UnsupportedStratum(String),
    #[error("R is not quasitriangular: {0}")]
    NotQuasitriangular(String),
    #[error("invalid Drinfeld element: {0}")]
    InvalidDrinfeldElement(String),
    #[error("antipode order exceeds bound {0}")]
    OrderNotFound(usize),
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
