use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series must carry at least one coefficient")]
    Empty,
    #[error("coefficient index {index} is beyond truncation order {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,
    #[error("inner series of a composition must have zero constant term")]
    CompositionDomain,
    #[error("compositional inverse needs h(0) = 0 and h'(0) != 0")]
    NotInvertibleSubstitution,
    #[error("square root needs a constant term that is a nonzero rational square, got {0}")]
    SqrtDomain(String),
    #[error("cannot divide by x^{k}: coefficient {index} is nonzero")]
    NotDivisible { k: usize, index: usize },
    #[error("division by x^{k} leaves no coefficients at order {order}")]
    ShiftExhausted { k: usize, order: usize },
    #[error("invalid series data: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RiordanError {
    #[error("`{which}` has zero constant term")]
    ZeroConstant { which: &'static str },
    #[error("`h` must satisfy h(0) = 0 and h'(0) != 0")]
    BadH,
    #[error("truncation budget exceeded: requested {requested}, available {available}")]
    Budget { requested: usize, available: usize },
    #[error("entry ({row}, {col}) lies above the diagonal")]
    AboveDiagonal { row: usize, col: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("{0}")]
    Parameter(String),
    #[error("oracle budget exceeded: {what} must be at most {max}, got {got}")]
    OracleBudget { what: &'static str, max: usize, got: usize },
    #[error(transparent)]
    Riordan(#[from] RiordanError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
