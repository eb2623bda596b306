use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cone {0} is not a cone of the fan")]
    CenterNotInFan(String),
    #[error("fan is not smooth: {0}")]
    NonSmoothInput(String),
    #[error("star subdivision requires a 2- or 3-dimensional center, got dimension {0}")]
    BadCenterDimension(usize),
    #[error("subdivision ray {0} is not primitive")]
    NonPrimitiveRay(String),
    #[error("fan is not complete")]
    NonCompleteInput,
    #[error("unknown ray label `{0}`")]
    UnknownRay(String),
    #[error("basis/model mismatch: {0}")]
    BasisModelMismatch(String),
    #[error("cone {0} is not a wall")]
    NotAWall(String),
    #[error("matrix does not permute the rays of the fan: {0}")]
    RayPermutationFailure(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("virtual dimension is {0}, expected 0")]
    NonVdimZero(i64),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("base table line {line}: {message}")]
    Table { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
