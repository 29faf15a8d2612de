use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree {degree} is outside the supported range {min}..={max}")]
    DegreeOutOfRange { degree: i64, min: i64, max: i64 },
    #[error("polynomial ring mismatch: {0}")]
    RingMismatch(String),
    #[error("series precondition failed: {0}")]
    Series(String),
    #[error("not symmetric: {0}")]
    NotSymmetric(String),
    #[error("class is not in the lattice: {0}")]
    NotInLattice(String),
    #[error("class is not a cycle: {0}")]
    NotACycle(String),
    #[error("no generator found in degree {degree}: {reason}")]
    GeneratorSearch { degree: u32, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
