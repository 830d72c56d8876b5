use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generator set is empty")]
    EmptyGeneratorSet,
    #[error("unbounded")]
    Unbounded,
    #[error("coordinate {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("malformed polyhedron dump at line {line}: {message}")]
    Dump { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, GeometryError>;
