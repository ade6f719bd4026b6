use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("bracket of a basis element with itself ({0}) cannot be assigned")]
    DiagonalBracket(usize),

    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),

    #[error("change of basis matrix is singular")]
    SingularMatrix,

    #[error("representation and module act through different algebras")]
    ActingAlgebraMismatch,

    #[error("representation check failed: {0}")]
    NotARepresentation(String),

    #[error("module check failed: {0}")]
    NotAModule(String),

    #[error("radical is not abelian")]
    NonAbelianRadical,

    #[error("not a Levi splitting: {0}")]
    NotLeviSplit(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
