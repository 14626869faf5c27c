use thiserror::Error;

/// Errors produced by tensor construction and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("entry count {got} does not match the product of extents {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite entry at flat position {position}")]
    NonFinite { position: usize },

    #[error("mode {mode} has zero extent")]
    ZeroExtent { mode: usize },

    #[error("row_modes {row_modes} exceeds the number of modes {modes}")]
    InvalidPartition { row_modes: usize, modes: usize },

    #[error("index component {component} = {value} is outside [1, {extent}]")]
    IndexOutOfRange { component: usize, value: usize, extent: usize },

    #[error("index has {got} components but the tensor has {expected} modes")]
    IndexArity { expected: usize, got: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("tensor is not even-order square (row block {row:?}, column block {col:?})")]
    NotSquare { row: Vec<usize>, col: Vec<usize> },

    #[error("tensor is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("tensor is singular to tolerance (smallest singular value {sigma_min:e})")]
    Singular { sigma_min: f64 },

    #[error("input tensors are not orthonormal (Gram defect {defect:e})")]
    NotOrthonormal { defect: f64 },

    #[error("zero tensor where a nonzero one is required")]
    ZeroTensor,

    #[error("{stage} did not converge within {iterations} iterations")]
    NoConvergence { stage: &'static str, iterations: usize },

    #[error("sampling failed at theta = {theta}: {source}")]
    Sampling { theta: f64, source: Box<Error> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
