//! Self-contained dense complex solvers operating on [`DenseMatrix`].
//!
//! [`DenseMatrix`]: crate::matrix::DenseMatrix

pub mod jacobi;
pub mod lu;
pub mod orth;
pub mod schur;

pub use jacobi::{hermitian_eigen, svd, Svd};
pub use lu::Lu;
pub use orth::{complete_basis, orthonormalize};
pub use schur::{eigen, schur, Schur};
