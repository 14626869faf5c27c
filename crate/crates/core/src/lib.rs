//! Tensor numerical ranges under the Einstein product.
//!
//! The crate works with dense complex tensors `A in C^{I1..IN x J1..JM}`
//! carrying an explicit split of their modes into a row block and a column
//! block. Contracting the column block of one tensor with the row block of
//! another is the Einstein product, which the row-major unfolding turns into
//! ordinary matrix multiplication. On top of that sit:
//!
//! * tensor eigenvalues, SVD, determinant, inverse and polar factors ([`spectral`]);
//! * the Moore-Penrose inverse and related classifications ([`pinv`]);
//! * numerical range boundaries, numerical radius and membership ([`numrange`]);
//! * a seeded property battery exercising all of the above ([`battery`]).
//!
//! Everything is generic over the real scalar type (`f32` or `f64`); the
//! aliases below fix it to `f64` for convenience.
//!
//! ```
//! use numrange_core::{fixtures, numerical_radius, eigenvalues};
//!
//! let a = fixtures::t_diag::<f64>();
//! let w = numerical_radius(&a, 500).unwrap();
//! assert!((w - 9.0).abs() < 1e-9);
//! assert_eq!(eigenvalues(&a, false).unwrap().values.len(), 6);
//! ```

pub mod battery;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod matrix;
pub mod numrange;
pub mod pinv;
pub mod random;
pub mod scalar;
pub mod spectral;
pub mod tensor;
pub mod unfold;

pub use error::{Error, Result};
pub use matrix::DenseMatrix;
pub use numrange::{
    boundary, boundary_serial, classify_unitary, contains_point, default_tolerance, membership, numerical_radius,
    rayleigh, support_function, theta_grid, Boundary, BoundarySample, Membership, SupportFunction, SupportGrid,
    DEFAULT_N_THETA,
};
pub use pinv::{
    classify_structure, is_ep, moore_penrose, orthonormal_sum, penrose_residuals, rank, PenroseResiduals, Structure,
};
pub use scalar::{Real, C};
pub use spectral::{
    determinant, eigenvalues, hermitian_eigensystem, inverse, multisets_match, polar_decompose, singular_values,
    spectral_norm, spectral_radius, svd, HermitianEigen, Spectrum, SvdFactors,
};
pub use tensor::{
    add, apply, direct_sum, einstein_product, inner_product, linear_combine, outer_product, sub, MultiIndex,
    Permutation, Tensor,
};
pub use unfold::{fold, fold_vector, unfold};

pub type Complex64 = C<f64>;
pub type Complex32 = C<f32>;
pub type Tensor64 = Tensor<f64>;
pub type Tensor32 = Tensor<f32>;
pub type Matrix64 = DenseMatrix<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type Boundary64 = Boundary<f64>;
pub type BoundarySample64 = BoundarySample<f64>;
pub type PenroseResiduals64 = PenroseResiduals<f64>;
