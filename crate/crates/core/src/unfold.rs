//! The bijection between partitioned tensors and dense matrices.
//!
//! Row and column multi-indices are flattened row-major, so
//! `unfold(A *_N B) = unfold(A) * unfold(B)` and an even-order square tensor
//! shares its eigenpairs with its unfolding.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Real;
use crate::tensor::{strides, MultiIndex, Tensor};

/// Zero-based row-major rank of a one-based multi-index within `shape`.
pub fn linear_index(idx: &MultiIndex, shape: &[usize]) -> Result<usize> {
    let zb = idx.zero_based(shape)?;
    Ok(zb.iter().zip(strides(shape)).map(|(i, s)| i * s).sum())
}

/// Inverse of [`linear_index`]: one-based components of flat position `k`.
pub fn multi_index(mut k: usize, shape: &[usize]) -> Result<MultiIndex> {
    let total: usize = shape.iter().product();
    if k >= total {
        return Err(Error::InvalidArgument(format!("flat index {k} outside a box of {total}")));
    }
    let mut out = vec![0; shape.len()];
    for (slot, s) in out.iter_mut().zip(strides(shape)) {
        *slot = k / s + 1;
        k %= s;
    }
    Ok(MultiIndex::new(out))
}

/// Matrix with `prod(row extents)` rows and `prod(column extents)` columns.
/// A tensor with an empty column block unfolds to a column vector.
pub fn unfold<T: Real>(a: &Tensor<T>) -> DenseMatrix<T> {
    DenseMatrix::new(a.row_len(), a.col_len(), a.data().to_vec())
        .expect("tensor data length equals the product of its extents")
}

/// Reshapes a matrix into a tensor partitioned after `row_shape`.
pub fn fold<T: Real>(m: &DenseMatrix<T>, row_shape: &[usize], col_shape: &[usize]) -> Result<Tensor<T>> {
    let r: usize = row_shape.iter().product();
    let c: usize = col_shape.iter().product();
    if r != m.rows() || c != m.cols() {
        return Err(Error::ShapeMismatch(format!(
            "cannot fold a {}x{} matrix into {:?} x {:?}",
            m.rows(),
            m.cols(),
            row_shape,
            col_shape
        )));
    }
    let mut shape = row_shape.to_vec();
    shape.extend_from_slice(col_shape);
    Tensor::new(shape, row_shape.len(), m.data().to_vec())
}

/// Folds a flat vector into an order-`N` tensor of the given shape.
pub fn fold_vector<T: Real>(v: Vec<crate::scalar::C<T>>, shape: &[usize]) -> Result<Tensor<T>> {
    Tensor::new(shape.to_vec(), shape.len(), v)
}
