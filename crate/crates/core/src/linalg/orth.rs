//! Gram-Schmidt orthonormalization.

use crate::error::{Error, Result};
use crate::matrix::{dot_c, vec_norm, DenseMatrix};
use crate::scalar::{creal, Real, C};

/// Projects `v` off every vector in `basis` (two passes of modified
/// Gram-Schmidt) and returns the remainder.
fn project_out<T: Real>(mut v: Vec<C<T>>, basis: &[Vec<C<T>>]) -> Vec<C<T>> {
    for _ in 0..2 {
        for b in basis {
            let h = dot_c(b, &v);
            for (x, &y) in v.iter_mut().zip(b) {
                *x -= h * y;
            }
        }
    }
    v
}

/// Orthonormalizes `vectors` in order. Fails if one of them is (numerically)
/// in the span of its predecessors.
pub fn orthonormalize<T: Real>(vectors: &[Vec<C<T>>]) -> Result<Vec<Vec<C<T>>>> {
    let mut basis: Vec<Vec<C<T>>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let scale = vec_norm(v);
        let r = project_out(v.clone(), &basis);
        let norm = vec_norm(&r);
        if norm <= T::structural_tol() * scale || norm == T::zero() {
            return Err(Error::InvalidArgument("vectors are linearly dependent".into()));
        }
        let inv = creal(T::one() / norm);
        basis.push(r.into_iter().map(|z| z * inv).collect());
    }
    Ok(basis)
}

/// Extends orthonormal columns of length `n` to an `n x n` unitary matrix.
/// Each new column comes from the standard basis vector with the largest
/// residual, which is at least `1/sqrt(n)`.
pub fn complete_basis<T: Real>(mut cols: Vec<Vec<C<T>>>, n: usize) -> Result<DenseMatrix<T>> {
    if cols.len() > n || cols.iter().any(|c| c.len() != n) {
        return Err(Error::ShapeMismatch("basis completion".into()));
    }
    while cols.len() < n {
        let best = (0..n)
            .map(|i| {
                let covered: T = cols.iter().map(|c| c[i].norm_sqr()).sum();
                (i, T::one() - covered)
            })
            .fold((0, T::neg_infinity()), |acc, x| if x.1 > acc.1 { x } else { acc })
            .0;
        let mut unit = vec![creal(T::zero()); n];
        unit[best] = creal(T::one());
        let r = project_out(unit, &cols);
        let norm = vec_norm(&r);
        if norm == T::zero() {
            return Err(Error::NoConvergence { stage: "basis completion", iterations: cols.len() });
        }
        let inv = creal(T::one() / norm);
        cols.push(r.into_iter().map(|z| z * inv).collect());
    }
    let mut m = DenseMatrix::zeros(n, n);
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    Ok(m)
}
