//! Moore-Penrose inverse and the structural classifications that go with it.

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::DenseMatrix;
use crate::scalar::{creal, Real};
use crate::spectral::rank_tolerance;
use crate::tensor::{add, einstein_product, inner_product, outer_product, sub, Tensor};
use crate::unfold::{fold, unfold};

/// Frobenius norms of the defects of the four Penrose equations
/// `AXA = A`, `XAX = X`, `(AX)^H = AX`, `(XA)^H = XA`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenroseResiduals<T: Real> {
    pub r1: T,
    pub r2: T,
    pub r3: T,
    pub r4: T,
}

impl<T: Real> PenroseResiduals<T> {
    pub fn max(&self) -> T {
        self.r1.max(self.r2).max(self.r3).max(self.r4)
    }

    /// All four defects within `tol * (1 + ||A||_F) * (1 + ||X||_F)`.
    pub fn within(&self, a: &Tensor<T>, x: &Tensor<T>, tol: T) -> bool {
        self.max() <= tol * (T::one() + a.frobenius_norm()) * (T::one() + x.frobenius_norm())
    }
}

/// `A^dagger` via singular value truncation: `V * Sigma^+ * U^H`, with
/// singular values at or below the rank tolerance treated as zero.
pub fn moore_penrose<T: Real>(a: &Tensor<T>) -> Result<Tensor<T>> {
    let m = unfold(a);
    let f = linalg::svd(&m)?;
    let smax = f.s.first().copied().unwrap_or_else(T::zero);
    let cut = rank_tolerance(smax, m.rows(), m.cols());
    let (rows, cols) = (m.rows(), m.cols());
    // X = V Sigma^+ U^H is cols x rows
    let mut x = DenseMatrix::zeros(cols, rows);
    for (k, &s) in f.s.iter().enumerate() {
        if s <= cut || s == T::zero() {
            continue;
        }
        let inv = creal(T::one() / s);
        for i in 0..cols {
            let vik = f.v[(i, k)] * inv;
            for j in 0..rows {
                x[(i, j)] += vik * f.u[(j, k)].conj();
            }
        }
    }
    fold(&x, a.col_shape(), a.row_shape())
}

pub fn penrose_residuals<T: Real>(a: &Tensor<T>, x: &Tensor<T>) -> Result<PenroseResiduals<T>> {
    if a.row_shape() != x.col_shape() || a.col_shape() != x.row_shape() {
        return Err(Error::ShapeMismatch(format!(
            "candidate inverse {:?}/{} does not match {:?}/{}",
            x.shape(),
            x.row_modes(),
            a.shape(),
            a.row_modes()
        )));
    }
    let (nr, nc) = (a.row_modes(), a.order() - a.row_modes());
    let ax = einstein_product(a, x, nc)?;
    let xa = einstein_product(x, a, nr)?;
    let axa = einstein_product(&ax, a, nr)?;
    let xax = einstein_product(&xa, x, nc)?;
    Ok(PenroseResiduals {
        r1: axa.distance(a)?,
        r2: xax.distance(x)?,
        r3: ax.conj_transpose().distance(&ax)?,
        r4: xa.conj_transpose().distance(&xa)?,
    })
}

/// Numerical rank of the unfolding under the shared rank tolerance.
pub fn rank<T: Real>(a: &Tensor<T>) -> Result<usize> {
    let s = crate::spectral::singular_values(a)?;
    let smax = s.first().copied().unwrap_or_else(T::zero);
    let cut = rank_tolerance(smax, a.row_len(), a.col_len());
    Ok(s.iter().filter(|&&x| x > cut && x > T::zero()).count())
}

/// EP test: `||A A^dagger - A^dagger A||_F <= tol (1 + ||A||_F^2)`.
pub fn is_ep<T: Real>(a: &Tensor<T>, tol: T) -> Result<bool> {
    a.ensure_square()?;
    let p = moore_penrose(a)?;
    let n = a.row_modes();
    let lhs = einstein_product(a, &p, n)?;
    let rhs = einstein_product(&p, a, n)?;
    let scale = T::one() + a.frobenius_norm().powi(2);
    Ok(lhs.distance(&rhs)? <= tol * scale)
}

fn gram_defect<T: Real>(list: &[Tensor<T>]) -> Result<T> {
    let mut worst = T::zero();
    for (i, u) in list.iter().enumerate() {
        for (j, v) in list.iter().enumerate() {
            let target = if i == j { creal(T::one()) } else { creal(T::zero()) };
            worst = worst.max((inner_product(u, v)? - target).norm());
        }
    }
    Ok(worst)
}

/// For orthonormal lists `U_i`, `V_i` builds `A = sum U_i V_i^H` together
/// with its Moore-Penrose inverse `sum V_i U_i^H`.
pub fn orthonormal_sum<T: Real>(us: &[Tensor<T>], vs: &[Tensor<T>]) -> Result<(Tensor<T>, Tensor<T>)> {
    if us.len() != vs.len() || us.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "need two nonempty lists of equal length, got {} and {}",
            us.len(),
            vs.len()
        )));
    }
    for list in [us, vs] {
        let defect = gram_defect(list)?;
        if defect > T::structural_tol() {
            return Err(Error::NotOrthonormal { defect: defect.to_f64_lossy() });
        }
    }
    let mut a = outer_product(&us[0], &vs[0])?;
    let mut p = outer_product(&vs[0], &us[0])?;
    for (u, v) in us.iter().zip(vs).skip(1) {
        a = add(&a, &outer_product(u, v)?)?;
        p = add(&p, &outer_product(v, u)?)?;
    }
    Ok((a, p))
}

/// Structural flags of a square tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Structure {
    pub hermitian: bool,
    pub normal: bool,
    pub unitary: bool,
}

/// Hermitian: `||A - A^H|| <= tol max(1, ||A||)`; normal:
/// `||A A^H - A^H A|| <= tol max(1, ||A||^2)`; unitary: `||A^H A - I|| <= tol`
/// (all Frobenius).
pub fn classify_structure<T: Real>(a: &Tensor<T>, tol: T) -> Result<Structure> {
    a.ensure_square()?;
    let n = a.row_modes();
    let norm = a.frobenius_norm();
    let ah = a.conj_transpose();
    let aah = einstein_product(a, &ah, n)?;
    let aha = einstein_product(&ah, a, n)?;
    let id = Tensor::identity(a.row_shape())?;
    Ok(Structure {
        hermitian: a.distance(&ah)? <= tol * norm.max(T::one()),
        normal: aah.distance(&aha)? <= tol * (norm * norm).max(T::one()),
        unitary: sub(&aha, &id)?.frobenius_norm() <= tol,
    })
}
