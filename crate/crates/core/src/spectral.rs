//! Eigenvalues, singular values, determinants, inverses and polar factors
//! of partitioned tensors, computed on the unfolding.

use crate::error::{Error, Result};
use crate::linalg::{self, Lu};
use crate::matrix::DenseMatrix;
use crate::scalar::{creal, Real, C};
use crate::tensor::{einstein_product, Tensor};
use crate::unfold::{fold, fold_vector, unfold};

/// Eigenvalue multiset of an even-order square tensor, with unit
/// eigentensors when requested.
#[derive(Debug, Clone)]
pub struct Spectrum<T: Real> {
    pub values: Vec<C<T>>,
    pub eigentensors: Option<Vec<Tensor<T>>>,
}

impl<T: Real> Spectrum<T> {
    /// Values sorted by real part, then imaginary part.
    pub fn sorted_values(&self) -> Vec<C<T>> {
        let mut v = self.values.clone();
        sort_lexicographic(&mut v);
        v
    }
}

/// `A = left * diag(singular_values) * right^H` with square unitary factors.
#[derive(Debug, Clone)]
pub struct SvdFactors<T: Real> {
    pub left: Tensor<T>,
    pub singular_values: Vec<T>,
    pub right: Tensor<T>,
}

impl<T: Real> SvdFactors<T> {
    /// The `row x col` tensor holding the singular values on its diagonal.
    pub fn sigma(&self) -> Tensor<T> {
        let rows = self.left.col_shape().to_vec();
        let cols = self.right.col_shape().to_vec();
        let (r, c): (usize, usize) = (rows.iter().product(), cols.iter().product());
        let mut m = DenseMatrix::zeros(r, c);
        for (k, &s) in self.singular_values.iter().enumerate() {
            m[(k, k)] = creal(s);
        }
        fold(&m, &rows, &cols).expect("shapes match by construction")
    }

    pub fn reconstruct(&self) -> Result<Tensor<T>> {
        let ls = einstein_product(&self.left, &self.sigma(), self.left.order() - self.left.row_modes())?;
        let rh = self.right.conj_transpose();
        einstein_product(&ls, &rh, rh.row_modes())
    }
}

pub fn sort_lexicographic<T: Real>(v: &mut [C<T>]) {
    v.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// True when `a` and `b` agree as multisets: after sorting, every value of
/// `a` is paired with a distinct value of `b` within `tol`.
pub fn multisets_match<T: Real>(a: &[C<T>], b: &[C<T>], tol: T) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a = a.to_vec();
    sort_lexicographic(&mut a);
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let best = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, y)| (k, (x - y).norm()))
            .fold(None, |acc: Option<(usize, T)>, (k, d)| match acc {
                Some((_, bd)) if bd <= d => acc,
                _ => Some((k, d)),
            });
        match best {
            Some((k, d)) if d <= tol => {
                used[k] = true;
                true
            }
            _ => false,
        }
    })
}

/// Singular values at or below this are treated as zero.
pub fn rank_tolerance<T: Real>(sigma_max: T, rows: usize, cols: usize) -> T {
    T::epsilon() * T::lit(rows.max(cols) as f64) * sigma_max
}

/// Eigenvalues of `A` (those of its unfolding) and, on request, the unit
/// eigentensors `X` with `A *_N X = lambda X`.
pub fn eigenvalues<T: Real>(a: &Tensor<T>, want_vectors: bool) -> Result<Spectrum<T>> {
    a.ensure_square()?;
    let (values, vecs) = linalg::eigen(&unfold(a), want_vectors)?;
    let eigentensors = match vecs {
        Some(v) => Some(
            (0..v.cols())
                .map(|k| fold_vector(v.column(k), a.row_shape()))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    Ok(Spectrum { values, eigentensors })
}

/// Real eigenvalues in nonincreasing order with orthonormal eigentensors.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    pub eigentensors: Vec<Tensor<T>>,
}

impl<T: Real> From<HermitianEigen<T>> for Spectrum<T> {
    fn from(h: HermitianEigen<T>) -> Self {
        Spectrum { values: h.values.into_iter().map(creal).collect(), eigentensors: Some(h.eigentensors) }
    }
}

/// Eigensystem of a Hermitian tensor. Rejects inputs whose Hermitian defect
/// exceeds the structural tolerance.
pub fn hermitian_eigensystem<T: Real>(a: &Tensor<T>) -> Result<HermitianEigen<T>> {
    a.ensure_square()?;
    if !a.is_hermitian(T::structural_tol()) {
        return Err(Error::NotHermitian { defect: a.hermitian_defect().to_f64_lossy() });
    }
    let (values, vecs) = linalg::hermitian_eigen(&unfold(a))?;
    let eigentensors =
        (0..vecs.cols()).map(|k| fold_vector(vecs.column(k), a.row_shape())).collect::<Result<Vec<_>>>()?;
    Ok(HermitianEigen { values, eigentensors })
}

/// Largest eigenvalue and a unit eigentensor of the Hermitian part of the
/// unfolding `m` (no Hermitian check; the anti-Hermitian part is ignored).
pub(crate) fn top_eigenpair<T: Real>(m: &DenseMatrix<T>) -> Result<(T, Vec<C<T>>)> {
    let (values, vecs) = linalg::hermitian_eigen(m)?;
    Ok((values[0], vecs.column(0)))
}

pub fn spectral_radius<T: Real>(a: &Tensor<T>) -> Result<T> {
    Ok(eigenvalues(a, false)?.values.iter().map(|z| z.norm()).fold(T::zero(), T::max))
}

/// Determinant of the unfolding (LU with partial pivoting).
pub fn determinant<T: Real>(a: &Tensor<T>) -> Result<C<T>> {
    a.ensure_square()?;
    Ok(Lu::new(&unfold(a))?.determinant())
}

pub fn svd<T: Real>(a: &Tensor<T>) -> Result<SvdFactors<T>> {
    let f = linalg::svd(&unfold(a))?;
    Ok(SvdFactors {
        left: fold(&f.u, a.row_shape(), a.row_shape())?,
        singular_values: f.s,
        right: fold(&f.v, a.col_shape(), a.col_shape())?,
    })
}

/// Nonincreasing singular values.
pub fn singular_values<T: Real>(a: &Tensor<T>) -> Result<Vec<T>> {
    Ok(linalg::svd(&unfold(a))?.s)
}

/// Operator norm `sup ||A *_N X||` over unit `X`: the largest singular value.
pub fn spectral_norm<T: Real>(a: &Tensor<T>) -> Result<T> {
    Ok(singular_values(a)?.first().copied().unwrap_or_else(T::zero))
}

fn ensure_invertible<T: Real>(a: &Tensor<T>) -> Result<()> {
    a.ensure_square()?;
    let s = singular_values(a)?;
    let smax = s.first().copied().unwrap_or_else(T::zero);
    let smin = s.last().copied().unwrap_or_else(T::zero);
    if smax == T::zero() || smin <= rank_tolerance(smax, a.row_len(), a.col_len()) {
        return Err(Error::Singular { sigma_min: smin.to_f64_lossy() });
    }
    Ok(())
}

/// `A^{-1}` with `A *_N A^{-1} = A^{-1} *_N A = I`.
pub fn inverse<T: Real>(a: &Tensor<T>) -> Result<Tensor<T>> {
    ensure_invertible(a)?;
    let inv = Lu::new(&unfold(a))?.inverse()?;
    fold(&inv, a.row_shape(), a.row_shape())
}

/// Polar decomposition `A = U *_N P` of an invertible tensor, with `U`
/// unitary and `P = (A^H *_N A)^{1/2}` Hermitian positive definite.
pub fn polar_decompose<T: Real>(a: &Tensor<T>) -> Result<(Tensor<T>, Tensor<T>)> {
    ensure_invertible(a)?;
    let f = linalg::svd(&unfold(a))?;
    let vh = f.v.conj_transpose();
    let u = f.u.matmul(&vh)?;
    let p = f.v.matmul(&DenseMatrix::from_real_diagonal(&f.s))?.matmul(&vh)?;
    Ok((fold(&u, a.row_shape(), a.row_shape())?, fold(&p, a.row_shape(), a.row_shape())?))
}
