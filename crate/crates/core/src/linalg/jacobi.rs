//! Cyclic complex Jacobi: Hermitian eigensystems and the one-sided
//! (Hestenes) singular value decomposition.

use crate::error::{Error, Result};
use crate::linalg::orth::complete_basis;
use crate::matrix::{dot_c, vec_norm, DenseMatrix};
use crate::scalar::{creal, Real, C};

/// Unitary 2x2 rotation `J = [[c, s], [-s w, c w]]` (with `|w| = 1`) such
/// that `J^H [[app, apq], [conj(apq), aqq]] J` is diagonal.
#[derive(Debug, Clone, Copy)]
struct Rotation<T: Real> {
    c: T,
    s: T,
    w: C<T>,
}

impl<T: Real> Rotation<T> {
    fn annihilating(app: T, aqq: T, apq: C<T>) -> Option<Self> {
        let g = apq.norm();
        if g == T::zero() {
            return None;
        }
        let w = apq.conj() / g;
        let theta = (aqq - app) / (g + g);
        let t = if theta.abs() > T::lit(1e150) {
            T::lit(0.5) / theta
        } else {
            let sign = if theta < T::zero() { -T::one() } else { T::one() };
            sign / (theta.abs() + (theta * theta + T::one()).sqrt())
        };
        let c = T::one() / (t * t + T::one()).sqrt();
        Some(Rotation { c, s: t * c, w })
    }

    /// `M <- M J` on columns `p`, `q`.
    fn apply_right(&self, m: &mut DenseMatrix<T>, p: usize, q: usize) {
        let (c, s) = (creal(self.c), creal(self.s));
        for i in 0..m.rows() {
            let (mp, mq) = (m[(i, p)], m[(i, q)]);
            m[(i, p)] = mp * c - mq * s * self.w;
            m[(i, q)] = mp * s + mq * c * self.w;
        }
    }

    /// `M <- J^H M` on rows `p`, `q`.
    fn apply_left_adjoint(&self, m: &mut DenseMatrix<T>, p: usize, q: usize) {
        let (c, s) = (creal(self.c), creal(self.s));
        let wc = self.w.conj();
        for j in 0..m.cols() {
            let (mp, mq) = (m[(p, j)], m[(q, j)]);
            m[(p, j)] = mp * c - mq * s * wc;
            m[(q, j)] = mp * s + mq * c * wc;
        }
    }
}

fn sweep_cap(n: usize) -> usize {
    100 * n.max(1)
}

/// Eigen-decomposition of a Hermitian matrix. Returns eigenvalues in
/// nonincreasing order and the matching orthonormal eigenvectors as
/// columns. Only the Hermitian part of `a` is used.
pub fn hermitian_eigen<T: Real>(a: &DenseMatrix<T>) -> Result<(Vec<T>, DenseMatrix<T>)> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} matrix is not square", a.rows(), a.cols())));
    }
    let half = T::lit(0.5);
    let mut m = DenseMatrix::from_fn(n, n, |i, j| {
        if i == j {
            creal(a[(i, i)].re)
        } else {
            (a[(i, j)] + a[(j, i)].conj()) * half
        }
    });
    let mut v = DenseMatrix::identity(n);
    let scale = m.frobenius_norm();
    let target = T::epsilon() * scale;

    let mut converged = n < 2 || scale == T::zero();
    let mut sweeps = 0;
    while !converged {
        if sweeps >= sweep_cap(n) {
            return Err(Error::NoConvergence { stage: "Hermitian Jacobi", iterations: sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let Some(rot) = Rotation::annihilating(m[(p, p)].re, m[(q, q)].re, m[(p, q)]) else {
                    continue;
                };
                rot.apply_right(&mut m, p, q);
                rot.apply_left_adjoint(&mut m, p, q);
                m[(p, q)] = creal(T::zero());
                m[(q, p)] = creal(T::zero());
                m[(p, p)] = creal(m[(p, p)].re);
                m[(q, q)] = creal(m[(q, q)].re);
                rot.apply_right(&mut v, p, q);
            }
        }
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<T>()
            .sqrt();
        converged = off <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.partial_cmp(&m[(i, i)].re).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = DenseMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok((values, vectors))
}

/// Full singular value decomposition `A = U diag(s) V^H` with square
/// unitary `U` (rows x rows) and `V` (cols x cols) and `min(rows, cols)`
/// nonincreasing singular values.
#[derive(Debug, Clone)]
pub struct Svd<T: Real> {
    pub u: DenseMatrix<T>,
    pub s: Vec<T>,
    pub v: DenseMatrix<T>,
}

pub fn svd<T: Real>(a: &DenseMatrix<T>) -> Result<Svd<T>> {
    if a.rows() < a.cols() {
        let t = svd_tall(&a.conj_transpose())?;
        return Ok(Svd { u: t.v, s: t.s, v: t.u });
    }
    svd_tall(a)
}

fn svd_tall<T: Real>(a: &DenseMatrix<T>) -> Result<Svd<T>> {
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut v = DenseMatrix::identity(n);
    let tol = T::epsilon() * T::lit(m as f64).sqrt();

    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let (cp, cq) = (w.column(p), w.column(q));
                let alpha = vec_norm(&cp).powi(2);
                let beta = vec_norm(&cq).powi(2);
                let gamma = dot_c(&cp, &cq);
                if gamma.norm() <= tol * (alpha * beta).sqrt() || gamma.norm() < T::min_positive_value() {
                    continue;
                }
                if let Some(rot) = Rotation::annihilating(alpha, beta, gamma) {
                    rot.apply_right(&mut w, p, q);
                    rot.apply_right(&mut v, p, q);
                    rotated = true;
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps >= sweep_cap(n) {
            return Err(Error::NoConvergence { stage: "one-sided Jacobi SVD", iterations: sweeps });
        }
    }

    let norms: Vec<T> = (0..n).map(|j| vec_norm(&w.column(j))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(std::cmp::Ordering::Equal));
    let s: Vec<T> = order.iter().map(|&j| norms[j]).collect();
    let smax = s.first().copied().unwrap_or_else(T::zero);
    let floor = smax * T::epsilon() * T::lit(m.max(n) as f64);

    let mut cols = Vec::with_capacity(m);
    for (k, &j) in order.iter().enumerate() {
        if s[k] > floor && s[k] > T::zero() {
            let inv = creal(T::one() / s[k]);
            cols.push(w.column(j).into_iter().map(|z| z * inv).collect::<Vec<_>>());
        } else {
            break;
        }
    }
    let u = complete_basis(cols, m)?;
    let v = DenseMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(Svd { u, s, v })
}
