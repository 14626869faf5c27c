//! General complex eigenproblem: Householder reduction to upper Hessenberg
//! form followed by the implicitly single-shifted complex QR iteration.
//! Eigenvectors come from back substitution on the triangular Schur factor.

use crate::error::{Error, Result};
use crate::matrix::{vec_norm, DenseMatrix};
use crate::scalar::{creal, czero, Real, C};

/// Complex Schur form `A = Q T Q^H` with `T` upper triangular.
#[derive(Debug, Clone)]
pub struct Schur<T: Real> {
    pub t: DenseMatrix<T>,
    pub q: DenseMatrix<T>,
}

/// Reduces `a` to upper Hessenberg form `H = Q^H A Q`.
fn hessenberg<T: Real>(a: &DenseMatrix<T>) -> (DenseMatrix<T>, DenseMatrix<T>) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = DenseMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm == T::zero() {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() == T::zero() { creal(T::one()) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = vec_norm(&v);
        if vnorm == T::zero() {
            continue;
        }
        let inv = creal(T::one() / vnorm);
        v.iter_mut().for_each(|z| *z *= inv);
        let two = creal(T::lit(2.0));
        // H <- P H with P = I - 2 v v^H acting on rows k+1..n
        for j in 0..n {
            let s = (0..v.len()).fold(czero::<T>(), |acc, r| acc + v[r].conj() * h[(k + 1 + r, j)]) * two;
            for (r, &vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= vr * s;
            }
        }
        // H <- H P, Q <- Q P on columns k+1..n
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let s = (0..v.len()).fold(czero::<T>(), |acc, r| acc + m[(i, k + 1 + r)] * v[r]) * two;
                for (r, &vr) in v.iter().enumerate() {
                    m[(i, k + 1 + r)] -= s * vr.conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = czero();
        }
    }
    (h, q)
}

/// Unitary `G = [[c, s], [-conj(s), c]]` with `G [x; y] = [r; 0]`.
fn givens<T: Real>(x: C<T>, y: C<T>) -> (T, C<T>) {
    let (ax, ay) = (x.norm(), y.norm());
    if ay == T::zero() {
        return (T::one(), czero());
    }
    if ax == T::zero() {
        return (T::zero(), y.conj() / ay);
    }
    let norm = ax.hypot(ay);
    (ax / norm, (x / ax) * y.conj() / norm)
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift<T: Real>(a: C<T>, b: C<T>, c: C<T>, d: C<T>) -> C<T> {
    let half = creal(T::lit(0.5));
    let tr = (a + d) * half;
    let diff = (a - d) * half;
    let disc = (diff * diff + b * c).sqrt();
    let l1 = tr + disc;
    let l2 = tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

pub fn schur<T: Real>(a: &DenseMatrix<T>) -> Result<Schur<T>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} matrix is not square", a.rows(), a.cols())));
    }
    let n = a.rows();
    let (mut h, mut q) = hessenberg(a);
    if n < 2 {
        return Ok(Schur { t: h, q });
    }
    let eps = T::epsilon();
    let small = T::min_positive_value() * T::lit(n as f64) / eps;
    let cap = 100 * n;
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;

    while hi > 0 {
        // locate the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if sub <= eps * diag || sub <= small {
                h[(lo, lo - 1)] = czero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if total >= cap {
            return Err(Error::NoConvergence { stage: "shifted QR", iterations: total });
        }
        total += 1;
        since_deflation += 1;

        let shift = if since_deflation.is_multiple_of(10) {
            // exceptional shift to break cycles
            h[(hi, hi)] + creal(T::lit(0.75) * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        for k in lo..hi {
            let (x, y) = if k == lo {
                (h[(lo, lo)] - shift, h[(lo + 1, lo)])
            } else {
                (h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let (c, s) = givens(x, y);
            let cc = creal(c);
            let start = if k == lo { lo } else { k - 1 };
            for j in start..n {
                let (u, v) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = cc * u + s * v;
                h[(k + 1, j)] = -s.conj() * u + cc * v;
            }
            let end = (k + 2).min(hi);
            for i in 0..=end {
                let (u, v) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = u * cc + v * s.conj();
                h[(i, k + 1)] = -u * s + v * cc;
            }
            for i in 0..n {
                let (u, v) = (q[(i, k)], q[(i, k + 1)]);
                q[(i, k)] = u * cc + v * s.conj();
                q[(i, k + 1)] = -u * s + v * cc;
            }
            if k > lo {
                h[(k + 1, k - 1)] = czero();
            }
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = czero();
        }
    }
    Ok(Schur { t: h, q })
}

pub type EigenPairs<T> = (Vec<C<T>>, Option<DenseMatrix<T>>);

/// Eigenvalues (in Schur order) and unit eigenvectors as columns.
pub fn eigen<T: Real>(a: &DenseMatrix<T>, want_vectors: bool) -> Result<EigenPairs<T>> {
    let Schur { t, q } = schur(a)?;
    let n = t.rows();
    let values: Vec<C<T>> = (0..n).map(|i| t[(i, i)]).collect();
    if !want_vectors {
        return Ok((values, None));
    }
    let floor = (T::epsilon() * t.frobenius_norm()).max(T::min_positive_value());
    let mut vecs = DenseMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = values[k];
        let mut x = vec![czero::<T>(); n];
        x[k] = creal(T::one());
        for j in (0..k).rev() {
            let rhs = (j + 1..=k).fold(czero::<T>(), |acc, m| acc + t[(j, m)] * x[m]);
            let mut denom = t[(j, j)] - lambda;
            if denom.norm() < floor {
                denom = creal(floor);
            }
            x[j] = -rhs / denom;
            // rescale to keep the partial solution bounded
            let big = x.iter().map(|z| z.norm()).fold(T::zero(), T::max);
            if big > T::lit(1e100) {
                let inv = creal(T::one() / big);
                x.iter_mut().for_each(|z| *z *= inv);
            }
        }
        let mut v = q.matvec(&x);
        let norm = vec_norm(&v);
        let inv = creal(T::one() / norm);
        v.iter_mut().for_each(|z| *z *= inv);
        vecs.set_column(k, &v);
    }
    Ok((values, Some(vecs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    fn residual(a: &DenseMatrix<f64>, lambda: C<f64>, v: &[C<f64>]) -> f64 {
        a.matvec(v).iter().zip(v).map(|(y, x)| (y - x * lambda).norm_sqr()).sum::<f64>().sqrt()
    }

    #[test]
    fn rotation_matrix_has_imaginary_spectrum() {
        let a = DenseMatrix::new(2, 2, vec![c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let (vals, vecs) = eigen(&a, true).unwrap();
        let mut ims: Vec<f64> = vals.iter().map(|z| z.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + 1.0).abs() < 1e-14 && (ims[1] - 1.0).abs() < 1e-14);
        let vecs = vecs.unwrap();
        for k in 0..2 {
            assert!(residual(&a, vals[k], &vecs.column(k)) < 1e-14);
        }
    }

    #[test]
    fn schur_form_reconstructs() {
        let a = DenseMatrix::from_fn(5, 5, |i, j| c(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64 * 0.5));
        let s = schur(&a).unwrap();
        let rec = s.q.matmul(&s.t).unwrap().matmul(&s.q.conj_transpose()).unwrap();
        assert!(rec.sub(&a).unwrap().frobenius_norm() < 1e-12 * a.frobenius_norm());
        let (vals, vecs) = eigen(&a, true).unwrap();
        let vecs = vecs.unwrap();
        for k in 0..5 {
            assert!(residual(&a, vals[k], &vecs.column(k)) < 1e-10 * a.frobenius_norm());
        }
    }

    #[test]
    fn jordan_block_is_handled() {
        let a = DenseMatrix::new(2, 2, vec![c(3.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)]).unwrap();
        let (vals, vecs) = eigen(&a, true).unwrap();
        assert!(vals.iter().all(|z| (z - c(3.0, 0.0)).norm() < 1e-12));
        let vecs = vecs.unwrap();
        for k in 0..2 {
            assert!(residual(&a, vals[k], &vecs.column(k)) < 1e-8);
        }
    }
}
