//! LU factorization with partial pivoting.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::{czero, Real, C};

/// `P A = L U` packed in one matrix; `perm[i]` is the source row of row `i`.
#[derive(Debug, Clone)]
pub struct Lu<T: Real> {
    lu: DenseMatrix<T>,
    perm: Vec<usize>,
    sign: T,
    singular: bool,
}

impl<T: Real> Lu<T> {
    pub fn new(a: &DenseMatrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::ShapeMismatch(format!("{}x{} matrix is not square", a.rows(), a.cols())));
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = T::one();
        let mut singular = false;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| lu[(i, k)].norm().partial_cmp(&lu[(j, k)].norm()).unwrap_or(std::cmp::Ordering::Equal))
                .unwrap_or(k);
            if lu[(p, k)].norm() == T::zero() {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f.norm() == T::zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Lu { lu, perm, sign, singular })
    }

    pub fn determinant(&self) -> C<T> {
        if self.singular {
            return czero();
        }
        (0..self.lu.rows()).fold(C::new(self.sign, T::zero()), |acc, i| acc * self.lu[(i, i)])
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// Solves `A X = B` column by column.
    pub fn solve(&self, b: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
        let n = self.lu.rows();
        if self.singular {
            return Err(Error::Singular { sigma_min: 0.0 });
        }
        if b.rows() != n {
            return Err(Error::ShapeMismatch("right-hand side rows".into()));
        }
        let mut x = DenseMatrix::zeros(n, b.cols());
        for col in 0..b.cols() {
            let mut y: Vec<C<T>> = self.perm.iter().map(|&p| b[(p, col)]).collect();
            for i in 0..n {
                let s = (0..i).fold(czero(), |acc, j| acc + self.lu[(i, j)] * y[j]);
                y[i] -= s;
            }
            for i in (0..n).rev() {
                let s = (i + 1..n).fold(czero(), |acc, j| acc + self.lu[(i, j)] * y[j]);
                y[i] = (y[i] - s) / self.lu[(i, i)];
            }
            x.set_column(col, &y);
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<DenseMatrix<T>> {
        self.solve(&DenseMatrix::identity(self.lu.rows()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_inverse_of_small_matrix() {
        let c = |re: f64, im: f64| C::new(re, im);
        let a = DenseMatrix::new(2, 2, vec![c(1.0, 1.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, -1.0)]).unwrap();
        let lu = Lu::new(&a).unwrap();
        // (1+i)(4-i) - 6 = 5 + 3i - 6
        assert!((lu.determinant() - c(-1.0, 3.0)).norm() < 1e-14);
        let inv = lu.inverse().unwrap();
        let prod = a.matmul(&inv).unwrap();
        assert!(prod.sub(&DenseMatrix::identity(2)).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn singular_matrix_has_zero_determinant() {
        let a = DenseMatrix::<f64>::from_fn(3, 3, |i, _| C::new(i as f64, 0.0));
        let lu = Lu::new(&a).unwrap();
        assert_eq!(lu.determinant(), C::new(0.0, 0.0));
        assert!(lu.inverse().is_err());
    }
}
