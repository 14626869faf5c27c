//! Seeded random tensors for property checks.
//!
//! Entries are standard complex Gaussians (real and imaginary parts drawn
//! independently from `N(0, 1/2)`), generated by a ChaCha stream so that a
//! seed reproduces the same tensors on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::orthonormalize;
use crate::matrix::DenseMatrix;
use crate::scalar::{creal, Real, C};
use crate::tensor::{add, outer_product, Tensor};
use crate::unfold::{fold, fold_vector};

/// Reproducible generator used throughout the crate.
pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C::new(T::lit(re * h), T::lit(im * h))
}

fn gaussian_vec<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C<T>> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

pub fn gaussian_tensor<T: Real, R: Rng + ?Sized>(rng: &mut R, shape: &[usize], row_modes: usize) -> Result<Tensor<T>> {
    let n = shape.iter().product();
    Tensor::new(shape.to_vec(), row_modes, gaussian_vec(rng, n))
}

/// Square tensor on `C^{half}` with Gaussian entries.
pub fn gaussian_square<T: Real, R: Rng + ?Sized>(rng: &mut R, half: &[usize]) -> Result<Tensor<T>> {
    let mut shape = half.to_vec();
    shape.extend_from_slice(half);
    gaussian_tensor(rng, &shape, half.len())
}

/// Order-`N` tensor of the given shape with unit Frobenius norm.
pub fn unit_tensor<T: Real, R: Rng + ?Sized>(rng: &mut R, shape: &[usize]) -> Result<Tensor<T>> {
    loop {
        let x = gaussian_tensor::<T, R>(rng, shape, shape.len())?;
        let n = x.frobenius_norm();
        if n > T::epsilon() {
            return Ok(x.scale(creal(T::one() / n)));
        }
    }
}

/// `k` orthonormal order-`N` tensors of the given shape.
pub fn orthonormal_list<T: Real, R: Rng + ?Sized>(rng: &mut R, shape: &[usize], k: usize) -> Result<Vec<Tensor<T>>> {
    let n: usize = shape.iter().product();
    let q = orthonormal_columns::<T, R>(rng, n, k)?;
    (0..k).map(|j| fold_vector(q.column(j), shape)).collect()
}

/// `n x k` matrix with orthonormal columns from Gram-Schmidt on a Gaussian
/// matrix; for `k = n` this is Haar distributed.
fn orthonormal_columns<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Result<DenseMatrix<T>> {
    let cols: Vec<Vec<C<T>>> = (0..k).map(|_| gaussian_vec(rng, n)).collect();
    let q = orthonormalize(&cols)?;
    let mut m = DenseMatrix::zeros(n, k);
    for (j, c) in q.iter().enumerate() {
        m.set_column(j, c);
    }
    Ok(m)
}

pub fn haar_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, half: &[usize]) -> Result<Tensor<T>> {
    let n = half.iter().product();
    fold(&orthonormal_columns::<T, R>(rng, n, n)?, half, half)
}

/// Isometry `B` in `C^{rows x cols}` with `B^H *_M B = I`; needs
/// `prod(rows) >= prod(cols)`.
pub fn isometry<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: &[usize], cols: &[usize]) -> Result<Tensor<T>> {
    let (n, k) = (rows.iter().product(), cols.iter().product());
    fold(&orthonormal_columns::<T, R>(rng, n, k)?, rows, cols)
}

/// Hermitian part of a Gaussian square tensor.
pub fn hermitian<T: Real, R: Rng + ?Sized>(rng: &mut R, half: &[usize]) -> Result<Tensor<T>> {
    gaussian_square::<T, R>(rng, half)?.hermitian_part()
}

/// `U D U^H` with Haar `U` and Gaussian diagonal `D`.
pub fn normal<T: Real, R: Rng + ?Sized>(rng: &mut R, half: &[usize]) -> Result<Tensor<T>> {
    let n = half.iter().product();
    let u = orthonormal_columns::<T, R>(rng, n, n)?;
    let d: Vec<C<T>> = gaussian_vec(rng, n);
    let mut ud = u.clone();
    for i in 0..n {
        for j in 0..n {
            ud[(i, j)] *= d[j];
        }
    }
    fold(&ud.matmul(&u.conj_transpose())?, half, half)
}

/// Square tensor of numerical rank `r` (a sum of `r` Gaussian outer
/// products).
pub fn rank_deficient<T: Real, R: Rng + ?Sized>(rng: &mut R, half: &[usize], r: usize) -> Result<Tensor<T>> {
    let mut acc = crate::tensor::Tensor::zeros(half.iter().chain(half).copied().collect(), half.len())?;
    for _ in 0..r {
        let u = gaussian_tensor::<T, R>(rng, half, half.len())?;
        let v = gaussian_tensor::<T, R>(rng, half, half.len())?;
        acc = add(&acc, &outer_product(&u, &v)?)?;
    }
    Ok(acc)
}

/// Gaussian square tensor with condition number below `1e3`, redrawn until
/// one qualifies.
pub fn invertible<T: Real, R: Rng + ?Sized>(rng: &mut R, half: &[usize]) -> Result<Tensor<T>> {
    loop {
        let a = gaussian_square::<T, R>(rng, half)?;
        let s = crate::spectral::singular_values(&a)?;
        let smax = s.first().copied().unwrap_or_else(T::zero);
        let smin = s.last().copied().unwrap_or_else(T::zero);
        if smin > T::lit(1e-3) * smax {
            return Ok(a);
        }
    }
}

/// Diagonal square tensor with the given diagonal in row-major order.
pub fn diagonal<T: Real>(half: &[usize], diag: &[C<T>]) -> Result<Tensor<T>> {
    let n: usize = half.iter().product();
    let mut m = DenseMatrix::zeros(n, n);
    for (i, &d) in diag.iter().enumerate().take(n) {
        m[(i, i)] = d;
    }
    fold(&m, half, half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pinv::{classify_structure, rank};
    use crate::tensor::einstein_product;

    #[test]
    fn same_seed_same_tensor() {
        let a: Tensor<f64> = gaussian_square(&mut seeded(7), &[2, 3]).unwrap();
        let b: Tensor<f64> = gaussian_square(&mut seeded(7), &[2, 3]).unwrap();
        let c: Tensor<f64> = gaussian_square(&mut seeded(8), &[2, 3]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn generators_have_their_structure() {
        let mut rng = seeded(11);
        let u: Tensor<f64> = haar_unitary(&mut rng, &[2, 2]).unwrap();
        assert!(classify_structure(&u, 1e-10).unwrap().unitary);
        let h: Tensor<f64> = hermitian(&mut rng, &[3, 2]).unwrap();
        assert!(classify_structure(&h, 1e-12).unwrap().hermitian);
        let n: Tensor<f64> = normal(&mut rng, &[2, 2]).unwrap();
        let s = classify_structure(&n, 1e-10).unwrap();
        assert!(s.normal && !s.hermitian);
        let r: Tensor<f64> = rank_deficient(&mut rng, &[3, 2], 2).unwrap();
        assert_eq!(rank(&r).unwrap(), 2);
        let b: Tensor<f64> = isometry(&mut rng, &[3, 2], &[2]).unwrap();
        let g = einstein_product(&b.conj_transpose(), &b, 2).unwrap();
        assert!(g.distance(&Tensor::identity(&[2]).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn orthonormal_list_and_diagonal() {
        let mut rng = seeded(3);
        let list: Vec<Tensor<f64>> = orthonormal_list(&mut rng, &[2, 2], 3).unwrap();
        for (i, x) in list.iter().enumerate() {
            for (j, y) in list.iter().enumerate() {
                let ip = crate::tensor::inner_product(x, y).unwrap();
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((ip - C::new(e, 0.0)).norm() < 1e-12);
            }
        }
        let d = diagonal::<f64>(&[2], &[C::new(1.0, 0.0), C::new(0.0, 2.0)]).unwrap();
        assert_eq!(d.get(&[2, 2].into()).unwrap(), C::new(0.0, 2.0));
    }
}
