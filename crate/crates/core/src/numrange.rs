//! Numerical range `W(A) = { <A *_N X, X> : ||X|| = 1 }` of an even-order
//! square tensor.
//!
//! Everything here is built on the support function
//! `h(theta) = max Re(e^{i theta} W(A)) = lambda_max(H(e^{i theta} A))`.
//! The maximizing unit eigentensor `X_theta` gives the boundary point
//! `<A *_N X_theta, X_theta>`, and the half-planes
//! `Re(e^{i theta} z) <= h(theta)` over a grid of angles enclose `W(A)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{dot_c, DenseMatrix};
use crate::scalar::{cis, creal, Real, C};
use crate::spectral::{inverse, top_eigenpair};
use crate::tensor::{apply, inner_product, Tensor};
use crate::unfold::{fold_vector, unfold};

/// Default angular grid size.
pub const DEFAULT_N_THETA: usize = 500;

/// One traced boundary sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample<T: Real> {
    pub theta: T,
    /// `lambda_max(H(e^{i theta} A))`.
    pub support: T,
    /// `<A *_N X_theta, X_theta>`.
    pub point: C<T>,
}

/// Boundary samples ordered by angle.
#[derive(Debug, Clone, PartialEq)]
pub struct Boundary<T: Real> {
    pub samples: Vec<BoundarySample<T>>,
    /// Frobenius norm of the source tensor, for tolerance scaling.
    pub source_norm: T,
}

impl<T: Real> Boundary<T> {
    pub fn points(&self) -> Vec<C<T>> {
        self.samples.iter().map(|s| s.point).collect()
    }

    /// Largest violation `Re(e^{i theta_k} z_j) - h(theta_k)` over all pairs
    /// of samples. Nonpositive up to rounding for a convex range.
    pub fn convexity_defect(&self) -> T {
        let mut worst = T::neg_infinity();
        for s in &self.samples {
            let rot = cis(s.theta);
            for p in &self.samples {
                worst = worst.max((rot * p.point).re - s.support);
            }
        }
        worst
    }

    /// Every sample point lies in every other sample's supporting
    /// half-plane, up to `slack`.
    pub fn is_convexity_certified(&self, slack: T) -> bool {
        self.convexity_defect() <= slack
    }

    /// Largest `|Re(e^{i theta} z) - h(theta)|` over the samples.
    pub fn support_defect(&self) -> T {
        self.samples
            .iter()
            .map(|s| ((cis(s.theta) * s.point).re - s.support).abs())
            .fold(T::zero(), T::max)
    }

    /// Sampled half-plane membership test using this boundary's own angles.
    pub fn encloses(&self, z: C<T>, tol: T) -> bool {
        self.samples.iter().all(|s| (cis(s.theta) * z).re <= s.support + tol)
    }
}

/// `theta_k = 2 pi k / n` for `k = 0..n`.
pub fn theta_grid<T: Real>(n: usize) -> Vec<T> {
    (0..n).map(|k| T::TAU() * T::lit(k as f64) / T::lit(n as f64)).collect()
}

/// Default membership tolerance `1e-6 (1 + ||A||_F)`.
pub fn default_tolerance<T: Real>(a: &Tensor<T>) -> T {
    T::lit(1e-6) * (T::one() + a.frobenius_norm())
}

/// `<A *_N X, X> / ||X||^2`.
pub fn rayleigh<T: Real>(a: &Tensor<T>, x: &Tensor<T>) -> Result<C<T>> {
    a.ensure_square()?;
    let nn = inner_product(x, x)?.re;
    if nn == T::zero() {
        return Err(Error::ZeroTensor);
    }
    Ok(inner_product(&apply(a, x)?, x)? / nn)
}

/// Support-function evaluator bound to one tensor; the unfolding is
/// computed once.
#[derive(Debug, Clone)]
pub struct SupportFunction<'a, T: Real> {
    tensor: &'a Tensor<T>,
    matrix: DenseMatrix<T>,
}

impl<'a, T: Real> SupportFunction<'a, T> {
    pub fn new(a: &'a Tensor<T>) -> Result<Self> {
        a.ensure_square()?;
        Ok(SupportFunction { tensor: a, matrix: unfold(a) })
    }

    /// `(h(theta), flat maximizer)`.
    fn eval_flat(&self, theta: T) -> Result<(T, Vec<C<T>>)> {
        // the Jacobi solver only reads the Hermitian part of its input
        top_eigenpair(&self.matrix.scale(cis(theta)))
            .map_err(|e| Error::Sampling { theta: theta.to_f64_lossy(), source: Box::new(e) })
    }

    pub fn value(&self, theta: T) -> Result<T> {
        Ok(self.eval_flat(theta)?.0)
    }

    /// Support value and a unit maximizing eigentensor.
    pub fn eval(&self, theta: T) -> Result<(T, Tensor<T>)> {
        let (h, x) = self.eval_flat(theta)?;
        Ok((h, fold_vector(x, self.tensor.row_shape())?))
    }

    pub fn sample(&self, theta: T) -> Result<BoundarySample<T>> {
        let (support, x) = self.eval_flat(theta)?;
        let point = dot_c(&x, &self.matrix.matvec(&x));
        Ok(BoundarySample { theta, support, point })
    }
}

/// `(lambda_max(H(e^{i theta} A)), X_theta)`.
pub fn support_function<T: Real>(a: &Tensor<T>, theta: T) -> Result<(T, Tensor<T>)> {
    SupportFunction::new(a)?.eval(theta)
}

fn check_grid(n_theta: usize) -> Result<()> {
    if n_theta < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 angles, got {n_theta}")));
    }
    Ok(())
}

/// Traces `n_theta` boundary points at `theta_k = 2 pi k / n_theta`.
/// Samples are computed in parallel; the result is identical to
/// [`boundary_serial`].
pub fn boundary<T: Real>(a: &Tensor<T>, n_theta: usize) -> Result<Boundary<T>> {
    check_grid(n_theta)?;
    let f = SupportFunction::new(a)?;
    let samples = theta_grid::<T>(n_theta)
        .into_par_iter()
        .map(|t| f.sample(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Boundary { samples, source_norm: a.frobenius_norm() })
}

pub fn boundary_serial<T: Real>(a: &Tensor<T>, n_theta: usize) -> Result<Boundary<T>> {
    check_grid(n_theta)?;
    let f = SupportFunction::new(a)?;
    let samples = theta_grid::<T>(n_theta).into_iter().map(|t| f.sample(t)).collect::<Result<Vec<_>>>()?;
    Ok(Boundary { samples, source_norm: a.frobenius_norm() })
}

/// Support values on the uniform grid, reusable for many membership
/// queries.
#[derive(Debug, Clone)]
pub struct SupportGrid<T: Real> {
    pub thetas: Vec<T>,
    pub values: Vec<T>,
}

impl<T: Real> SupportGrid<T> {
    pub fn new(a: &Tensor<T>, n_theta: usize) -> Result<Self> {
        check_grid(n_theta)?;
        let f = SupportFunction::new(a)?;
        let thetas = theta_grid::<T>(n_theta);
        let values = thetas.par_iter().map(|&t| f.value(t)).collect::<Result<Vec<_>>>()?;
        Ok(SupportGrid { thetas, values })
    }

    /// `min_k h(theta_k) - Re(e^{i theta_k} z)`: positive inside, negative
    /// outside the circumscribed polygon.
    pub fn margin(&self, z: C<T>) -> T {
        self.thetas
            .iter()
            .zip(&self.values)
            .map(|(&t, &h)| h - (cis(t) * z).re)
            .fold(T::infinity(), T::min)
    }

    pub fn contains(&self, z: C<T>, tol: T) -> bool {
        self.margin(z) >= -tol
    }

    pub fn classify(&self, z: C<T>, tol: T) -> Membership {
        let m = self.margin(z);
        if m > tol {
            Membership::Inside
        } else if m < -tol {
            Membership::Outside
        } else {
            Membership::Boundary
        }
    }

    /// Largest support value on the grid.
    pub fn max_value(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }
}

/// Three-way membership verdict; `Boundary` means within tolerance of the
/// edge, where the sampled test cannot decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

/// Sampled certificate that `z` lies in `W(A)`:
/// `Re(e^{i theta} z) <= h(theta) + tol` at every grid angle.
pub fn contains_point<T: Real>(a: &Tensor<T>, z: C<T>, n_theta: usize, tol: T) -> Result<bool> {
    Ok(SupportGrid::new(a, n_theta)?.contains(z, tol))
}

pub fn membership<T: Real>(a: &Tensor<T>, z: C<T>, n_theta: usize, tol: T) -> Result<Membership> {
    Ok(SupportGrid::new(a, n_theta)?.classify(z, tol))
}

/// `w(A) = max_theta h(theta)`. Each local maximum of the grid values (up
/// to eight of them, largest first) is polished by a golden-section search
/// over its two neighbouring cells, and the largest value seen is returned,
/// so the result never falls below the grid maximum.
pub fn numerical_radius<T: Real>(a: &Tensor<T>, n_theta: usize) -> Result<T> {
    let grid = SupportGrid::new(a, n_theta)?;
    let f = SupportFunction::new(a)?;
    let v = &grid.values;
    let n = v.len();
    let mut peaks: Vec<usize> = (0..n).filter(|&k| v[k] >= v[(k + n - 1) % n] && v[k] >= v[(k + 1) % n]).collect();
    peaks.sort_by(|&i, &j| v[j].partial_cmp(&v[i]).unwrap_or(std::cmp::Ordering::Equal).then(i.cmp(&j)));
    peaks.truncate(8);
    let step = T::TAU() / T::lit(n_theta as f64);
    let mut best = grid.max_value();
    for k in peaks {
        let t = grid.thetas[k];
        best = best.max(golden_section_max(|x| f.value(x), t - step, t + step)?);
    }
    Ok(best.max(T::zero()))
}

fn golden_section_max<T: Real>(f: impl Fn(T) -> Result<T>, mut lo: T, mut hi: T) -> Result<T> {
    let ratio = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    let tol = T::epsilon().sqrt() * T::lit(1e-2);
    let mut iterations = 0;
    while hi - lo > tol && iterations < 200 {
        iterations += 1;
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(f1.max(f2))
}

/// Unitarity via numerical radii: an invertible `A` is unitary exactly when
/// `w(A) <= 1` and `w(A^{-1}) <= 1`.
pub fn classify_unitary<T: Real>(a: &Tensor<T>, n_theta: usize, tol: T) -> Result<bool> {
    let inv = inverse(a)?;
    Ok(numerical_radius(a, n_theta)? <= T::one() + tol && numerical_radius(&inv, n_theta)? <= T::one() + tol)
}

/// `e^{i theta}`-rotated copy of `A`.
pub fn rotate<T: Real>(a: &Tensor<T>, theta: T) -> Tensor<T> {
    a.scale(cis(theta))
}

/// `alpha A + beta I`.
pub fn affine<T: Real>(a: &Tensor<T>, alpha: C<T>, beta: C<T>) -> Result<Tensor<T>> {
    let id = Tensor::identity(a.row_shape())?;
    crate::tensor::linear_combine(alpha, a, beta, &id)
}

#[allow(dead_code)]
fn _assert_send_sync<T: Real>() {
    fn is<X: Send + Sync>() {}
    is::<Tensor<T>>();
    is::<Boundary<T>>();
    let _ = creal::<T>;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::t_diag;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn identity_range_is_a_point() {
        let id = Tensor::<f64>::identity(&[2, 2]).unwrap();
        let b = boundary(&id, 16).unwrap();
        assert!(b.points().iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-14));
        assert!((numerical_radius(&id, 64).unwrap() - 1.0).abs() < 1e-14);
        let x = Tensor::from_real(vec![2, 2], 2, &[1.0, -2.0, 0.5, 3.0]).unwrap();
        assert!((rayleigh(&id, &x).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn scalar_multiple_of_identity_support() {
        let alpha = c(0.3, -1.2);
        let a = Tensor::<f64>::identity(&[3]).unwrap().scale(alpha);
        for theta in theta_grid::<f64>(12) {
            let (h, _) = support_function(&a, theta).unwrap();
            assert!((h - (cis(theta) * alpha).re).abs() < 1e-14);
        }
    }

    #[test]
    fn t_diag_support_and_radius() {
        let a = t_diag::<f64>();
        let (h, x) = support_function(&a, 0.0).unwrap();
        assert!((h - 9.0).abs() < 1e-14);
        assert!((x.get(&[3, 2].into()).unwrap().norm() - 1.0).abs() < 1e-14);
        let (h, _) = support_function(&a, std::f64::consts::PI).unwrap();
        assert!((h - 1.0).abs() < 1e-13);
        assert!((numerical_radius(&a, 500).unwrap() - 9.0).abs() < 1e-12);
    }

    #[test]
    fn t_diag_boundary_is_a_real_segment() {
        let b = boundary(&t_diag::<f64>(), 500).unwrap();
        let pts = b.points();
        assert!(pts.iter().all(|z| z.im.abs() < 1e-8 && z.re >= -1.0 - 1e-8 && z.re <= 9.0 + 1e-8));
        let lo = pts.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        assert!((lo + 1.0).abs() < 1e-8 && (hi - 9.0).abs() < 1e-8);
        assert!(b.is_convexity_certified(1e-6));
    }

    #[test]
    fn t_diag_membership() {
        let a = t_diag::<f64>();
        let v = 1.0 / 6f64.sqrt();
        let x = Tensor::from_real(vec![3, 2], 2, &[v; 6]).unwrap();
        let r = rayleigh(&a, &x).unwrap();
        assert!((r - c(11.0 / 3.0, 0.0)).norm() < 1e-14);
        let tol = default_tolerance(&a);
        assert!(contains_point(&a, r, 500, tol).unwrap());
        let outside = c(a.frobenius_norm() + 1.0, 0.0);
        assert!(!contains_point(&a, outside, 500, tol).unwrap());
        assert_eq!(membership(&a, outside, 500, tol).unwrap(), Membership::Outside);
        assert_eq!(membership(&a, c(9.0, 0.0), 500, tol).unwrap(), Membership::Boundary);
    }

    #[test]
    fn rayleigh_rejects_zero() {
        let a = t_diag::<f64>();
        let z = Tensor::zeros(vec![3, 2], 2).unwrap();
        assert!(matches!(rayleigh(&a, &z), Err(Error::ZeroTensor)));
    }

    #[test]
    fn boundary_needs_three_angles() {
        assert!(boundary(&t_diag::<f64>(), 2).is_err());
    }

    #[test]
    fn unitary_classification_of_simple_cases() {
        let id = Tensor::<f64>::identity(&[2]).unwrap();
        assert!(classify_unitary(&id, 64, 1e-8).unwrap());
        assert!(!classify_unitary(&t_diag::<f64>(), 64, 1e-8).unwrap());
        assert!(classify_unitary(&crate::fixtures::ones_row::<f64>(), 64, 1e-8).is_err());
    }
}
