//! Dense complex tensors with a row/column mode partition and the
//! Einstein-product algebra built on them.
//!
//! Entries are stored row-major (last mode varies fastest). A tensor in
//! `C^{I_1..I_M x J_1..J_L}` carries `row_modes = M`; the leading `M` modes
//! form the row block and the remaining `L` modes the column block. An
//! order-`N` tensor used as a vector (an argument of `A *_N X`) has
//! `row_modes = N` and an empty column block.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{cone, czero, is_finite, Real, C};

/// One-based position of an entry, one component per mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: Vec<usize>) -> Self {
        MultiIndex(indices)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Validates against `shape` and returns the zero-based components.
    pub(crate) fn zero_based(&self, shape: &[usize]) -> Result<Vec<usize>> {
        if self.0.len() != shape.len() {
            return Err(Error::IndexArity { expected: shape.len(), got: self.0.len() });
        }
        self.0
            .iter()
            .zip(shape)
            .enumerate()
            .map(|(component, (&value, &extent))| {
                if value == 0 || value > extent {
                    Err(Error::IndexOutOfRange { component, value, extent })
                } else {
                    Ok(value - 1)
                }
            })
            .collect()
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl<const K: usize> From<[usize; K]> for MultiIndex {
    fn from(v: [usize; K]) -> Self {
        MultiIndex(v.to_vec())
    }
}

/// A permutation of `{1, ..., M}` given by its image `(pi(1), ..., pi(M))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let m = image.len();
        let mut seen = vec![false; m];
        for &p in &image {
            if p == 0 || p > m {
                return Err(Error::InvalidPermutation(format!("{p} is outside [1, {m}]")));
            }
            if seen[p - 1] {
                return Err(Error::InvalidPermutation(format!("{p} appears twice")));
            }
            seen[p - 1] = true;
        }
        Ok(Permutation(image))
    }

    pub fn identity(m: usize) -> Self {
        Permutation((1..=m).collect())
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (k, &p) in self.0.iter().enumerate() {
            inv[p - 1] = k + 1;
        }
        Permutation(inv)
    }
}

/// Row-major strides of `shape`.
pub(crate) fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * shape[k + 1];
    }
    s
}

/// Advances a zero-based odometer in row-major order. Returns false after
/// the last position.
pub(crate) fn advance(index: &mut [usize], shape: &[usize]) -> bool {
    for k in (0..shape.len()).rev() {
        index[k] += 1;
        if index[k] < shape[k] {
            return true;
        }
        index[k] = 0;
    }
    false
}

/// Dense complex tensor with a declared row/column partition.
#[derive(Clone, PartialEq)]
pub struct Tensor<T: Real> {
    shape: Vec<usize>,
    row_modes: usize,
    data: Vec<C<T>>,
}

impl<T: Real> fmt::Debug for Tensor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tensor")
            .field("shape", &self.shape)
            .field("row_modes", &self.row_modes)
            .field("data", &self.data)
            .finish()
    }
}

fn check_shape(shape: &[usize], row_modes: usize) -> Result<usize> {
    if let Some(mode) = shape.iter().position(|&e| e == 0) {
        return Err(Error::ZeroExtent { mode });
    }
    if row_modes > shape.len() {
        return Err(Error::InvalidPartition { row_modes, modes: shape.len() });
    }
    Ok(shape.iter().product())
}

impl<T: Real> Tensor<T> {
    /// Builds a tensor from row-major entries.
    pub fn new(shape: Vec<usize>, row_modes: usize, data: Vec<C<T>>) -> Result<Self> {
        let expected = check_shape(&shape, row_modes)?;
        if data.len() != expected {
            return Err(Error::LengthMismatch { expected, got: data.len() });
        }
        if let Some(position) = data.iter().position(|z| !is_finite(*z)) {
            return Err(Error::NonFinite { position });
        }
        Ok(Tensor { shape, row_modes, data })
    }

    /// Builds a tensor with real entries.
    pub fn from_real(shape: Vec<usize>, row_modes: usize, data: &[T]) -> Result<Self> {
        Self::new(shape, row_modes, data.iter().map(|&x| C::new(x, T::zero())).collect())
    }

    /// Builds a tensor by evaluating `f` at every zero-based multi-index.
    pub fn from_fn(
        shape: Vec<usize>,
        row_modes: usize,
        mut f: impl FnMut(&[usize]) -> C<T>,
    ) -> Result<Self> {
        let len = check_shape(&shape, row_modes)?;
        let mut data = Vec::with_capacity(len);
        let mut idx = vec![0; shape.len()];
        loop {
            data.push(f(&idx));
            if !advance(&mut idx, &shape) {
                break;
            }
        }
        Self::new(shape, row_modes, data)
    }

    pub fn zeros(shape: Vec<usize>, row_modes: usize) -> Result<Self> {
        let len = check_shape(&shape, row_modes)?;
        Ok(Tensor { shape, row_modes, data: vec![czero(); len] })
    }

    /// The square identity tensor on `C^{half_shape}`: `I *_N X = X`.
    pub fn identity(half_shape: &[usize]) -> Result<Self> {
        let n: usize = check_shape(half_shape, half_shape.len())?;
        let mut shape = half_shape.to_vec();
        shape.extend_from_slice(half_shape);
        let mut data = vec![czero(); n * n];
        for i in 0..n {
            data[i * n + i] = cone();
        }
        Ok(Tensor { shape, row_modes: half_shape.len(), data })
    }

    /// Unit tensor of an order-`N` space with a one at `index`.
    pub fn basis(shape: &[usize], index: &MultiIndex) -> Result<Self> {
        let mut t = Self::zeros(shape.to_vec(), shape.len())?;
        let zb = index.zero_based(shape)?;
        let flat = zb.iter().zip(strides(shape)).map(|(i, s)| i * s).sum::<usize>();
        t.data[flat] = cone();
        Ok(t)
    }

    /// Wraps data already known to be valid.
    pub(crate) fn from_parts(shape: Vec<usize>, row_modes: usize, data: Vec<C<T>>) -> Self {
        debug_assert_eq!(data.len(), shape.iter().product::<usize>());
        Tensor { shape, row_modes, data }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn row_modes(&self) -> usize {
        self.row_modes
    }

    /// Number of modes.
    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn row_shape(&self) -> &[usize] {
        &self.shape[..self.row_modes]
    }

    pub fn col_shape(&self) -> &[usize] {
        &self.shape[self.row_modes..]
    }

    /// Product of the row-block extents.
    pub fn row_len(&self) -> usize {
        self.row_shape().iter().product()
    }

    /// Product of the column-block extents.
    pub fn col_len(&self) -> usize {
        self.col_shape().iter().product()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Row-major entries.
    pub fn data(&self) -> &[C<T>] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C<T>> {
        self.data
    }

    pub fn get(&self, index: &MultiIndex) -> Result<C<T>> {
        let zb = index.zero_based(&self.shape)?;
        let flat = zb.iter().zip(strides(&self.shape)).map(|(i, s)| i * s).sum::<usize>();
        Ok(self.data[flat])
    }

    /// Same entries under a different partition.
    pub fn with_row_modes(&self, row_modes: usize) -> Result<Self> {
        check_shape(&self.shape, row_modes)?;
        Ok(Tensor { shape: self.shape.clone(), row_modes, data: self.data.clone() })
    }

    /// Even-order square: row block equals column block.
    pub fn is_square(&self) -> bool {
        self.row_shape() == self.col_shape()
    }

    pub(crate) fn ensure_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { row: self.row_shape().to_vec(), col: self.col_shape().to_vec() })
        }
    }

    pub(crate) fn ensure_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.shape != other.shape || self.row_modes != other.row_modes {
            return Err(Error::ShapeMismatch(format!(
                "{what}: {:?}/{} vs {:?}/{}",
                self.shape, self.row_modes, other.shape, other.row_modes
            )));
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Tensor {
            shape: self.shape.clone(),
            row_modes: self.row_modes,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, alpha: C<T>) -> Self {
        self.map(|z| z * alpha)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Permutes modes: the entry at `(i_1, ..., i_M)` lands at
    /// `(i_{pi(1)}, ..., i_{pi(M)})` and the result has extents
    /// `(I_{pi(1)}, ..., I_{pi(M)})`. The partition count is kept.
    pub fn pi_transpose(&self, pi: &Permutation) -> Result<Self> {
        if pi.len() != self.order() {
            return Err(Error::InvalidPermutation(format!(
                "length {} for a tensor with {} modes",
                pi.len(),
                self.order()
            )));
        }
        Ok(self.permute_modes(pi.image(), self.row_modes))
    }

    /// `image` is one-based; result mode `k` takes source mode `image[k]`.
    fn permute_modes(&self, image: &[usize], row_modes: usize) -> Self {
        let src_strides = strides(&self.shape);
        let shape: Vec<usize> = image.iter().map(|&p| self.shape[p - 1]).collect();
        // stride in the source for each result mode
        let walk: Vec<usize> = image.iter().map(|&p| src_strides[p - 1]).collect();
        let mut data = Vec::with_capacity(self.data.len());
        let mut idx = vec![0; shape.len()];
        loop {
            let src = idx.iter().zip(&walk).map(|(i, s)| i * s).sum::<usize>();
            data.push(self.data[src]);
            if !advance(&mut idx, &shape) {
                break;
            }
        }
        Tensor { shape, row_modes, data }
    }

    /// Swaps the row and column blocks without conjugating.
    pub fn transpose(&self) -> Self {
        let m = self.row_modes;
        let l = self.order() - m;
        let image: Vec<usize> = (m + 1..=m + l).chain(1..=m).collect();
        self.permute_modes(&image, l)
    }

    /// `A^H`: blocks swapped across the partition, entries conjugated.
    pub fn conj_transpose(&self) -> Self {
        let mut t = self.transpose();
        t.data.iter_mut().for_each(|z| *z = z.conj());
        t
    }

    /// `(A + A^H) / 2`.
    pub fn hermitian_part(&self) -> Result<Self> {
        self.ensure_square()?;
        let half = T::lit(0.5);
        let ah = self.conj_transpose();
        Ok(self.zip_with(&ah, |a, b| (a + b) * half))
    }

    /// `(A - A^H) / 2`.
    pub fn skew_hermitian_part(&self) -> Result<Self> {
        self.ensure_square()?;
        let half = T::lit(0.5);
        let ah = self.conj_transpose();
        Ok(self.zip_with(&ah, |a, b| (a - b) * half))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C<T>, C<T>) -> C<T>) -> Self {
        Tensor {
            shape: self.shape.clone(),
            row_modes: self.row_modes,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Frobenius norm of `self - other`; shapes must agree.
    pub fn distance(&self, other: &Self) -> Result<T> {
        self.ensure_same_shape(other, "distance")?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm_sqr()).sum::<T>().sqrt())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.ensure_same_shape(other, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }

    /// `A^H == A` to `tol * max(1, ||A||_F)`.
    pub fn is_hermitian(&self, tol: T) -> bool {
        self.is_square() && self.hermitian_defect() <= tol * self.frobenius_norm().max(T::one())
    }

    pub(crate) fn hermitian_defect(&self) -> T {
        let ah = self.conj_transpose();
        self.distance(&ah).unwrap_or_else(|_| T::infinity())
    }

    pub fn is_zero(&self, tol: T) -> bool {
        self.data.iter().all(|z| z.norm() <= tol)
    }
}

/// `A *_N B`: contracts the last `n` modes of `a` with the first `n` modes
/// of `b`. The result has `a`'s leading modes followed by `b`'s trailing
/// modes, partitioned after `a`'s leading block.
pub fn einstein_product<T: Real>(a: &Tensor<T>, b: &Tensor<T>, n: usize) -> Result<Tensor<T>> {
    if n > a.order() || n > b.order() {
        return Err(Error::ShapeMismatch(format!(
            "cannot contract {n} modes of tensors with {} and {} modes",
            a.order(),
            b.order()
        )));
    }
    let lead = a.order() - n;
    if a.shape[lead..] != b.shape[..n] {
        return Err(Error::ShapeMismatch(format!(
            "contracted extents {:?} vs {:?}",
            &a.shape[lead..],
            &b.shape[..n]
        )));
    }
    let rows: usize = a.shape[..lead].iter().product();
    let inner: usize = a.shape[lead..].iter().product();
    let cols: usize = b.shape[n..].iter().product();
    let mut data = vec![czero::<T>(); rows * cols];
    for i in 0..rows {
        let out = &mut data[i * cols..(i + 1) * cols];
        for k in 0..inner {
            let aik = a.data[i * inner + k];
            if aik.re == T::zero() && aik.im == T::zero() {
                continue;
            }
            let brow = &b.data[k * cols..(k + 1) * cols];
            for (o, &bkj) in out.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
    let mut shape = a.shape[..lead].to_vec();
    shape.extend_from_slice(&b.shape[n..]);
    Ok(Tensor::from_parts(shape, lead, data))
}

/// Product of a square tensor with a matching tensor, contracting the whole
/// column block of `a`.
pub fn apply<T: Real>(a: &Tensor<T>, x: &Tensor<T>) -> Result<Tensor<T>> {
    einstein_product(a, x, a.order() - a.row_modes())
}

/// `<X, Y> = Y^H *_N X = sum conj(y) x`.
pub fn inner_product<T: Real>(x: &Tensor<T>, y: &Tensor<T>) -> Result<C<T>> {
    if x.shape != y.shape {
        return Err(Error::ShapeMismatch(format!("inner product of {:?} and {:?}", x.shape, y.shape)));
    }
    Ok(x.data.iter().zip(&y.data).fold(czero(), |acc, (&a, &b)| acc + b.conj() * a))
}

/// Entrywise `alpha * A + beta * B`.
pub fn linear_combine<T: Real>(alpha: C<T>, a: &Tensor<T>, beta: C<T>, b: &Tensor<T>) -> Result<Tensor<T>> {
    a.ensure_same_shape(b, "linear_combine")?;
    Ok(a.zip_with(b, |x, y| alpha * x + beta * y))
}

/// Entrywise sum.
pub fn add<T: Real>(a: &Tensor<T>, b: &Tensor<T>) -> Result<Tensor<T>> {
    linear_combine(cone(), a, cone(), b)
}

/// Entrywise difference.
pub fn sub<T: Real>(a: &Tensor<T>, b: &Tensor<T>) -> Result<Tensor<T>> {
    linear_combine(cone(), a, -cone::<T>(), b)
}

/// Rank-one square tensor `U *_N V^H` with entries `u[i] conj(v[j])`.
pub fn outer_product<T: Real>(u: &Tensor<T>, v: &Tensor<T>) -> Result<Tensor<T>> {
    if u.shape != v.shape {
        return Err(Error::ShapeMismatch(format!("outer product of {:?} and {:?}", u.shape, v.shape)));
    }
    let n = u.len();
    let mut data = Vec::with_capacity(n * n);
    for &ui in &u.data {
        data.extend(v.data.iter().map(|vj| ui * vj.conj()));
    }
    let mut shape = u.shape.clone();
    shape.extend_from_slice(&v.shape);
    Ok(Tensor::from_parts(shape, u.order(), data))
}

/// Block-diagonal sum `[A O; O B]` of two even-order square tensors.
///
/// The blocks are stacked along the leading row mode and the leading column
/// mode, so every other extent of `a` and `b` must agree. With row-major
/// flattening the unfolding of the result is exactly
/// `diag(unfold(A), unfold(B))`.
pub fn direct_sum<T: Real>(a: &Tensor<T>, b: &Tensor<T>) -> Result<Tensor<T>> {
    a.ensure_square()?;
    b.ensure_square()?;
    let n = a.row_modes;
    if b.row_modes != n || n == 0 {
        return Err(Error::ShapeMismatch(format!(
            "direct sum needs equal nonzero orders, got {} and {}",
            a.order(),
            b.order()
        )));
    }
    if a.shape[1..n] != b.shape[1..n] {
        return Err(Error::ShapeMismatch(format!(
            "direct sum needs equal trailing extents, got {:?} and {:?}",
            a.row_shape(),
            b.row_shape()
        )));
    }
    let (na, nb) = (a.row_len(), b.row_len());
    let dim = na + nb;
    let mut data = vec![czero::<T>(); dim * dim];
    for i in 0..na {
        data[i * dim..i * dim + na].copy_from_slice(&a.data[i * na..(i + 1) * na]);
    }
    for i in 0..nb {
        let r = na + i;
        data[r * dim + na..(r + 1) * dim].copy_from_slice(&b.data[i * nb..(i + 1) * nb]);
    }
    let mut half = a.row_shape().to_vec();
    half[0] += b.shape[0];
    let mut shape = half.clone();
    shape.extend_from_slice(&half);
    Ok(Tensor::from_parts(shape, n, data))
}
