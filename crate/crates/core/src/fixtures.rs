//! Reference tensors with known spectra, inverses and norms.
//!
//! Fourth-order tensors are written the way they are usually tabulated: a
//! row of 2-D slices `A(:, :, k1, k2)`, each slice listing modes 1 and 2.
//! The slice order in the table is given explicitly by `labels`.

use crate::scalar::{Real, C};
use crate::tensor::Tensor;

/// Builds an `I1 x I2 x I1 x I2` tensor from a slice table. `rows[i1]`
/// concatenates, for each label `(k1, k2)` in order, the `I2` entries of
/// row `i1` of slice `A(:, :, k1, k2)`.
pub fn from_slice_table<T: Real>(
    half: [usize; 2],
    labels: &[(usize, usize)],
    rows: &[Vec<(f64, f64)>],
) -> Tensor<T> {
    let [i1, i2] = half;
    assert_eq!(rows.len(), i1, "one table row per first-mode index");
    assert_eq!(labels.len(), i1 * i2, "one slice per column multi-index");
    let mut data = vec![C::new(T::zero(), T::zero()); i1 * i2 * i1 * i2];
    for (s, &(k1, k2)) in labels.iter().enumerate() {
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), labels.len() * i2);
            for c in 0..i2 {
                let (re, im) = row[s * i2 + c];
                let flat = ((r * i2 + c) * i1 + (k1 - 1)) * i2 + (k2 - 1);
                data[flat] = C::new(T::lit(re), T::lit(im));
            }
        }
    }
    Tensor::new(vec![i1, i2, i1, i2], 2, data).expect("fixture tables are well formed")
}

fn real_row(v: &[f64]) -> Vec<(f64, f64)> {
    v.iter().map(|&x| (x, 0.0)).collect()
}

const LABELS_32_BY_FIRST: [(usize, usize); 6] = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)];
const LABELS_32_BY_SECOND: [(usize, usize); 6] = [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)];
const LABELS_22: [(usize, usize); 4] = [(1, 1), (2, 1), (1, 2), (2, 2)];

/// `2 x 3 x 3` left operand of the contraction example.
pub fn contraction_left<T: Real>() -> Tensor<T> {
    let slices = [
        [[4.0, -5.0, 4.0], [1.0, 3.0, 1.0]],
        [[6.0, 3.0, 1.0], [2.0, 4.0, 7.0]],
        [[3.0, 2.0, 3.0], [2.0, 1.0, 3.0]],
    ];
    Tensor::from_fn(vec![2, 3, 3], 1, |i| C::new(T::lit(slices[i[2]][i[0]][i[1]]), T::zero()))
        .expect("valid shape")
}

/// `3 x 3 x 2` right operand of the contraction example.
pub fn contraction_right<T: Real>() -> Tensor<T> {
    let slices = [
        [[1.0, 1.0, 4.0], [2.0, 4.0, 3.0], [2.0, 3.0, 1.0]],
        [[4.0, 3.0, 1.0], [-4.0, 0.0, 2.0], [0.0, 0.0, 1.0]],
    ];
    Tensor::from_fn(vec![3, 3, 2], 2, |i| C::new(T::lit(slices[i[2]][i[0]][i[1]]), T::zero()))
        .expect("valid shape")
}

/// Real diagonal `3 x 2 x 3 x 2` tensor whose unfolding is
/// `diag(2, 1, 3, -1, 8, 9)`.
pub fn t_diag<T: Real>() -> Tensor<T> {
    from_slice_table(
        [3, 2],
        &LABELS_32_BY_FIRST,
        &[
            real_row(&[2., 0., 0., 1., 0., 0., 0., 0., 0., 0., 0., 0.]),
            real_row(&[0., 0., 0., 0., 3., 0., 0., -1., 0., 0., 0., 0.]),
            real_row(&[0., 0., 0., 0., 0., 0., 0., 0., 8., 0., 0., 9.]),
        ],
    )
}

/// Rank-one `3 x 2 x 3 x 2` tensor: every entry with first row index
/// `(1, 1)` is one, everything else zero. Non-normal, spectrum `{0, 1}`.
pub fn ones_row<T: Real>() -> Tensor<T> {
    let row = real_row(&[1., 0., 1., 0., 1., 0., 1., 0., 1., 0., 1., 0.]);
    let zero = real_row(&[0.; 12]);
    from_slice_table([3, 2], &LABELS_32_BY_SECOND, &[row, zero.clone(), zero])
}

/// Complex diagonal `3 x 2 x 3 x 2` tensor with diagonal entries
/// `1+i, 4, i, 5+i, 3+i, 6+i` (row-major order).
pub fn complex_diagonal<T: Real>() -> Tensor<T> {
    let z = (0.0, 0.0);
    from_slice_table(
        [3, 2],
        &LABELS_32_BY_SECOND,
        &[
            vec![(1., 1.), z, z, z, z, z, z, (4., 0.), z, z, z, z],
            vec![z, z, (0., 1.), z, z, z, z, z, z, (5., 1.), z, z],
            vec![z, z, z, z, (3., 1.), z, z, z, z, z, z, (6., 1.)],
        ],
    )
}

/// Real `2 x 2 x 2 x 2` tensor with `||A|| ~ 19.9331` and `w(A) ~ 18.9853`.
pub fn norm_example<T: Real>() -> Tensor<T> {
    from_slice_table(
        [2, 2],
        &LABELS_22,
        &[real_row(&[2., 5., 7., 9., 0., 11., 1., -1.]), real_row(&[-5., 0., 5., 7., 4., 8., 9., 2.])],
    )
}

/// The four tensors whose numerical ranges are traced as plotting
/// examples: `k = 1` is `3 x 2 x 3 x 2` real, `k = 2..=4` are
/// `2 x 2 x 2 x 2` complex, and `k = 4` is Hermitian.
pub fn range_example<T: Real>(k: usize) -> Option<Tensor<T>> {
    let z = (0.0, 0.0);
    let t = match k {
        1 => {
            let lower = real_row(&[2., 1., 1., 1., 1., 2., -1., 1., 1., 1., 0., 1.]);
            from_slice_table(
                [3, 2],
                &LABELS_32_BY_FIRST,
                &[real_row(&[0., 1., 0., 1., 1., 1., 0., 1., 1., 1., 0., 1.]), lower.clone(), lower],
            )
        }
        2 => from_slice_table(
            [2, 2],
            &LABELS_22,
            &[
                vec![z, z, (1., -1.), (1., -1.), z, z, z, (1., 1.)],
                vec![(1., 1.), z, z, z, (1., -1.), (1., -1.), z, z],
            ],
        ),
        3 => from_slice_table(
            [2, 2],
            &LABELS_22,
            &[
                vec![(0., 1.), z, z, z, z, (1., 1.), z, z],
                vec![z, z, (1., 0.), z, z, z, z, (2., 1.)],
            ],
        ),
        4 => from_slice_table(
            [2, 2],
            &LABELS_22,
            &[
                vec![(1., 0.), (0., -3.), (0., 1.), (1., -1.), (0., 3.), (4., 0.), (2., 5.), (7., -1.)],
                vec![(0., -1.), (2., -5.), (1., 0.), (3., 1.), (1., 1.), (7., 1.), (3., -1.), z],
            ],
        ),
        _ => return None,
    };
    Some(t)
}
