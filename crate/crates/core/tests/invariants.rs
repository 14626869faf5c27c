use numrange_core::tensor::{add, linear_combine};
use numrange_core::unfold::{linear_index, multi_index};
use numrange_core::{
    apply, classify_structure, classify_unitary, direct_sum, eigenvalues, einstein_product, fold, hermitian_eigensystem,
    inner_product, inverse, is_ep, moore_penrose, multisets_match, numerical_radius, outer_product,
    polar_decompose, random, singular_values, spectral_norm, spectral_radius, support_function, unfold, Complex64,
    MultiIndex, Permutation, Tensor64,
};
use proptest::prelude::*;

const HALVES: [&[usize]; 4] = [&[2, 2], &[3, 2], &[4], &[2, 1, 2]];

fn entries(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b)), n)
}

fn tensor(shape: Vec<usize>, row_modes: usize) -> impl Strategy<Value = Tensor64> {
    let n = shape.iter().product();
    entries(n).prop_map(move |d| Tensor64::new(shape.clone(), row_modes, d).unwrap())
}

/// A square tensor together with a vector tensor of matching shape.
fn square_and_vector() -> impl Strategy<Value = (Tensor64, Tensor64)> {
    (0..HALVES.len()).prop_flat_map(|k| {
        let h = HALVES[k];
        (tensor([h, h].concat(), h.len()), tensor(h.to_vec(), h.len()))
    })
}

fn scalar() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inner_product_is_hermitian_and_positive(x in tensor(vec![3, 2], 2), y in tensor(vec![3, 2], 2)) {
        let xy = inner_product(&x, &y).unwrap();
        let yx = inner_product(&y, &x).unwrap();
        prop_assert!((xy - yx.conj()).norm() < 1e-13);
        let xx = inner_product(&x, &x).unwrap();
        prop_assert!(xx.im == 0.0 && xx.re >= 0.0);
        prop_assert!((xx.re.sqrt() - x.frobenius_norm()).abs() < 1e-13);
    }

    #[test]
    fn norm_is_homogeneous(x in tensor(vec![2, 3], 2), alpha in scalar()) {
        let lhs = x.scale(alpha).frobenius_norm();
        prop_assert!((lhs - alpha.norm() * x.frobenius_norm()).abs() < 1e-12 * (1.0 + lhs));
    }

    #[test]
    fn identity_and_linear_combination((a, x) in square_and_vector()) {
        let id = Tensor64::identity(x.shape()).unwrap();
        prop_assert_eq!(apply(&id, &x).unwrap(), x.clone());
        prop_assert_eq!(unfold(&id), numrange_core::DenseMatrix::identity(x.len()));
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        prop_assert_eq!(linear_combine(one, &a, zero, &id).unwrap(), a.clone());
        prop_assert!(linear_combine(zero, &a, zero, &id).unwrap().is_zero(0.0));
    }

    #[test]
    fn outer_product_contracts_as_rank_one((_, u) in square_and_vector(), seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let v = random::gaussian_tensor(&mut rng, u.shape(), u.order()).unwrap();
        let x = random::gaussian_tensor(&mut rng, u.shape(), u.order()).unwrap();
        let lhs = apply(&outer_product(&u, &v).unwrap(), &x).unwrap();
        let rhs = u.scale(inner_product(&x, &v).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
        let unit_u = u.scale(Complex64::new(1.0 / u.frobenius_norm(), 0.0));
        let p = outer_product(&unit_u, &unit_u).unwrap();
        let pp = einstein_product(&p, &p, u.order()).unwrap();
        prop_assert!(pp.max_abs_diff(&p).unwrap() < 1e-12);
    }

    #[test]
    fn hermitian_parts((a, _) in square_and_vector()) {
        let h = a.hermitian_part().unwrap();
        let s = a.skew_hermitian_part().unwrap();
        prop_assert!(add(&h, &s).unwrap().max_abs_diff(&a).unwrap() < 1e-15);
        prop_assert_eq!(h.conj_transpose(), h.clone());
        prop_assert!(s.conj_transpose().distance(&s.scale(Complex64::new(-1.0, 0.0))).unwrap() == 0.0);
        prop_assert_eq!(h.hermitian_part().unwrap(), h.clone());
        prop_assert!(h.skew_hermitian_part().unwrap().is_zero(0.0));
    }

    #[test]
    fn pi_transpose_matches_index_remapping(a in tensor(vec![2, 3, 2], 1), which in 0usize..6) {
        let perms = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
        let pi = Permutation::new(perms[which].to_vec()).unwrap();
        let b = a.pi_transpose(&pi).unwrap();
        for i in 1..=2 {
            for j in 1..=3 {
                for k in 1..=2 {
                    let src = [i, j, k];
                    let dst: Vec<usize> = pi.image().iter().map(|&p| src[p - 1]).collect();
                    prop_assert_eq!(a.get(&src.into()).unwrap(), b.get(&MultiIndex::new(dst)).unwrap());
                }
            }
        }
        let back = b.pi_transpose(&pi.inverse()).unwrap();
        prop_assert_eq!(back.data(), a.data());
    }

    #[test]
    fn fold_unfold_round_trip(a in tensor(vec![2, 3, 2, 3], 2)) {
        let m = unfold(&a);
        prop_assert_eq!(fold(&m, &[2, 3], &[2, 3]).unwrap(), a.clone());
        prop_assert_eq!(unfold(&fold(&m, &[2, 3], &[2, 3]).unwrap()), m.clone());
        prop_assert_eq!(m.frobenius_norm(), a.frobenius_norm());
        prop_assert!(fold(&m, &[3, 3], &[2, 2]).is_err());
    }

    #[test]
    fn direct_sum_spectrum_is_the_union((a, _) in square_and_vector(), seed in any::<u64>()) {
        let b = random::gaussian_square(&mut random::seeded(seed), a.row_shape()).unwrap();
        let s = direct_sum(&a, &b).unwrap();
        let mut expected = eigenvalues(&a, false).unwrap().values;
        expected.extend(eigenvalues(&b, false).unwrap().values);
        prop_assert!(multisets_match(&eigenvalues(&s, false).unwrap().values, &expected, 1e-8));
    }

    #[test]
    fn hermitian_solvers_agree((a, _) in square_and_vector()) {
        let h = a.hermitian_part().unwrap();
        let fast: Vec<Complex64> = hermitian_eigensystem(&h).unwrap().values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        prop_assert!(multisets_match(&fast, &eigenvalues(&h, false).unwrap().values, 1e-8));
    }

    #[test]
    fn normal_tensors_have_singular_values_equal_to_eigenvalue_moduli(seed in any::<u64>(), k in 0usize..4) {
        let a = random::normal(&mut random::seeded(seed), HALVES[k]).unwrap();
        let mut moduli: Vec<f64> = eigenvalues(&a, false).unwrap().values.iter().map(|z| z.norm()).collect();
        moduli.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (s, m) in singular_values(&a).unwrap().iter().zip(moduli) {
            prop_assert!((s - m).abs() < 1e-8);
        }
    }

    #[test]
    fn polar_factor_and_norm_bounds((a, x) in square_and_vector()) {
        let norm = spectral_norm(&a).unwrap();
        let unit = x.scale(Complex64::new(1.0 / x.frobenius_norm(), 0.0));
        prop_assert!(apply(&a, &unit).unwrap().frobenius_norm() <= norm * (1.0 + 1e-12));
        if let Ok((u, p)) = polar_decompose(&a) {
            prop_assert!(classify_structure(&u, 1e-9).unwrap().unitary);
            let pe: Vec<Complex64> = eigenvalues(&p, false).unwrap().values;
            let sv: Vec<Complex64> = singular_values(&a).unwrap().iter().map(|&s| Complex64::new(s, 0.0)).collect();
            prop_assert!(multisets_match(&pe, &sv, 1e-8));
        }
    }

    #[test]
    fn inverse_agrees_with_pseudoinverse((a, _) in square_and_vector()) {
        if let Ok(inv) = inverse(&a) {
            let p = moore_penrose(&a).unwrap();
            prop_assert!(p.distance(&inv).unwrap() <= 1e-8 * (1.0 + inv.frobenius_norm()));
        }
    }

    #[test]
    fn spectral_radius_below_numerical_radius((a, _) in square_and_vector()) {
        let w = numerical_radius(&a, 180).unwrap();
        prop_assert!(spectral_radius(&a).unwrap() <= w + 1e-6);
        let coarse = numerical_radius(&a, 90).unwrap();
        prop_assert!(coarse <= w + 1e-12 * (1.0 + w));
    }

    #[test]
    fn hermitian_tensors_are_ep(seed in any::<u64>(), k in 0usize..4) {
        let h = random::hermitian(&mut random::seeded(seed), HALVES[k]).unwrap();
        prop_assert!(is_ep(&h, 1e-8).unwrap());
        let u = random::haar_unitary(&mut random::seeded(seed), HALVES[k]).unwrap();
        prop_assert!(is_ep(&u, 1e-8).unwrap());
        prop_assert!(classify_unitary(&u, 120, 1e-6).unwrap());
    }

    #[test]
    fn scalar_tensor_range_is_a_point(alpha in scalar(), k in 0usize..4, theta in 0.0..std::f64::consts::TAU) {
        let a = Tensor64::identity(HALVES[k]).unwrap().scale(alpha);
        let (h, x) = support_function(&a, theta).unwrap();
        let rot = Complex64::new(theta.cos(), theta.sin());
        prop_assert!((h - (rot * alpha).re).abs() < 1e-12);
        prop_assert!((x.frobenius_norm() - 1.0).abs() < 1e-12);
        prop_assert!((numerical_radius(&a, 16).unwrap() - alpha.norm()).abs() < 1e-12);
    }
}

#[test]
fn linear_index_is_a_bijection() {
    let shape = [2, 3, 2];
    let mut seen = [false; 12];
    for i in 1..=2 {
        for j in 1..=3 {
            for k in 1..=2 {
                let idx: MultiIndex = [i, j, k].into();
                let r = linear_index(&idx, &shape).unwrap();
                assert!(!seen[r]);
                seen[r] = true;
                assert_eq!(multi_index(r, &shape).unwrap(), idx);
            }
        }
    }
    assert!(seen.iter().all(|&s| s));
    assert_eq!(linear_index(&[2, 1].into(), &[3, 2]).unwrap(), 2);
    assert!(linear_index(&[3, 1].into(), &[2, 2]).is_err());
}

#[test]
fn tensors_are_shareable_across_threads() {
    fn assert_send_sync<X: Send + Sync>() {}
    assert_send_sync::<Tensor64>();
    assert_send_sync::<numrange_core::Boundary64>();
    let a = numrange_core::fixtures::t_diag::<f64>();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let a = a.clone();
            std::thread::spawn(move || numerical_radius(&a, 100).unwrap())
        })
        .collect();
    for h in handles {
        assert!((h.join().unwrap() - 9.0).abs() < 1e-12);
    }
}
