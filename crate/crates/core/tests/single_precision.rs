//! The same routines instantiated at `f32`, with tolerances widened to
//! single precision.

use numrange_core::{
    boundary, eigenvalues, fixtures, moore_penrose, multisets_match, numerical_radius, penrose_residuals,
    singular_values, Complex32, Tensor32,
};

fn reals(v: &[f32]) -> Vec<Complex32> {
    v.iter().map(|&x| Complex32::new(x, 0.0)).collect()
}

#[test]
fn t_diag_in_single_precision() {
    let a: Tensor32 = fixtures::t_diag();
    let s = eigenvalues(&a, false).unwrap();
    assert!(multisets_match(&s.values, &reals(&[-1., 1., 2., 3., 8., 9.]), 1e-4));
    assert!((numerical_radius(&a, 200).unwrap() - 9.0).abs() < 1e-4);
    let b = boundary(&a, 64).unwrap();
    assert!(b.is_convexity_certified(1e-3));
    assert!(b.points().iter().all(|z| z.im.abs() < 1e-4));
}

#[test]
fn pseudoinverse_in_single_precision() {
    let a: Tensor32 = fixtures::ones_row();
    let p = moore_penrose(&a).unwrap();
    assert!((p.get(&[2, 1, 1, 1].into()).unwrap().re - 1.0 / 6.0).abs() < 1e-5);
    assert!(penrose_residuals(&a, &p).unwrap().max() < 1e-5);
    let s = singular_values(&fixtures::complex_diagonal::<f32>()).unwrap();
    assert!((s[0] - 37f32.sqrt()).abs() < 1e-4 && (s[5] - 1.0).abs() < 1e-5);
}

#[test]
fn norm_example_radius_in_single_precision() {
    let a: Tensor32 = fixtures::norm_example();
    assert!((numerical_radius(&a, 2000).unwrap() - 18.9853).abs() < 1e-3);
}
