//! Seeded property battery.
//!
//! Each property pairs an instance generator with a check. The battery runs
//! every property on a fixed number of seeded random instances (and, when
//! given one, on a caller-supplied tensor) and renders one PASS/FAIL line per
//! property. Instance `i` of property `p` draws from its own ChaCha stream
//! derived from `(seed, p, i)`, so reports are reproducible byte for byte and
//! independent of thread scheduling.

use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::fixtures;
use crate::numrange::{
    affine, boundary, boundary_serial, classify_unitary, default_tolerance, numerical_radius, rayleigh, Membership,
    SupportFunction, SupportGrid,
};
use crate::pinv::{classify_structure, is_ep, moore_penrose, orthonormal_sum, penrose_residuals, rank};
use crate::random::{self, SeededRng};
use crate::scalar::{cis, C};
use crate::spectral::{
    determinant, eigenvalues, hermitian_eigensystem, inverse, polar_decompose, spectral_norm,
    spectral_radius, svd,
};
use crate::tensor::{
    add, advance, apply, einstein_product, inner_product, MultiIndex, Permutation, Tensor,
};
use crate::unfold::{fold, unfold};

type T64 = Tensor<f64>;
type Z = C<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub seed: u64,
    pub instances: usize,
    /// Angular grid for support functions; rounded up to a multiple of 4
    /// so that the real and imaginary axes are sampled exactly.
    pub n_theta: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 20240601, instances: 100, n_theta: 360 }
    }
}

impl Config {
    fn grid(&self) -> usize {
        self.n_theta.max(4).div_ceil(4) * 4
    }
}

/// Outcome of one check on one tensor. `Pass` carries the worst observed
/// error as a fraction of its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Pass(f64),
    Fail(String),
    Skip(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Worst error-to-tolerance ratio among passing instances.
    pub worst: f64,
    pub first_failure: Option<String>,
    pub input: Option<Verdict>,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.failed == 0 && !matches!(self.input, Some(Verdict::Fail(_)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub config: Config,
    pub properties: Vec<PropertyReport>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::ok)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "seed {} instances {} n_theta {}", c.seed, c.instances, c.grid());
        for p in &self.properties {
            let status = if p.ok() { "PASS" } else { "FAIL" };
            let _ = write!(
                out,
                "{status} {:<28} passed {:>3} failed {:>3} skipped {:>3} worst {:.3e}",
                p.name, p.passed, p.failed, p.skipped, p.worst
            );
            match &p.input {
                Some(Verdict::Pass(r)) => {
                    let _ = write!(out, " input pass {r:.3e}");
                }
                Some(Verdict::Skip(why)) => {
                    let _ = write!(out, " input skip ({why})");
                }
                Some(Verdict::Fail(why)) => {
                    let _ = write!(out, " input FAIL ({why})");
                }
                None => {}
            }
            if let Some(f) = &p.first_failure {
                let _ = write!(out, " first failure: {f}");
            }
            out.push('\n');
        }
        let failed = self.properties.iter().filter(|p| !p.ok()).count();
        let _ = writeln!(out, "summary {} properties, {} passed, {} failed", self.properties.len(), self.properties.len() - failed, failed);
        out
    }
}

type Gen = fn(&mut SeededRng, usize) -> Result<T64>;
type Check = fn(&T64, &mut SeededRng, &Config) -> Result<Verdict>;

struct Property {
    name: &'static str,
    gen: Gen,
    check: Check,
    /// Fixed instance count overriding the configured one.
    count: Option<usize>,
    /// Whether the check is meaningful on a caller-supplied tensor.
    on_input: bool,
}

const fn prop(name: &'static str, gen: Gen, check: Check) -> Property {
    Property { name, gen, check, count: None, on_input: true }
}

fn properties() -> Vec<Property> {
    vec![
        prop("einstein_brute_force", gen_rectangular, check_einstein_brute_force),
        prop("einstein_associativity", gen_rectangular, check_associativity),
        prop("adjoint_identity", gen_rectangular, check_adjoint),
        prop("unfold_bijection", gen_rectangular, check_unfold),
        prop("pi_transpose_inverse", gen_rectangular, check_pi_transpose),
        prop("cauchy_schwarz", gen_rectangular, check_cauchy_schwarz),
        prop("hermitian_split", gen_square, check_hermitian_split),
        prop("hermitian_eigensystem", gen_square, check_hermitian_eigen),
        prop("svd_polar_reconstruction", gen_square, check_svd_polar),
        prop("determinant_laws", gen_square, check_determinant),
        prop("spectrum_in_range", gen_square, check_spectrum_in_range),
        prop("boundary_certificate", gen_square, check_boundary_certificate),
        prop("affine_law", gen_square, check_affine),
        prop("subadditivity", gen_square, check_subadditivity),
        prop("real_imaginary_parts", gen_square, check_re_im),
        prop("transpose_laws", gen_square, check_transpose_laws),
        prop("isometry_compression", gen_square, check_isometry),
        prop("convexity_interpolation", gen_square, check_convexity),
        prop("radius_bounds", gen_square, check_radius_bounds),
        Property { count: Some(40), ..prop("classify_unitary_agreement", gen_unitary_or_invertible, check_classify_unitary) },
        prop("penrose_residuals", gen_rectangular, check_penrose),
        prop("pinv_involution", gen_rectangular, check_pinv_involution),
        prop("zero_eigenvalue_rank", gen_deficient_or_full, check_zero_rank),
        prop("normal_reciprocal_law", gen_normal, check_normal_reciprocal),
        Property {
            count: Some(1),
            on_input: false,
            ..prop("nonnormal_counterexample", gen_ones_row, check_counterexample)
        },
        prop("normal_iff_pinv_normal", gen_normal_or_not, check_normal_iff),
        prop("ep_structured", gen_hermitian_or_unitary, check_ep_structured),
        prop("ep_membership", gen_invertible, check_ep_membership),
        prop("mp_zero_membership", gen_deficient_or_full, check_mp_zero_membership),
        prop("norm_product_bounds", gen_deficient_or_full, check_norm_product),
        prop("orthonormal_sum_pinv", gen_square, check_orthonormal_sum),
    ]
}

/// Names of all properties in report order.
pub fn property_names() -> Vec<&'static str> {
    properties().iter().map(|p| p.name).collect()
}

fn stream_seed(seed: u64, property: usize, instance: u64) -> u64 {
    // splitmix64 finalizer over a simple combination
    let mut z = seed ^ (property as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ instance.wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn evaluate(check: Check, a: &T64, rng: &mut SeededRng, cfg: &Config) -> Verdict {
    check(a, rng, cfg).unwrap_or_else(|e| Verdict::Fail(format!("error: {e}")))
}

/// Runs every property on `config.instances` random instances, and on
/// `input` when given.
pub fn run(config: &Config, input: Option<&T64>) -> Report {
    let props = properties();
    let reports = props
        .iter()
        .enumerate()
        .map(|(pi, p)| {
            let count = p.count.unwrap_or(config.instances);
            let verdicts: Vec<Verdict> = (0..count)
                .into_par_iter()
                .map(|i| {
                    let mut rng = random::seeded(stream_seed(config.seed, pi, i as u64));
                    match (p.gen)(&mut rng, i) {
                        Ok(a) => evaluate(p.check, &a, &mut rng, config),
                        Err(e) => Verdict::Fail(format!("generator error: {e}")),
                    }
                })
                .collect();
            let mut r = PropertyReport {
                name: p.name,
                passed: 0,
                failed: 0,
                skipped: 0,
                worst: 0.0,
                first_failure: None,
                input: None,
            };
            for (i, v) in verdicts.into_iter().enumerate() {
                match v {
                    Verdict::Pass(x) => {
                        r.passed += 1;
                        r.worst = r.worst.max(x);
                    }
                    Verdict::Fail(msg) => {
                        r.failed += 1;
                        r.first_failure.get_or_insert_with(|| format!("instance {i}: {msg}"));
                    }
                    Verdict::Skip(_) => r.skipped += 1,
                }
            }
            if let Some(a) = input {
                r.input = Some(if p.on_input {
                    let mut rng = random::seeded(stream_seed(config.seed, pi, u64::MAX));
                    evaluate(p.check, a, &mut rng, config)
                } else {
                    Verdict::Skip("fixed instance".into())
                });
            }
            r
        })
        .collect();
    Report { config: *config, properties: reports }
}

// ---------------------------------------------------------------- generators

const HALVES: [&[usize]; 5] = [&[2, 2], &[3, 2], &[2, 3], &[5], &[2, 1, 2]];

fn half(i: usize) -> &'static [usize] {
    HALVES[i % HALVES.len()]
}

fn gen_square(rng: &mut SeededRng, i: usize) -> Result<T64> {
    if i % 4 == 3 {
        random::rank_deficient(rng, half(i), 2)
    } else {
        random::gaussian_square(rng, half(i))
    }
}

/// Mostly rectangular tensors, every third one of rank at most two.
fn gen_rectangular(rng: &mut SeededRng, i: usize) -> Result<T64> {
    let (rows, cols) = (half(i), half(i / HALVES.len() + 1));
    if i % 3 == 2 {
        let left = random::gaussian_tensor(rng, &[rows, &[2]].concat(), rows.len())?;
        let right = random::gaussian_tensor(rng, &[&[2], cols].concat(), 1)?;
        einstein_product(&left, &right, 1)
    } else {
        random::gaussian_tensor(rng, &[rows, cols].concat(), rows.len())
    }
}

fn gen_unitary_or_invertible(rng: &mut SeededRng, i: usize) -> Result<T64> {
    if i < 20 {
        random::haar_unitary(rng, half(i))
    } else {
        random::invertible(rng, half(i))
    }
}

fn gen_deficient_or_full(rng: &mut SeededRng, i: usize) -> Result<T64> {
    let h = half(i);
    if i.is_multiple_of(2) {
        let n: usize = h.iter().product();
        random::rank_deficient(rng, h, n / 2)
    } else {
        random::gaussian_square(rng, h)
    }
}

fn gen_normal(rng: &mut SeededRng, i: usize) -> Result<T64> {
    random::normal(rng, half(i))
}

fn gen_normal_or_not(rng: &mut SeededRng, i: usize) -> Result<T64> {
    if i.is_multiple_of(2) {
        random::normal(rng, half(i))
    } else {
        random::gaussian_square(rng, half(i))
    }
}

fn gen_hermitian_or_unitary(rng: &mut SeededRng, i: usize) -> Result<T64> {
    if i.is_multiple_of(2) {
        random::hermitian(rng, half(i))
    } else {
        random::haar_unitary(rng, half(i))
    }
}

fn gen_invertible(rng: &mut SeededRng, i: usize) -> Result<T64> {
    random::invertible(rng, half(i))
}

fn gen_ones_row(_: &mut SeededRng, _: usize) -> Result<T64> {
    Ok(fixtures::ones_row())
}

// ------------------------------------------------------------------- helpers

/// Tracks the worst error-to-tolerance ratio and the first violation.
struct Gauge {
    worst: f64,
    failure: Option<String>,
}

impl Gauge {
    fn new() -> Self {
        Gauge { worst: 0.0, failure: None }
    }

    fn within(&mut self, what: &str, err: f64, tol: f64) {
        let ratio = if err == 0.0 { 0.0 } else { err / tol };
        if ratio <= 1.0 {
            self.worst = self.worst.max(ratio);
        } else if self.failure.is_none() {
            self.failure = Some(format!("{what}: {err:.3e} exceeds {tol:.3e}"));
        }
    }

    fn require(&mut self, what: &str, ok: bool) {
        if !ok && self.failure.is_none() {
            self.failure = Some(what.to_string());
        }
    }

    /// Records a membership margin: negative margins up to `tol` pass.
    fn member(&mut self, what: &str, margin: f64, tol: f64) {
        self.within(what, (-margin).max(0.0), tol);
    }

    fn verdict(self) -> Result<Verdict> {
        Ok(match self.failure {
            Some(f) => Verdict::Fail(f),
            None => Verdict::Pass(self.worst),
        })
    }
}

fn skip(why: &str) -> Result<Verdict> {
    Ok(Verdict::Skip(why.to_string()))
}

fn unit(rng: &mut SeededRng, shape: &[usize]) -> Result<T64> {
    random::unit_tensor(rng, shape)
}

fn nearest(z: Z, set: &[Z]) -> f64 {
    set.iter().map(|w| (z - w).norm()).fold(f64::INFINITY, f64::min)
}

fn nonzero_scalar(rng: &mut SeededRng) -> Z {
    let r: f64 = rng.random();
    let t: f64 = rng.random();
    cis(std::f64::consts::TAU * t) * (0.5 + 1.5 * r)
}

/// Direct multi-index evaluation of `A *_N B`, independent of the blocked
/// product.
fn einstein_brute_force(a: &T64, b: &T64, n: usize) -> Result<T64> {
    let lead = a.order() - n;
    let inner = a.shape()[lead..].to_vec();
    let mut shape = a.shape()[..lead].to_vec();
    shape.extend_from_slice(&b.shape()[n..]);
    let mut err = None;
    let out = Tensor::from_fn(shape, lead, |idx| {
        let mut k = vec![0; inner.len()];
        let mut sum = Z::new(0.0, 0.0);
        loop {
            let ia: Vec<usize> = idx[..lead].iter().chain(&k).map(|x| x + 1).collect();
            let ib: Vec<usize> = k.iter().chain(&idx[lead..]).map(|x| x + 1).collect();
            match (a.get(&MultiIndex::new(ia)), b.get(&MultiIndex::new(ib))) {
                (Ok(x), Ok(y)) => sum += x * y,
                (Err(e), _) | (_, Err(e)) => err = Some(e),
            }
            if !advance(&mut k, &inner) {
                break;
            }
        }
        sum
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn partner(rng: &mut SeededRng, a: &T64, cols: &[usize]) -> Result<T64> {
    let mut shape = a.col_shape().to_vec();
    shape.extend_from_slice(cols);
    random::gaussian_tensor(rng, &shape, a.order() - a.row_modes())
}

fn col_modes(a: &T64) -> usize {
    a.order() - a.row_modes()
}

// -------------------------------------------------------------- tensor core

fn check_einstein_brute_force(a: &T64, rng: &mut SeededRng, _: &Config) -> Result<Verdict> {
    let b = partner(rng, a, &[2])?;
    let n = col_modes(a);
    let fast = einstein_product(a, &b, n)?;
    let slow = einstein_brute_force(a, &b, n)?;
    let via_matrix = fold(&unfold(a).matmul(&unfold(&b))?, a.row_shape(), b.col_shape())?;
    let tol = 1e-12 * (1.0 + a.frobenius_norm() * b.frobenius_norm());
    let mut g = Gauge::new();
    g.within("blocked vs brute force", fast.max_abs_diff(&slow)?, tol);
    g.within("blocked vs unfolded", fast.max_abs_diff(&via_matrix)?, tol);
    g.verdict()
}

fn check_associativity(a: &T64, rng: &mut SeededRng, _: &Config) -> Result<Verdict> {
    let b = partner(rng, a, &[2, 2])?;
    let mut c_shape = vec![2, 2];
    c_shape.push(3);
    let c = random::gaussian_tensor(rng, &c_shape, 2)?;
    let n = col_modes(a);
    let left = einstein_product(&einstein_product(a, &b, n)?, &c, 2)?;
    let right = einstein_product(a, &einstein_product(&b, &c, 2)?, n)?;
    let scale = a.frobenius_norm() * b.frobenius_norm() * c.frobenius_norm();
    let mut g = Gauge::new();
    g.within("(AB)C - A(BC)", left.max_abs_diff(&right)?, 1e-12 * (1.0 + scale));
    g.verdict()
}

fn check_adjoint(a: &T64, rng: &mut SeededRng, _: &Config) -> Result<Verdict> {
    let x = unit(rng, a.col_shape())?;
    let y = unit(rng, a.row_shape())?;
    let lhs = inner_product(&apply(a, &x)?, &y)?;
    let rhs = inner_product(&x, &apply(&a.conj_transpose(), &y)?)?;
    let mut g = Gauge::new();
    g.within("<AX,Y> - <X,A^H Y>", (lhs - rhs).norm(), 1e-12 * (1.0 + a.frobenius_norm()));
    g.require("(A^H)^H != A", a.conj_transpose().conj_transpose() == *a);
    g.verdict()
}

fn check_unfold(a: &T64, _: &mut SeededRng, _: &Config) -> Result<Verdict> {
    let m = unfold(a);
    let mut g = Gauge::new();
    g.require("fold(unfold(A)) != A", fold(&m, a.row_shape(), a.col_shape())? == *a);
    g.require("unfold(A^H) != unfold(A)^H", unfold(&a.conj_transpose()) == m.conj_transpose());
    g.within("norm change", (m.frobenius_norm() - a.frobenius_norm()).abs(), 1e-15 * (1.0 + a.frobenius_norm()));
    g.verdict()
}

fn check_pi_transpose(a: &T64, rng: &mut SeededRng, _: &Config) -> Result<Verdict> {
    let m = a.order();
    let mut image: Vec<usize> = (1..=m).collect();
    for k in (1..m).rev() {
        let j = rng.random_range(0..=k);
        image.swap(k, j);
    }
    let pi = Permutation::new(image)?;
    let b = a.pi_transpose(&pi)?;
    let back = b.pi_transpose(&pi.inverse())?;
    let mut g = Gauge::new();
    g.require("shape not permuted", b.shape().iter().zip(pi.image()).all(|(&e, &p)| e == a.shape()[p - 1]));
    g.require("inverse permutation does not restore A", back.shape() == a.shape() && back.data() == a.data());
    g.verdict()
}

fn check_cauchy_schwarz(a: &T64, rng: &mut SeededRng, _: &Config) -> Result<Verdict> {
    let b = random::gaussian_tensor(rng, a.shape(), a.row_modes())?;
    let lhs = inner_product(a, &b)?.norm();
    let rhs = a.frobenius_norm() * b.frobenius_norm();
    let mut g = Gauge::new();
    g.within("|<A,B>| - ||A|| ||B||", (lhs - rhs).max(0.0), 1e-12 * (1.0 + rhs));
    g.verdict()
}

// ----------------------------------------------------------------- spectral

fn check_hermitian_split(a: &T64, rng: &mut SeededRng, _: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let h = a.hermitian_part()?;
    let s = a.skew_hermitian_part()?;
    let x = unit(rng, a.row_shape())?;
    let scale = 1.0 + a.frobenius_norm();
    let mut g = Gauge::new();
    g.within("H + S - A", add(&h, &s)?.max_abs_diff(a)?, 1e-15 * scale);
    g.within("Re<AX,X> - <H X,X>", (rayleigh(a, &x)?.re - rayleigh(&h, &x)?.re).abs(), 1e-12 * scale);
    g.require("H(A) not Hermitian", h.is_hermitian(1e-15));
    g.verdict()
}

fn check_hermitian_eigen(a: &T64, _: &mut SeededRng, _: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let h = a.hermitian_part()?;
    let e = hermitian_eigensystem(&h)?;
    let scale = 1.0 + h.frobenius_norm();
    let mut g = Gauge::new();
    for (l, x) in e.values.iter().zip(&e.eigentensors) {
        let r = apply(&h, x)?.distance(&x.scale(Z::new(*l, 0.0)))?;
        g.within("eigen residual", r, 1e-10 * scale);
    }
    for (i, x) in e.eigentensors.iter().enumerate() {
        for (j, y) in e.eigentensors.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            g.within("Gram defect", (inner_product(x, y)? - target).norm(), 1e-10);
        }
    }
    g.require("values not sorted", e.values.windows(2).all(|w| w[0] >= w[1]));
    g.verdict()
}

fn check_svd_polar(a: &T64, _: &mut SeededRng, _: &Config) -> Result<Verdict> {
    let norm = a.frobenius_norm();
    let f = svd(a)?;
    let mut g = Gauge::new();
    g.within("U S V^H - A", f.reconstruct()?.distance(a)?, 1e-10 * norm.max(1e-300));
    if !a.is_square() || inverse(a).is_err() {
        return g.verdict();
    }
    let (u, p) = polar_decompose(a)?;
    let up = einstein_product(&u, &p, a.row_modes())?;
    g.within("U P - A", up.distance(a)?, 1e-10 * norm);
    let su = classify_structure(&u, 1e-10)?;
    g.require("polar factor U not unitary", su.unitary);
    g.require("polar factor P not Hermitian", p.is_hermitian(1e-10));
    g.verdict()
}

fn check_determinant(a: &T64, rng: &mut SeededRng, _: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let b = random::gaussian_square(rng, a.row_shape())?;
    let n = a.row_len() as i32;
    let (da, db) = (determinant(a)?, determinant(&b)?);
    let dab = determinant(&einstein_product(a, &b, a.row_modes())?)?;
    let floor_a = 1e-13 * spectral_norm(a)?.powi(n);
    let floor_ab = floor_a * spectral_norm(&b)?.powi(n);
    let prod: Z = eigenvalues(a, false)?.values.iter().product();
    let mut g = Gauge::new();
    g.within("det(AB) - det(A)det(B)", (dab - da * db).norm(), 1e-8 * dab.norm().max((da * db).norm()) + floor_ab);
    g.within("det(A) - prod(eigenvalues)", (da - prod).norm(), 1e-8 * da.norm().max(prod.norm()) + floor_a);
    g.verdict()
}

fn check_spectrum_in_range(a: &T64, _: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let grid = SupportGrid::new(a, cfg.grid())?;
    let tol = default_tolerance(a);
    let mut g = Gauge::new();
    for z in eigenvalues(a, false)?.values {
        g.member("eigenvalue outside W(A)", grid.margin(z), tol);
    }
    let rho = spectral_radius(a)?;
    let w = numerical_radius(a, cfg.grid())?;
    g.within("rho(A) - w(A)", (rho - w).max(0.0), tol);
    g.verdict()
}

// ----------------------------------------------------------------- numrange

fn check_boundary_certificate(a: &T64, _: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let b = boundary(a, cfg.grid())?;
    let mut g = Gauge::new();
    g.require("parallel and serial boundaries differ", b == boundary_serial(a, cfg.grid())?);
    g.within("Re(e^{it} z) - h(t)", b.support_defect(), 1e-8 * (1.0 + b.source_norm));
    g.within("convexity certificate", b.convexity_defect().max(0.0), 1e-6);
    g.verdict()
}

fn check_affine(a: &T64, rng: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let alpha = nonzero_scalar(rng);
    let beta = random::complex_gaussian::<f64, _>(rng);
    let b = affine(a, alpha, beta)?;
    let n = cfg.grid();
    let (grid_a, grid_b) = (SupportGrid::new(a, n)?, SupportGrid::new(&b, n)?);
    let (tol_a, tol_b) = (default_tolerance(a), default_tolerance(&b));
    let mut g = Gauge::new();
    for z in boundary(a, n)?.points() {
        g.member("alpha z + beta outside W(alpha A + beta I)", grid_b.margin(alpha * z + beta), tol_b);
    }
    for w in boundary(&b, n)?.points() {
        g.member("(w - beta) / alpha outside W(A)", grid_a.margin((w - beta) / alpha), tol_a);
    }
    g.verdict()
}

fn check_subadditivity(a: &T64, rng: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let b = random::gaussian_square(rng, a.row_shape())?;
    let s = add(a, &b)?;
    let n = cfg.grid();
    let mut g = Gauge::new();
    let (ws, wa, wb) = (numerical_radius(&s, n)?, numerical_radius(a, n)?, numerical_radius(&b, n)?);
    g.within("w(A+B) - w(A) - w(B)", (ws - wa - wb).max(0.0), 1e-6);
    let scale = 1.0 + a.frobenius_norm() + b.frobenius_norm();
    for _ in 0..5 {
        let x = unit(rng, a.row_shape())?;
        let d = rayleigh(&s, &x)? - rayleigh(a, &x)? - rayleigh(&b, &x)?;
        g.within("Rayleigh additivity", d.norm(), 1e-12 * scale);
    }
    g.verdict()
}

fn check_re_im(a: &T64, _: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let pts = boundary(a, cfg.grid())?.points();
    let max_re = pts.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let max_im = pts.iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max);
    let h = hermitian_eigensystem(&a.hermitian_part()?)?.values[0];
    let k = hermitian_eigensystem(&a.skew_hermitian_part()?.scale(Z::new(0.0, -1.0)))?.values[0];
    let tol = 1e-8 * (1.0 + a.frobenius_norm());
    let mut g = Gauge::new();
    g.within("max Re z - lambda_max(H(A))", (max_re - h).abs(), tol);
    g.within("max Im z - lambda_max(-i S(A))", (max_im - k).abs(), tol);
    g.verdict()
}

fn check_transpose_laws(a: &T64, _: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let (at, ah) = (a.transpose(), a.conj_transpose());
    let (f, ft, fh) = (SupportFunction::new(a)?, SupportFunction::new(&at)?, SupportFunction::new(&ah)?);
    let tol = 1e-8 * (1.0 + a.frobenius_norm());
    let mut g = Gauge::new();
    for t in crate::numrange::theta_grid::<f64>(cfg.grid()) {
        let h = f.value(t)?;
        g.within("h_A - h_{A^T}", (h - ft.value(t)?).abs(), tol);
        g.within("h_{A^H}(t) - h_A(-t)", (fh.value(t)? - f.value(-t)?).abs(), tol);
    }
    g.verdict()
}

fn check_isometry(a: &T64, rng: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let n = a.row_modes();
    let small: &[usize] = if rng.random::<bool>() { &[2] } else { &[3] };
    if a.row_len() < small[0] {
        return skip("row space too small");
    }
    let b = random::isometry(rng, a.row_shape(), small)?;
    let compress = |b: &T64| -> Result<T64> {
        let bh = b.conj_transpose();
        einstein_product(&einstein_product(&bh, a, n)?, b, n)
    };
    let c = compress(&b)?;
    let grid = SupportGrid::new(a, cfg.grid())?;
    let tol = default_tolerance(a);
    let mut g = Gauge::new();
    for _ in 0..5 {
        let x = unit(rng, small)?;
        g.member("compressed Rayleigh value outside W(A)", grid.margin(rayleigh(&c, &x)?), tol);
    }
    // square unitary compression leaves the range unchanged
    let u = random::haar_unitary(rng, a.row_shape())?;
    let same = SupportGrid::new(&compress(&u)?, cfg.grid())?;
    for (x, y) in grid.values.iter().zip(&same.values) {
        g.within("support change under unitary similarity", (x - y).abs(), 1e-8 * (1.0 + a.frobenius_norm()));
    }
    g.verdict()
}

fn check_convexity(a: &T64, rng: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let pts = boundary(a, cfg.grid())?.points();
    let grid = SupportGrid::new(a, cfg.grid())?;
    let tol = default_tolerance(a);
    let mut g = Gauge::new();
    for k in 0..6 {
        let z1 = pts[rng.random_range(0..pts.len())];
        let z2 = if k % 2 == 0 {
            rayleigh(a, &unit(rng, a.row_shape())?)?
        } else {
            pts[rng.random_range(0..pts.len())]
        };
        for t in [0.25, 0.5, 0.75] {
            g.member("convex combination outside W(A)", grid.margin(z1 * t + z2 * (1.0 - t)), tol);
        }
    }
    g.verdict()
}

fn check_radius_bounds(a: &T64, rng: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let n = cfg.grid();
    let w = numerical_radius(a, n)?;
    let norm = spectral_norm(a)?;
    let b = random::gaussian_square(rng, a.row_shape())?;
    let wb = numerical_radius(&b, n)?;
    let wab = numerical_radius(&einstein_product(a, &b, a.row_modes())?, n)?;
    let coarse = numerical_radius(a, n / 2)?;
    let mut g = Gauge::new();
    g.within("||A||/2 - w(A)", (0.5 * norm - w).max(0.0), 1e-6);
    g.within("w(A) - ||A||", (w - norm).max(0.0), 1e-6);
    g.within("w(AB) - 4 w(A) w(B)", (wab - 4.0 * w * wb).max(0.0), 1e-6);
    g.within("coarse grid exceeds fine grid", (coarse - w).max(0.0), 1e-12 * (1.0 + w));
    g.verdict()
}

fn check_classify_unitary(a: &T64, _: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    if inverse(a).is_err() {
        return skip("singular");
    }
    let by_radius = classify_unitary(a, cfg.grid(), 1e-6)?;
    let by_structure = classify_structure(a, 1e-8)?.unitary;
    let mut g = Gauge::new();
    g.require(&format!("radius test says {by_radius}, structure says {by_structure}"), by_radius == by_structure);
    g.verdict()
}

// --------------------------------------------------------------------- pinv

fn check_penrose(a: &T64, _: &mut SeededRng, _: &Config) -> Result<Verdict> {
    let p = moore_penrose(a)?;
    let r = penrose_residuals(a, &p)?;
    let scale = (1.0 + a.frobenius_norm()) * (1.0 + p.frobenius_norm());
    let mut g = Gauge::new();
    for (what, v) in [("AXA - A", r.r1), ("XAX - X", r.r2), ("(AX)^H - AX", r.r3), ("(XA)^H - XA", r.r4)] {
        g.within(what, v, 1e-8 * scale);
    }
    g.verdict()
}

fn check_pinv_involution(a: &T64, _: &mut SeededRng, _: &Config) -> Result<Verdict> {
    let pp = moore_penrose(&moore_penrose(a)?)?;
    let mut g = Gauge::new();
    g.within("(A^+)^+ - A", pp.distance(a)?, 1e-8 * (1.0 + a.frobenius_norm()));
    g.verdict()
}

fn check_zero_rank(a: &T64, _: &mut SeededRng, _: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let n = a.row_len();
    let p = moore_penrose(a)?;
    let (ra, rp) = (rank(a)?, rank(&p)?);
    let mut g = Gauge::new();
    g.require(&format!("rank(A) = {ra}, rank(A^+) = {rp} of {n}"), (ra < n) == (rp < n));
    g.verdict()
}

fn is_normal(a: &T64) -> Result<bool> {
    Ok(a.is_square() && classify_structure(a, 1e-8)?.normal)
}

fn check_normal_reciprocal(a: &T64, _: &mut SeededRng, _: &Config) -> Result<Verdict> {
    if !is_normal(a)? {
        return skip("not normal");
    }
    let p = moore_penrose(a)?;
    let sp = eigenvalues(&p, false)?.values;
    let rho = spectral_radius(a)?;
    let mut g = Gauge::new();
    for l in eigenvalues(a, false)?.values {
        if l.norm() <= 1e-8 * (1.0 + rho) {
            continue;
        }
        let r = l.inv();
        g.within("1/lambda missing from spectrum of A^+", nearest(r, &sp), 1e-8 * (1.0 + r.norm()));
    }
    g.verdict()
}

fn check_counterexample(a: &T64, _: &mut SeededRng, _: &Config) -> Result<Verdict> {
    let one = Z::new(1.0, 0.0);
    let sa = eigenvalues(a, false)?.values;
    let sp = eigenvalues(&moore_penrose(a)?, false)?.values;
    let mut g = Gauge::new();
    g.require("tensor is unexpectedly normal", !is_normal(a)?);
    g.within("1 missing from spectrum of A", nearest(one, &sa), 1e-8);
    g.require("1 unexpectedly in spectrum of A^+", nearest(one, &sp) > 0.5);
    g.verdict()
}

fn check_normal_iff(a: &T64, _: &mut SeededRng, _: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let (na, np) = (is_normal(a)?, is_normal(&moore_penrose(a)?)?);
    let mut g = Gauge::new();
    g.require(&format!("A normal: {na}, A^+ normal: {np}"), na == np);
    g.verdict()
}

fn check_ep_structured(a: &T64, _: &mut SeededRng, _: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let s = classify_structure(a, 1e-10)?;
    if !s.hermitian && !s.unitary {
        return skip("neither Hermitian nor unitary");
    }
    let mut g = Gauge::new();
    g.require("Hermitian or unitary tensor is not EP", is_ep(a, 1e-8)?);
    g.verdict()
}

fn check_ep_membership(a: &T64, _: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() || !is_ep(a, 1e-8)? {
        return skip("not EP");
    }
    let p = moore_penrose(a)?;
    let (ga, gp) = (SupportGrid::new(a, cfg.grid())?, SupportGrid::new(&p, cfg.grid())?);
    let (ta, tp) = (default_tolerance(a), default_tolerance(&p));
    let rho = spectral_radius(a)?;
    let mut g = Gauge::new();
    for l in eigenvalues(a, false)?.values {
        g.member("lambda outside W(A)", ga.margin(l), ta);
        if l.norm() > 1e-8 * (1.0 + rho) {
            g.member("1/lambda outside W(A^+)", gp.margin(l.inv()), tp);
        }
    }
    g.verdict()
}

fn check_mp_zero_membership(a: &T64, _: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    let p = moore_penrose(a)?;
    let zero = Z::new(0.0, 0.0);
    let ma = SupportGrid::new(a, cfg.grid())?.classify(zero, default_tolerance(a));
    let mp = SupportGrid::new(&p, cfg.grid())?.classify(zero, default_tolerance(&p));
    if ma == Membership::Boundary || mp == Membership::Boundary {
        return skip("zero within tolerance of the boundary");
    }
    let mut g = Gauge::new();
    g.require(&format!("0 in W(A): {ma:?}, 0 in W(A^+): {mp:?}"), ma == mp);
    g.verdict()
}

fn check_norm_product(a: &T64, _: &mut SeededRng, cfg: &Config) -> Result<Verdict> {
    if !a.is_square() {
        return skip("not square");
    }
    if a.is_zero(0.0) {
        return skip("zero tensor");
    }
    let p = moore_penrose(a)?;
    let prod = spectral_norm(a)? * spectral_norm(&p)?;
    let ww = 4.0 * numerical_radius(a, cfg.grid())? * numerical_radius(&p, cfg.grid())?;
    let mut g = Gauge::new();
    g.within("1 - ||A|| ||A^+||", (1.0 - prod).max(0.0), 1e-9);
    g.within("||A|| ||A^+|| - 4 w(A) w(A^+)", (prod - ww).max(0.0), 1e-6 * (1.0 + prod));
    g.verdict()
}

fn check_orthonormal_sum(a: &T64, rng: &mut SeededRng, _: &Config) -> Result<Verdict> {
    let shape: Vec<usize> = if a.is_square() { a.row_shape().to_vec() } else { vec![2, 2] };
    let us = random::orthonormal_list(rng, &shape, 2)?;
    let vs = random::orthonormal_list(rng, &shape, 2)?;
    let (m, mp) = orthonormal_sum(&us, &vs)?;
    let mut g = Gauge::new();
    g.within("sum V U^H - A^+", mp.distance(&moore_penrose(&m)?)?, 1e-8);
    g.within("Penrose residuals", penrose_residuals(&m, &mp)?.max(), 1e-8);
    let mh = m.conj_transpose();
    let (fp, fh) = (SupportFunction::new(&mp)?, SupportFunction::new(&mh)?);
    for t in crate::numrange::theta_grid::<f64>(64) {
        g.within("h_{A^+} - h_{A^H}", (fp.value(t)? - fh.value(t)?).abs(), 1e-6);
    }
    g.verdict()
}
