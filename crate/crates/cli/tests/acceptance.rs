//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::time::{Duration, Instant};

use numrange_cli::document::serialize_tensor;
use numrange_cli::run_with;
use numrange_core::{
    contains_point, eigenvalues, einstein_product, fixtures, inverse, moore_penrose, multisets_match,
    numerical_radius, singular_values, spectral_norm, Complex64, Tensor64,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn reals(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| c(x, 0.0)).collect()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(std::iter::once("numrange").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn einstein_golden() -> Outcome {
    let (a, b) = (fixtures::contraction_left::<f64>(), fixtures::contraction_right::<f64>());
    let d = einstein_product(&a, &b, 2).map_err(|e| e.to_string())?;
    ensure(d.data() == &reals(&[44.0, 64.0, 62.0, 5.0])[..], || format!("D = {:?}", d.data()))?;
    let full = einstein_product(&a, &b, 1).map_err(|e| e.to_string())?;
    let slice: Vec<Complex64> = (1..=2)
        .flat_map(|i| (1..=3).map(move |j| (i, j)))
        .map(|(i, j)| full.get(&[i, j, 1, 1].into()).unwrap())
        .collect();
    ensure(slice == reals(&[22.0, 5.0, 12.0, 9.0, 13.0, 21.0]), || format!("C(:,:,1,1) = {slice:?}"))?;
    Ok("D and C(:,:,1,1) exact".into())
}

fn spectrum_golden() -> Outcome {
    let start = Instant::now();
    let s = eigenvalues(&fixtures::t_diag::<f64>(), false).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(multisets_match(&s.values, &reals(&[-1.0, 1.0, 2.0, 3.0, 8.0, 9.0]), 1e-10), || {
        format!("spectrum {:?}", s.values)
    })?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{{-1,1,2,3,8,9}} to 1e-10 in {elapsed:.2?}"))
}

fn mp_golden() -> Outcome {
    let a = fixtures::ones_row::<f64>();
    let p = moore_penrose(&a).map_err(|e| e.to_string())?;
    for i1 in 1..=3 {
        for i2 in 1..=2 {
            let z = p.get(&[i1, i2, 1, 1].into()).unwrap();
            ensure((z - c(1.0 / 6.0, 0.0)).norm() <= 1e-10, || format!("A+({i1},{i2},1,1) = {z}"))?;
        }
    }
    let sp = eigenvalues(&p, false).map_err(|e| e.to_string())?.values;
    ensure(multisets_match(&sp, &reals(&[0., 0., 0., 0., 0., 1.0 / 6.0]), 1e-10), || format!("sigma(A+) = {sp:?}"))?;

    let d = fixtures::complex_diagonal::<f64>();
    let s = singular_values(&d).map_err(|e| e.to_string())?;
    let expected = [37f64.sqrt(), 26f64.sqrt(), 4.0, 10f64.sqrt(), 2f64.sqrt(), 1.0];
    for (x, e) in s.iter().zip(expected) {
        ensure((x - e).abs() <= 1e-10, || format!("singular value {x} vs {e}"))?;
    }
    let dp = moore_penrose(&d).map_err(|e| e.to_string())?;
    let inv = inverse(&d).map_err(|e| e.to_string())?;
    ensure(dp.distance(&inv).unwrap() < 1e-10, || "pseudoinverse differs from inverse".into())?;
    let diag = |i: usize, j: usize| dp.get(&[i, j, i, j].into()).unwrap();
    for ((i, j), e) in [((1, 1), c(0.5, -0.5)), ((2, 2), c(5.0, -1.0) / 26.0), ((3, 2), c(6.0, -1.0) / 37.0)] {
        ensure((diag(i, j) - e).norm() <= 1e-10, || format!("A+({i},{j},{i},{j}) = {}", diag(i, j)))?;
    }
    Ok("ones-row and complex diagonal to 1e-10".into())
}

fn norm_radius_golden() -> Outcome {
    let start = Instant::now();
    let a = fixtures::norm_example::<f64>();
    let err = |e: numrange_core::Error| e.to_string();
    let p = moore_penrose(&a).map_err(err)?;
    let (na, np) = (spectral_norm(&a).map_err(err)?, spectral_norm(&p).map_err(err)?);
    let (wa, wp) = (numerical_radius(&a, 2000).map_err(err)?, numerical_radius(&p, 2000).map_err(err)?);
    let elapsed = start.elapsed();
    for (name, got, want) in [("|A|", na, 19.9331), ("|A+|", np, 1.0076), ("w(A)", wa, 18.9853), ("w(A+)", wp, 0.8253)] {
        ensure((got - want).abs() <= 1e-3, || format!("{name} = {got}, expected {want}"))?;
    }
    ensure(1.0 <= na * np && na * np <= 4.0 * wa * wp, || "1 <= |A||A+| <= 4w(A)w(A+) violated".into())?;
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("|A|={na:.4} |A+|={np:.4} w(A)={wa:.4} w(A+)={wp:.4} in {elapsed:.2?}"))
}

fn parse_csv(text: &str) -> Result<Vec<[f64; 4]>, String> {
    let mut lines = text.lines();
    ensure(lines.next() == Some("theta,support,re,im"), || "bad CSV header".into())?;
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse::<f64>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
            v.try_into().map_err(|_| format!("bad CSV row `{l}`"))
        })
        .collect()
}

fn figure_reproduction(dir: &std::path::Path) -> Outcome {
    let mut notes = Vec::new();
    for k in 1..=4 {
        let a: Tensor64 = fixtures::range_example(k).unwrap();
        let input = dir.join(format!("ex3{k}.json"));
        let csv = dir.join(format!("ex3{k}.csv"));
        std::fs::write(&input, serialize_tensor(&a)).unwrap();
        let start = Instant::now();
        let (code, out, err) =
            cli(&["boundary", "--in", input.to_str().unwrap(), "--n", "500", "--csv", csv.to_str().unwrap(), "--eigs"]);
        let elapsed = start.elapsed();
        ensure(code == 0, || format!("example 3.{k}: exit {code}: {out}{err}"))?;
        ensure(elapsed < Duration::from_secs(10), || format!("example 3.{k} took {elapsed:?}"))?;
        let rows = parse_csv(&std::fs::read_to_string(&csv).unwrap())?;
        ensure(rows.len() == 500, || format!("example 3.{k}: {} rows", rows.len()))?;
        let mut defect = f64::NEG_INFINITY;
        for &[theta, support, _, _] in &rows {
            let rot = Complex64::from_polar(1.0, theta);
            for &[_, _, re, im] in &rows {
                defect = defect.max((rot * c(re, im)).re - support);
            }
        }
        ensure(defect <= 1e-6, || format!("example 3.{k}: convexity defect {defect:e}"))?;
        for z in eigenvalues(&a, false).map_err(|e| e.to_string())?.values {
            ensure(contains_point(&a, z, 500, 1e-6).unwrap(), || format!("example 3.{k}: eigenvalue {z} outside"))?;
        }
        notes.push(format!("3.{k} {elapsed:.2?}"));
    }
    Ok(format!("certified, spectra contained ({})", notes.join(", ")))
}

fn property_battery() -> Outcome {
    let (code, out, _) = cli(&["check"]);
    let summary = out.lines().last().unwrap_or("").to_string();
    ensure(code == 0, || {
        let failing: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
        format!("{summary}; {}", failing.join("; "))
    })?;
    Ok(summary)
}

fn determinism(dir: &std::path::Path) -> Outcome {
    let input = dir.join("det.json");
    std::fs::write(&input, serialize_tensor(&fixtures::range_example(2).unwrap())).unwrap();
    let mut csvs = Vec::new();
    for run in 0..2 {
        let csv = dir.join(format!("det{run}.csv"));
        let (code, _, err) = cli(&["boundary", "--in", input.to_str().unwrap(), "--n", "500", "--csv", csv.to_str().unwrap()]);
        ensure(code == 0, || err.clone())?;
        csvs.push(std::fs::read(&csv).unwrap());
    }
    ensure(csvs[0] == csvs[1], || "boundary CSV differs between runs".into())?;
    let args = ["check", "--in", input.to_str().unwrap(), "--seed", "11", "--instances", "10"];
    let (first, second) = (cli(&args), cli(&args));
    ensure(first == second, || "check report differs between runs".into())?;
    Ok("boundary CSV and check report byte-identical".into())
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let criteria: Vec<Criterion> = vec![
        ("1 einstein product golden", Box::new(einstein_golden)),
        ("2 spectrum golden", Box::new(spectrum_golden)),
        ("3 moore-penrose goldens", Box::new(mp_golden)),
        ("4 norm and radius golden", Box::new(norm_radius_golden)),
        ("5 figure reproduction", Box::new(|| figure_reproduction(dir.path()))),
        ("6 property battery", Box::new(property_battery)),
        ("7 determinism", Box::new(|| determinism(dir.path()))),
    ];
    let mut failures = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
