//! CSV and SVG renderings of a traced boundary.

use std::fmt::Write as _;

use num_complex::Complex64;
use numrange_core::Boundary64;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 0.05;

/// 17 significant digits, enough to round-trip any double.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn boundary_csv(b: &Boundary64) -> String {
    let mut out = String::from("theta,support,re,im\n");
    for s in &b.samples {
        let _ = writeln!(out, "{},{},{},{}", sig17(s.theta), sig17(s.support), sig17(s.point.re), sig17(s.point.im));
    }
    out
}

/// Affine map from the complex plane to SVG pixels with equal scales on
/// both axes and the data box centred inside 5% margins.
struct Frame {
    scale: f64,
    cx: f64,
    cy: f64,
}

impl Frame {
    fn fit(points: &[Complex64]) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for z in points {
            x0 = x0.min(z.re);
            x1 = x1.max(z.re);
            y0 = y0.min(z.im);
            y1 = y1.max(z.im);
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        let avail_w = WIDTH * (1.0 - 2.0 * MARGIN);
        let avail_h = HEIGHT * (1.0 - 2.0 * MARGIN);
        // a zero extent places no constraint; a single point gets a unit box
        let fit = |avail: f64, span: f64| if span > 0.0 { avail / span } else { f64::INFINITY };
        let mut scale = fit(avail_w, x1 - x0).min(fit(avail_h, y1 - y0));
        if !scale.is_finite() {
            scale = avail_w.min(avail_h);
        }
        Frame { scale, cx: 0.5 * (x0 + x1), cy: 0.5 * (y0 + y1) }
    }

    fn map(&self, z: Complex64) -> (f64, f64) {
        (WIDTH / 2.0 + (z.re - self.cx) * self.scale, HEIGHT / 2.0 - (z.im - self.cy) * self.scale)
    }
}

/// Boundary as a closed polyline, eigenvalues as crosses, and the real and
/// imaginary axes where they cross the viewport.
pub fn boundary_svg(b: &Boundary64, eigenvalues: &[Complex64]) -> String {
    let points = b.points();
    let all: Vec<Complex64> = points.iter().chain(eigenvalues).copied().collect();
    let frame = Frame::fit(&all);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let (ox, oy) = frame.map(Complex64::new(0.0, 0.0));
    if (0.0..=WIDTH).contains(&ox) {
        let _ = writeln!(out, r##"<line x1="{ox:.3}" y1="0" x2="{ox:.3}" y2="{HEIGHT}" stroke="#bbbbbb" stroke-width="1"/>"##);
    }
    if (0.0..=HEIGHT).contains(&oy) {
        let _ = writeln!(out, r##"<line x1="0" y1="{oy:.3}" x2="{WIDTH}" y2="{oy:.3}" stroke="#bbbbbb" stroke-width="1"/>"##);
    }
    let mut poly = String::new();
    for (k, z) in points.iter().enumerate() {
        let (x, y) = frame.map(*z);
        if k > 0 {
            poly.push(' ');
        }
        let _ = write!(poly, "{x:.3},{y:.3}");
    }
    let _ = writeln!(out, r##"<polygon points="{poly}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>"##);
    for z in eigenvalues {
        let (x, y) = frame.map(*z);
        let r = 5.0;
        let _ = writeln!(
            out,
            r##"<path d="M {:.3} {:.3} L {:.3} {:.3} M {:.3} {:.3} L {:.3} {:.3}" stroke="#c0392b" stroke-width="1.5"/>"##,
            x - r,
            y - r,
            x + r,
            y + r,
            x - r,
            y + r,
            x + r,
            y - r
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use numrange_core::{boundary, fixtures};

    #[test]
    fn csv_has_header_and_one_row_per_sample() {
        let b = boundary(&fixtures::t_diag::<f64>(), 8).unwrap();
        let csv = boundary_csv(&b);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "theta,support,re,im");
        assert_eq!(lines.len(), 9);
        assert!(lines[1].starts_with("0.0000000000000000e0,9.0000000000000000e0,"));
        for l in &lines[1..] {
            let fields: Vec<f64> = l.split(',').map(|f| f.parse().unwrap()).collect();
            assert_eq!(fields.len(), 4);
        }
    }

    #[test]
    fn svg_fits_the_viewport() {
        let a = fixtures::range_example::<f64>(2).unwrap();
        let b = boundary(&a, 50).unwrap();
        let eigs = numrange_core::eigenvalues(&a, false).unwrap().values;
        let svg = boundary_svg(&b, &eigs);
        assert!(svg.contains(r#"width="800" height="600""#));
        assert_eq!(svg.matches("<path").count(), eigs.len());
        let frame = Frame::fit(&b.points().into_iter().chain(eigs.iter().copied()).collect::<Vec<_>>());
        for z in b.points() {
            let (x, y) = frame.map(z);
            assert!((40.0 - 1e-9..=760.0 + 1e-9).contains(&x) && (30.0 - 1e-9..=570.0 + 1e-9).contains(&y));
        }
    }

    #[test]
    fn degenerate_range_still_renders() {
        let b = boundary(&numrange_core::Tensor64::identity(&[2]).unwrap(), 4).unwrap();
        let svg = boundary_svg(&b, &[]);
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
