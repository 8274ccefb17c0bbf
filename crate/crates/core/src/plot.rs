//! Marching-squares contours of a resolvent-norm field and a minimal SVG
//! rendering of them.
//!
//! Interpolation runs on the reciprocal field `1/‖(z − a)⁻¹‖`, which is
//! Lipschitz, zero at spectrum hits, and crosses the level `ε` exactly on
//! the boundary of `Λ_ε`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pseudospec::PseudospectrumField;

pub type Segment = (Complex64, Complex64);

/// Boundary of `Λ_ε` as unordered line segments.
pub fn contour_segments(field: &PseudospectrumField, eps: f64) -> Result<Vec<Segment>> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let g = &field.grid;
    let s = |i: usize, j: usize| {
        let v = field.value(i, j);
        if v.is_infinite() {
            0.0
        } else {
            1.0 / v
        }
    };
    let mut out = Vec::new();
    for j in 0..g.ny - 1 {
        for i in 0..g.nx - 1 {
            // corners counter-clockwise from bottom-left
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let vals = corners.map(|(a, b)| s(a, b));
            let pts = corners.map(|(a, b)| g.node(a, b));
            let case = vals
                .iter()
                .enumerate()
                .fold(0, |acc, (k, &v)| acc | (usize::from(v <= eps) << k));
            let edge = |e: usize| {
                let (a, b) = (e, (e + 1) % 4);
                let (va, vb) = (vals[a], vals[b]);
                let t = if va == vb {
                    0.5
                } else {
                    ((eps - va) / (vb - va)).clamp(0.0, 1.0)
                };
                pts[a] + (pts[b] - pts[a]) * t
            };
            let centre_inside = vals.iter().sum::<f64>() / 4.0 <= eps;
            // edges: 0 bottom, 1 right, 2 top, 3 left
            let pairs: &[(usize, usize)] = match case {
                0 | 15 => &[],
                1 | 14 => &[(3, 0)],
                2 | 13 => &[(0, 1)],
                3 | 12 => &[(3, 1)],
                4 | 11 => &[(1, 2)],
                6 | 9 => &[(0, 2)],
                7 | 8 => &[(3, 2)],
                5 if centre_inside => &[(0, 1), (2, 3)],
                5 => &[(3, 0), (1, 2)],
                10 if centre_inside => &[(3, 0), (1, 2)],
                10 => &[(0, 1), (2, 3)],
                _ => unreachable!("four corners give sixteen cases"),
            };
            out.extend(pairs.iter().map(|&(p, q)| (edge(p), edge(q))));
        }
    }
    Ok(out)
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// SVG of the contours for each `ε`, with the spectrum drawn as dots. The
/// view box is the grid rectangle with the imaginary axis pointing up.
pub fn contours_svg(field: &PseudospectrumField, eps_list: &[f64], spectrum: &[Complex64]) -> Result<String> {
    let g = &field.grid;
    let w = g.re_max - g.re_min;
    let h = g.im_max - g.im_min;
    let stroke = 0.002 * w.max(h);
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\" width=\"600\" height=\"{:.0}\">\n",
        g.re_min,
        -g.im_max,
        w,
        h,
        600.0 * h / w
    );
    svg.push_str(&format!(
        "<rect x=\"{:.6}\" y=\"{:.6}\" width=\"{w:.6}\" height=\"{h:.6}\" fill=\"white\"/>\n",
        g.re_min, -g.im_max
    ));
    for (k, &eps) in eps_list.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        svg.push_str(&format!(
            "<g stroke=\"{colour}\" stroke-width=\"{stroke:.6}\" fill=\"none\"><title>eps = {eps}</title>\n"
        ));
        for (p, q) in contour_segments(field, eps)? {
            svg.push_str(&format!(
                "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\"/>\n",
                p.re, -p.im, q.re, -q.im
            ));
        }
        svg.push_str("</g>\n");
    }
    for z in spectrum {
        svg.push_str(&format!(
            "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{:.6}\" fill=\"black\"/>\n",
            z.re,
            -z.im,
            3.0 * stroke
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ComplexMatrix, OperatorNormKind};
    use crate::pseudospec::{resolvent_field, GridSpec};
    use crate::spectral::AlgebraElement;

    #[test]
    fn circle_contour() {
        let a = AlgebraElement::matrix(ComplexMatrix::zeros(1), OperatorNormKind::Induced2);
        let g = GridSpec::new(-1.0, 1.0, -1.0, 1.0, 41, 41).unwrap();
        let f = resolvent_field(&a, &g).unwrap();
        let segs = contour_segments(&f, 0.5).unwrap();
        assert!(segs.len() > 20);
        for (p, q) in &segs {
            // linear interpolation of |z| is exact along axis-parallel edges
            // up to the curvature of the circle within one cell
            assert!((p.norm() - 0.5).abs() < 2e-3, "{p}");
            assert!((q.norm() - 0.5).abs() < 2e-3, "{q}");
        }
        assert!(contour_segments(&f, 5.0).unwrap().is_empty());
    }

    #[test]
    fn svg_is_deterministic() {
        let a = AlgebraElement::matrix(
            ComplexMatrix::diagonal(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap(),
            OperatorNormKind::Induced2,
        );
        let g = GridSpec::new(-0.5, 1.5, -0.5, 0.5, 41, 21).unwrap();
        let f = resolvent_field(&a, &g).unwrap();
        let one = contours_svg(&f, &[0.1, 0.2], &[Complex64::new(0.0, 0.0)]).unwrap();
        let two = contours_svg(&f, &[0.1, 0.2], &[Complex64::new(0.0, 0.0)]).unwrap();
        assert_eq!(one, two);
        assert!(one.starts_with("<svg") && one.trim_end().ends_with("</svg>"));
        assert_eq!(one.matches("<g ").count(), 2);
    }
}
