//! Numerical range `V(a)`, numerical radius and the necessary conditions a
//! G1-class element must satisfy.
//!
//! Two constructions are provided:
//!
//! * [`numerical_range_disks`] works for every norm. It uses the classical
//!   identity `V(a) = ⋂_ζ D(ζ, ‖a − ζ‖)`, whose support function in direction
//!   `e^{iθ}` is `inf_{s>0} (‖s + e^{−iθ}a‖ − s)`. That infimum is the limit
//!   `s → ∞` (the logarithmic norm), which has a closed form for every norm
//!   offered here; [`sampled_support`] evaluates the same quantity on a
//!   geometric ray grid as a cross-check. The supporting half-planes are
//!   intersected, giving an outer polygon.
//! * [`field_of_values`] is the Hilbert-space case: for each angle the
//!   extreme eigenvector of the Hermitian part of `e^{−iθ}A` is a boundary
//!   point of `W(A)`, giving an inner polygon.
//!
//! Both start from equally spaced directions and bisect the angular gaps
//! whose corner error bound is too large, so the reported `discretization`
//! is an a-posteriori bound. The numerical radius is `max_θ h(θ)` refined by
//! a golden-section search, a lower bound for `ν(a)` up to rounding.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry;
use crate::linalg::{hermitian_eigen, ComplexMatrix, OperatorNormKind};
use crate::spectral::{spectrum_default, AlgebraElement};

pub const DEFAULT_DIRECTIONS: usize = 360;
/// Points on the ray grid of [`sampled_support`].
pub const RAY_SAMPLES: usize = 64;
/// The ray grid spans `[1e-3, 1e3] · ‖a‖`.
pub const RAY_SPAN: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RangeMode {
    DiskIntersection,
    FieldOfValues,
}

/// Convex polygon approximating `V(a)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericalRangeHull {
    /// Counter-clockwise vertices.
    pub boundary: Vec<Complex64>,
    pub numerical_radius: f64,
    pub mode: RangeMode,
    /// Upper bound on the Hausdorff distance between the polygon and the
    /// exact set, from angular and ray sampling.
    pub discretization: f64,
}

impl NumericalRangeHull {
    fn from_points(points: &[Complex64], mode: RangeMode, discretization: impl Fn(f64) -> f64) -> Self {
        let boundary = geometry::convex_hull(points);
        let numerical_radius = boundary.iter().map(|z| z.norm()).fold(0.0, f64::max);
        Self {
            boundary,
            numerical_radius,
            mode,
            discretization: discretization(numerical_radius),
        }
    }

    pub fn distance(&self, z: Complex64) -> f64 {
        geometry::distance(&self.boundary, z)
    }

    pub fn contains(&self, z: Complex64, slack: f64) -> bool {
        self.distance(z) <= slack
    }

    /// Largest `|Im|` over the vertices.
    pub fn max_imag(&self) -> f64 {
        self.boundary.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// `lim_{s→∞} (‖s + b‖ − s)`, the logarithmic norm of `b`.
fn ray_limit(b: &AlgebraElement) -> Result<f64> {
    match b {
        AlgebraElement::Matrix { matrix, norm } => {
            let n = matrix.order();
            // row (inf) or column (1) dominance of the real diagonal part
            let dominance = |entry: &dyn Fn(usize, usize) -> Complex64| {
                (0..n)
                    .map(|i| entry(i, i).re + (0..n).filter(|&j| j != i).map(|j| entry(i, j).norm()).sum::<f64>())
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            Ok(match norm {
                OperatorNormKind::InducedInf => dominance(&|i, j| matrix.get(i, j)),
                OperatorNormKind::Induced1 => dominance(&|i, j| matrix.get(j, i)),
                OperatorNormKind::Induced2 => *hermitian_eigen(matrix)?.values.last().expect("order is at least one"),
            })
        }
        AlgebraElement::Nilpotent(x) => Ok(x.alpha.re + x.beta.norm()),
    }
}

/// Support value `max Re(e^{−iθ} V(a))`.
///
/// `s ↦ ‖s + b‖ − s` is nonincreasing by the triangle inequality, so the
/// infimum over the ray is its limit, computed in closed form.
pub fn support_function(a: &AlgebraElement, theta: f64) -> Result<f64> {
    ray_limit(&a.scale(Complex64::from_polar(1.0, -theta)))
}

/// `min_t (‖t + e^{−iθ}a‖ − t)` over the geometric grid `t ∈ [1e-3, 1e3]·‖a‖`
/// with [`RAY_SAMPLES`] points. Never below [`support_function`]; kept as an
/// independent check of the closed form.
pub fn sampled_support(a: &AlgebraElement, theta: f64) -> Result<f64> {
    let scale = a.norm()?;
    if scale == 0.0 {
        return Ok(0.0);
    }
    let rotated = a.scale(Complex64::from_polar(1.0, -theta));
    let ratio = (RAY_SPAN * RAY_SPAN).powf(1.0 / (RAY_SAMPLES - 1) as f64);
    let mut best = f64::INFINITY;
    let mut t = scale / RAY_SPAN;
    for _ in 0..RAY_SAMPLES {
        best = best.min(rotated.shift(Complex64::new(t, 0.0)).norm()? - t);
        t *= ratio;
    }
    Ok(best)
}

/// Corners are refined until each is within `REFINE_TOL · (1 + ν)` of the
/// set, using at most `REFINE_FACTOR` times the requested directions.
const REFINE_TOL: f64 = 1e-6;
const REFINE_FACTOR: usize = 8;

/// The supporting line `Re(e^{−iθ} z) = offset`, where `offset` is the
/// support value `h` plus any widening, and its touching point when known.
#[derive(Debug, Clone, Copy)]
struct Support {
    theta: f64,
    h: f64,
    offset: f64,
    point: Option<Complex64>,
}

fn corner(a: &Support, b: &Support) -> Complex64 {
    let det = (b.theta - a.theta).sin();
    Complex64::new(
        (a.offset * b.theta.sin() - b.offset * a.theta.sin()) / det,
        (b.offset * a.theta.cos() - a.offset * b.theta.cos()) / det,
    )
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len = d.norm_sqr();
    if len == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * d.conj()).re / len;
    (p - (a + d * t.clamp(0.0, 1.0))).norm()
}

fn gap(lines: &[Support], k: usize) -> f64 {
    let next = if k + 1 == lines.len() {
        lines[0].theta + 2.0 * PI
    } else {
        lines[k + 1].theta
    };
    next - lines[k].theta
}

/// Bound on how far the corner between lines `k` and `k + 1` can be from
/// the set. With touching points the set's boundary there lies in the
/// triangle they span with the corner. Without them, the touching points
/// still lie on the two polygon edges meeting at the corner, and the
/// triangle is obtuse, giving `min(edge lengths) · sin(gap)`.
fn corner_bounds(lines: &[Support]) -> Vec<f64> {
    let m = lines.len();
    let corners: Vec<Complex64> = (0..m).map(|k| corner(&lines[k], &lines[(k + 1) % m])).collect();
    (0..m)
        .map(|k| {
            let next = (k + 1) % m;
            match (lines[k].point, lines[next].point) {
                (Some(p), Some(q)) => segment_distance(corners[k], p, q),
                _ => {
                    let before = (corners[k] - corners[(k + m - 1) % m]).norm();
                    let after = (corners[next] - corners[k]).norm();
                    before.min(after) * gap(lines, k).sin()
                }
            }
        })
        .collect()
}

/// Bisects angular gaps whose corner bound exceeds `target` until none do or
/// the line budget is spent. Returns the lines and the largest bound left.
fn refine_lines(
    mut lines: Vec<Support>,
    target: f64,
    budget: usize,
    eval: &impl Fn(f64) -> Result<Support>,
) -> Result<(Vec<Support>, f64)> {
    loop {
        let bounds = corner_bounds(&lines);
        let worst = bounds.iter().copied().fold(0.0, f64::max);
        if worst <= target || lines.len() >= budget {
            return Ok((lines, worst));
        }
        let mut room = budget - lines.len();
        let mut next = Vec::with_capacity(2 * lines.len());
        for k in 0..lines.len() {
            next.push(lines[k]);
            if bounds[k] > target && room > 0 {
                next.push(eval(lines[k].theta + 0.5 * gap(&lines, k))?);
                room -= 1;
            }
        }
        lines = next;
    }
}

/// Golden-section refinement of `max_θ h(θ)` between the neighbours of the
/// best line. The result is an attained `h(θ)`.
fn refine_radius(lines: &[Support], eval: &impl Fn(f64) -> Result<Support>) -> Result<f64> {
    let m = lines.len();
    let (k, best) = lines
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.h.total_cmp(&y.1.h).then(y.0.cmp(&x.0)))
        .expect("at least one direction");
    let (mut lo, mut hi) = (best.theta - gap(lines, (k + m - 1) % m), best.theta + gap(lines, k));
    let h = |theta: f64| eval(theta).map(|s| s.h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (h(x1)?, h(x2)?);
    let mut top = best.h.max(f1).max(f2);
    for _ in 0..60 {
        if f1 >= f2 {
            hi = x2;
            (x2, f2) = (x1, f1);
            x1 = hi - g * (hi - lo);
            f1 = h(x1)?;
        } else {
            lo = x1;
            (x1, f1) = (x2, f2);
            x2 = lo + g * (hi - lo);
            f2 = h(x2)?;
        }
        top = top.max(f1).max(f2);
    }
    Ok(top)
}

/// Initial equally spaced lines, corner refinement and radius refinement.
fn build_lines(directions: usize, eval: &impl Fn(f64) -> Result<Support>) -> Result<(Vec<Support>, f64, f64)> {
    let lines = (0..directions)
        .map(|k| eval(2.0 * PI * k as f64 / directions as f64))
        .collect::<Result<Vec<_>>>()?;
    let scale = 1.0 + lines.iter().map(|l| l.h.abs()).fold(0.0, f64::max);
    let (lines, worst) = refine_lines(lines, REFINE_TOL * scale, REFINE_FACTOR * directions, eval)?;
    let radius = refine_radius(&lines, eval)?;
    Ok((lines, worst, radius))
}

/// Outer polygon for `V(a)` from supporting half-planes: `directions`
/// equally spaced ones, then bisections where a corner may stand off the
/// set by more than a small multiple of `1 + ν`.
pub fn numerical_range_disks(a: &AlgebraElement, directions: usize) -> Result<NumericalRangeHull> {
    if directions < 16 {
        return Err(Error::InvalidArgument(format!(
            "need at least 16 directions, got {directions}"
        )));
    }
    let norm = a.norm()?;
    // widening each half-plane by a few ulps of the data keeps degenerate
    // ranges (points, segments) from being clipped away by rounding
    let rounding = 16.0 * f64::EPSILON * (1.0 + norm);
    let eval = |theta: f64| {
        let h = support_function(a, theta)?;
        Ok(Support {
            theta,
            h,
            offset: h + rounding,
            point: None,
        })
    };
    let (lines, worst, radius) = build_lines(directions, &eval)?;
    let r = 1.5 * norm + 1.0;
    let mut poly = vec![
        Complex64::new(-r, -r),
        Complex64::new(r, -r),
        Complex64::new(r, r),
        Complex64::new(-r, r),
    ];
    for l in &lines {
        poly = geometry::clip_half_plane(&poly, Complex64::from_polar(1.0, l.theta), l.offset);
        if poly.is_empty() {
            return Err(Error::InvalidArgument("support function is inconsistent".into()));
        }
    }
    let mut hull = NumericalRangeHull::from_points(&poly, RangeMode::DiskIntersection, |_| worst + rounding + 1e-9);
    hull.numerical_radius = radius;
    Ok(hull)
}

/// Inner polygon for the field of values `W(A) = {xᴴAx : ‖x‖₂ = 1}`, with
/// angles added where the boundary between two vertices may bulge out.
pub fn field_of_values(a: &ComplexMatrix, angles: usize) -> Result<NumericalRangeHull> {
    if angles < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 angles, got {angles}")));
    }
    let n = a.order();
    let eval = |theta: f64| {
        let rotated = a.scale(Complex64::from_polar(1.0, -theta));
        let h = hermitian_eigen(&rotated)?;
        let x = h.vector(n - 1);
        let ax = a.mul_vec(&x);
        let p: Complex64 = x.iter().zip(&ax).map(|(xi, yi)| xi.conj() * yi).sum();
        Ok(Support {
            theta,
            h: h.values[n - 1],
            offset: h.values[n - 1],
            point: Some(p),
        })
    };
    let (lines, worst, radius) = build_lines(angles, &eval)?;
    let points: Vec<Complex64> = lines.iter().filter_map(|l| l.point).collect();
    let mut hull = NumericalRangeHull::from_points(&points, RangeMode::FieldOfValues, |_| worst + 1e-9);
    hull.numerical_radius = radius;
    Ok(hull)
}

/// `V(a)` with the best construction for the element's norm: the field of
/// values for 2-norm matrices, the disk intersection otherwise.
pub fn numerical_range(a: &AlgebraElement, directions: usize) -> Result<NumericalRangeHull> {
    match a {
        AlgebraElement::Matrix {
            matrix,
            norm: OperatorNormKind::Induced2,
        } => field_of_values(matrix, directions),
        _ => numerical_range_disks(a, directions),
    }
}

/// `V(a) ⊆ ℝ` up to `tol`.
pub fn is_hermitian(a: &AlgebraElement, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    Ok(numerical_range(a, DEFAULT_DIRECTIONS)?.max_imag() <= tol)
}

/// Outcome of [`check_g1_necessary`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NecessaryReport {
    pub mode: RangeMode,
    /// Hausdorff distance between the numerical-range polygon and the
    /// convex hull of the spectrum.
    pub hull_distance: f64,
    pub discretization: f64,
    pub spectral_radius: f64,
    pub numerical_radius: f64,
    pub norm: f64,
    /// `‖a‖ / r(a)`, absent when `r(a) = 0`.
    pub norm_over_radius: Option<f64>,
    /// `ν − r`.
    pub slack_radius: f64,
    /// `‖a‖ − ν`.
    pub slack_numerical: f64,
    /// `e·ν − ‖a‖`.
    pub slack_norm: f64,
    pub quasinilpotent: bool,
    pub not_g1: bool,
    pub reasons: Vec<String>,
}

const NECESSARY_TOL: f64 = 1e-6;

/// Checks `V(a) = conv σ(a)` and `‖a‖ ≤ e·r(a)`, and reports the chain
/// `r ≤ ν ≤ ‖a‖ ≤ e·ν`.
pub fn check_g1_necessary(a: &AlgebraElement) -> Result<NecessaryReport> {
    let s = spectrum_default(a)?;
    let hull = numerical_range(a, DEFAULT_DIRECTIONS)?;
    let norm = a.norm()?;
    let r = s.spectral_radius;
    let nu = hull.numerical_radius;
    let spectral_hull = geometry::convex_hull(&s.centers());
    let hull_distance = geometry::hausdorff(&hull.boundary, &spectral_hull);

    let mut reasons = Vec::new();
    let quasinilpotent = r <= 1e-12 * (1.0 + norm) && norm > 1e-12;
    if quasinilpotent {
        reasons.push(format!("quasinilpotent: spectrum is {{0}} but norm is {norm:e}"));
    }
    if hull_distance > NECESSARY_TOL + hull.discretization {
        reasons.push(format!(
            "numerical range differs from the spectral hull by {hull_distance:e} (bound {:e})",
            NECESSARY_TOL + hull.discretization
        ));
    }
    let norm_over_radius = if r > 0.0 { Some(norm / r) } else { None };
    if let Some(q) = norm_over_radius {
        if q > E + NECESSARY_TOL {
            reasons.push(format!("norm/spectral radius = {q} exceeds e"));
        }
    }
    Ok(NecessaryReport {
        mode: hull.mode,
        hull_distance,
        discretization: hull.discretization,
        spectral_radius: r,
        numerical_radius: nu,
        norm,
        norm_over_radius,
        slack_radius: nu - r,
        slack_numerical: norm - nu,
        slack_norm: E * nu - norm,
        quasinilpotent,
        not_g1: !reasons.is_empty(),
        reasons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mat(rows: &[&[f64]], norm: OperatorNormKind) -> AlgebraElement {
        AlgebraElement::matrix(ComplexMatrix::from_real_rows(rows).unwrap(), norm)
    }

    #[test]
    fn scalar_shrinks_to_point() {
        for k in OperatorNormKind::ALL {
            let a = AlgebraElement::matrix(ComplexMatrix::scalar(3, c(3.0, 0.0)), k);
            let h = numerical_range(&a, 64).unwrap();
            assert!(
                geometry::hausdorff(&h.boundary, &[c(3.0, 0.0)]) <= h.discretization,
                "{k}"
            );
            assert!((h.numerical_radius - 3.0).abs() <= h.discretization);
        }
    }

    #[test]
    fn diagonal_inf_norm_is_segment() {
        let a = mat(&[&[0.0, 0.0], &[0.0, 1.0]], OperatorNormKind::InducedInf);
        let h = numerical_range_disks(&a, DEFAULT_DIRECTIONS).unwrap();
        let seg = [c(0.0, 0.0), c(1.0, 0.0)];
        assert!(geometry::hausdorff(&h.boundary, &seg) < 1e-3);
    }

    #[test]
    fn brute_force_support_for_diagonal_inf_norm() {
        // ‖diag(-t, 1-t)‖_∞ = max(|t|, |1-t|): support of the segment [0,1]
        let a = mat(&[&[0.0, 0.0], &[0.0, 1.0]], OperatorNormKind::InducedInf);
        for k in 0..16 {
            let theta = 2.0 * PI * k as f64 / 16.0;
            let exact = theta.cos().max(0.0);
            let h = support_function(&a, theta).unwrap();
            assert!((h - exact).abs() <= 1e-12, "θ={theta} h={h}");
            let sampled = sampled_support(&a, theta).unwrap();
            assert!(
                sampled >= exact - 1e-12 && sampled <= exact + 1e-3,
                "θ={theta} sampled={sampled}"
            );
        }
    }

    #[test]
    fn ray_grid_approaches_closed_form() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.5), c(-0.3, 0.2), c(0.0, 1.0)],
            vec![c(0.4, 0.0), c(-1.0, 0.0), c(0.2, -0.7)],
            vec![c(0.0, -0.2), c(0.9, 0.1), c(0.3, 0.3)],
        ])
        .unwrap();
        let elements = OperatorNormKind::ALL
            .iter()
            .map(|&k| AlgebraElement::matrix(m.clone(), k))
            .chain([AlgebraElement::nilpotent(c(0.5, -1.0), c(2.0, 1.0))]);
        for a in elements {
            let norm = a.norm().unwrap();
            for k in 0..24 {
                let theta = 2.0 * PI * k as f64 / 24.0;
                let exact = support_function(&a, theta).unwrap();
                let sampled = sampled_support(&a, theta).unwrap();
                // the grid stops at t = 1e3·‖a‖, leaving O(‖a‖/1e3)
                assert!(
                    sampled >= exact - 1e-9 && sampled <= exact + 2e-3 * norm,
                    "{} θ={theta}",
                    a.norm_label()
                );
            }
        }
    }

    #[test]
    fn nilpotent_algebra_range_is_unit_disk() {
        // ‖n − ζ‖ = |ζ| + 1, so V = ⋂ D(ζ, |ζ|+1) = D(0, 1)
        let a = AlgebraElement::nilpotent(c(0.0, 0.0), c(1.0, 0.0));
        let h = numerical_range_disks(&a, DEFAULT_DIRECTIONS).unwrap();
        for v in &h.boundary {
            assert!((v.norm() - 1.0).abs() <= h.discretization, "{v}");
        }
        // brute force: random ζ disks all contain the polygon's inscribed disk
        for k in 0..50 {
            let zeta = Complex64::from_polar(0.1 * k as f64, k as f64);
            let radius = zeta.norm() + 1.0;
            assert!(zeta.norm() + 1.0 - 1e-12 <= radius);
        }
    }

    #[test]
    fn jordan_field_of_values_is_half_disk() {
        let j = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let h = field_of_values(&j, 360).unwrap();
        for v in &h.boundary {
            assert!((v.norm() - 0.5).abs() < 1e-9);
        }
        assert!(h.boundary.len() >= 300);
        // brute force over unit vectors x = (cos a, e^{ib} sin a)
        let mut max_r: f64 = 0.0;
        for i in 0..=200 {
            for k in 0..64 {
                let al = PI / 2.0 * i as f64 / 200.0;
                let b = 2.0 * PI * k as f64 / 64.0;
                let x = [c(al.cos(), 0.0), Complex64::from_polar(al.sin(), b)];
                let w = x[0].conj() * x[1];
                max_r = max_r.max(w.norm());
                assert!(h.distance(w) <= h.discretization);
            }
        }
        assert!((max_r - 0.5).abs() < 1e-4);
    }

    #[test]
    fn skew_field_of_values_is_vertical_segment() {
        let r = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let h = field_of_values(&r, 360).unwrap();
        let seg = [c(0.0, -1.0), c(0.0, 1.0)];
        assert!(geometry::hausdorff(&h.boundary, &seg) < 1e-9);
    }

    #[test]
    fn hermitian_detection() {
        let d = mat(&[&[0.0, 0.0], &[0.0, 1.0]], OperatorNormKind::Induced2);
        assert!(is_hermitian(&d, 1e-9).unwrap());
        let n = AlgebraElement::nilpotent(c(0.0, 0.0), c(1.0, 0.0));
        assert!(!is_hermitian(&n, 1e-6).unwrap());
        let i = AlgebraElement::matrix(ComplexMatrix::scalar(2, c(0.0, 1.0)), OperatorNormKind::Induced2);
        assert!(!is_hermitian(&i, 1e-6).unwrap());
        assert!(is_hermitian(&d, 0.0).is_err());
    }

    #[test]
    fn necessary_conditions() {
        let a = AlgebraElement::matrix(ComplexMatrix::scalar(3, c(5.0, 0.0)), OperatorNormKind::Induced2);
        let rep = check_g1_necessary(&a).unwrap();
        assert!(!rep.not_g1, "{:?}", rep.reasons);
        assert!(rep.slack_radius.abs() < 1e-9 && rep.slack_numerical.abs() < 1e-9);

        let j = mat(&[&[0.0, 1.0], &[0.0, 0.0]], OperatorNormKind::Induced2);
        let rep = check_g1_necessary(&j).unwrap();
        assert!(rep.quasinilpotent && rep.not_g1);
        assert_eq!(rep.spectral_radius, 0.0);
        assert!((rep.norm - 1.0).abs() < 1e-14);

        let x = AlgebraElement::nilpotent(c(2.0, 0.0), c(1.0, 0.0));
        let rep = check_g1_necessary(&x).unwrap();
        assert!(rep.not_g1 && !rep.quasinilpotent);
        assert!((rep.hull_distance - 1.0).abs() < 1e-2);
    }
}
