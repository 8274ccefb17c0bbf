//! Holomorphic functional calculus by contour quadrature, Riesz projections
//! and finite-spectrum decompositions.
//!
//! `f(a) = (1/2πi) ∮ f(z)(z − a)⁻¹ dz` is approximated on each circle
//! `z = c + ρe^{iθ}` by the trapezoidal rule in `θ`, which for analytic
//! integrands converges geometrically in the number of nodes.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{left_svd, sigma_max, singular_values, ComplexMatrix, RANK_TOL};
use crate::spectral::{resolvent, spectrum_default, AlgebraElement, Spectrum};

pub const DEFAULT_NODES: usize = 128;
pub const MIN_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

impl Circle {
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Self {
        Self { center, radius, nodes }
    }

    pub fn node(&self, k: usize) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, 2.0 * PI * k as f64 / self.nodes as f64)
    }
}

/// A union of positively oriented circles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub circles: Vec<Circle>,
}

impl Contour {
    pub fn new(circles: Vec<Circle>) -> Self {
        Self { circles }
    }

    pub fn circle(center: Complex64, radius: f64, nodes: usize) -> Self {
        Self::new(vec![Circle::new(center, radius, nodes)])
    }

    /// One circle of the Riesz radius around every cluster.
    pub fn around_spectrum(s: &Spectrum, nodes: usize) -> Result<Self> {
        let circles = (0..s.len())
            .map(|i| Ok(Circle::new(s.clusters[i].center, riesz_radius(s, i)?, nodes)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(circles))
    }

    /// Same circles with a different node count.
    pub fn with_nodes(&self, nodes: usize) -> Self {
        Self::new(self.circles.iter().map(|c| Circle { nodes, ..*c }).collect())
    }

    /// Checks the circles are disjoint, and that every cluster center is
    /// inside exactly one circle or outside all of them, by a margin of a
    /// quarter radius in either case.
    pub fn validate(&self, s: &Spectrum) -> Result<()> {
        if self.circles.is_empty() {
            return Err(Error::InvalidContour("no circles".into()));
        }
        for (k, c) in self.circles.iter().enumerate() {
            if !(c.radius > 0.0) || !c.radius.is_finite() || !c.center.re.is_finite() || !c.center.im.is_finite() {
                return Err(Error::InvalidContour(format!("circle {k} has radius {}", c.radius)));
            }
            if c.nodes < MIN_NODES {
                return Err(Error::InvalidContour(format!(
                    "circle {k} has {} nodes, need at least {MIN_NODES}",
                    c.nodes
                )));
            }
            for (m, o) in self.circles.iter().enumerate().skip(k + 1) {
                if (c.center - o.center).norm() <= c.radius + o.radius {
                    return Err(Error::InvalidContour(format!("circles {k} and {m} intersect")));
                }
            }
        }
        for cl in &s.clusters {
            let mut inside = 0;
            for c in &self.circles {
                let d = (cl.center - c.center).norm();
                let margin = c.radius / 4.0;
                if d <= c.radius - margin {
                    inside += 1;
                } else if d < c.radius + margin {
                    return Err(Error::InvalidContour(format!(
                        "spectral point {} is within {margin:e} of a circle",
                        cl.center
                    )));
                }
            }
            if inside > 1 {
                return Err(Error::InvalidContour(format!(
                    "spectral point {} is enclosed twice",
                    cl.center
                )));
            }
        }
        Ok(())
    }
}

/// A scalar function, trusted to be analytic on a neighbourhood of the
/// contour and the spectrum it encloses.
#[derive(Clone)]
pub struct ScalarFunction {
    name: String,
    eval: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    /// Ascending coefficients, when the function is a polynomial.
    pub coefficients: Option<Vec<Complex64>>,
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFunction")
            .field("name", &self.name)
            .field("coefficients", &self.coefficients)
            .finish()
    }
}

impl ScalarFunction {
    pub fn from_fn(name: impl Into<String>, f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(f),
            coefficients: None,
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::polynomial(&[c])
    }

    pub fn identity() -> Self {
        Self::polynomial(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    pub fn exp() -> Self {
        Self::from_fn("exp", |z: Complex64| z.exp())
    }

    /// `p(z) = Σ coeffs[k] zᵏ`.
    pub fn polynomial(coeffs: &[Complex64]) -> Self {
        let owned = coeffs.to_vec();
        let for_eval = owned.clone();
        Self {
            name: format!("polynomial{coeffs:?}"),
            eval: Arc::new(move |z| {
                for_eval
                    .iter()
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
            }),
            coefficients: Some(owned),
        }
    }

    /// `Π (z − r)` over the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Self::polynomial(&coeffs)
    }

    /// Pointwise product; stays a polynomial when both factors are.
    pub fn product(f: &Self, g: &Self) -> Self {
        if let (Some(p), Some(q)) = (&f.coefficients, &g.coefficients) {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); p.len() + q.len() - 1];
            for (i, a) in p.iter().enumerate() {
                for (j, b) in q.iter().enumerate() {
                    coeffs[i + j] += a * b;
                }
            }
            return Self::polynomial(&coeffs);
        }
        let (fe, ge) = (f.eval.clone(), g.eval.clone());
        Self::from_fn(format!("({})*({})", f.name, g.name), move |z| fe(z) * ge(z))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.eval)(z)
    }
}

/// Contour-quadrature approximation of `f(a)`.
pub fn funcalc(a: &AlgebraElement, f: &ScalarFunction, gamma: &Contour) -> Result<AlgebraElement> {
    let s = spectrum_default(a)?;
    gamma.validate(&s)?;
    funcalc_unchecked(a, f, gamma)
}

fn funcalc_unchecked(a: &AlgebraElement, f: &ScalarFunction, gamma: &Contour) -> Result<AlgebraElement> {
    let nodes: Vec<(Circle, usize)> = gamma
        .circles
        .iter()
        .flat_map(|c| (0..c.nodes).map(move |k| (*c, k)))
        .collect();
    let terms = nodes
        .par_iter()
        .map(|(c, k)| {
            let z = c.node(*k);
            let fz = f.eval(z);
            if !fz.re.is_finite() || !fz.im.is_finite() {
                return Err(Error::NonFinite);
            }
            let weight = fz * (z - c.center) / c.nodes as f64;
            Ok(resolvent(a, z)?.scale(weight))
        })
        .collect::<Result<Vec<_>>>()?;
    // fixed summation order keeps the result independent of thread count
    let mut acc = a.zero_like();
    for t in &terms {
        acc = acc.add(t);
    }
    Ok(acc)
}

/// Riesz contour radius for cluster `index`: a quarter of the gap to the
/// nearest other cluster, capped at `(1 + r(a))/2`.
pub fn riesz_radius(s: &Spectrum, index: usize) -> Result<f64> {
    if index >= s.len() {
        return Err(Error::InvalidArgument(format!(
            "cluster index {index} out of range (spectrum has {} clusters)",
            s.len()
        )));
    }
    let gap = s.gap_of(index);
    if gap <= 10.0 * s.cluster_tol {
        return Err(Error::ClusterNotIsolated(index));
    }
    Ok((gap / 2.0).min(1.0 + s.spectral_radius) / 2.0)
}

/// `(1/2πi) ∮ (z − a)⁻¹ dz` around one cluster.
pub fn riesz_projection(a: &AlgebraElement, cluster_index: usize) -> Result<AlgebraElement> {
    let s = spectrum_default(a)?;
    riesz_projection_with(a, &s, cluster_index, DEFAULT_NODES)
}

pub fn riesz_projection_with(a: &AlgebraElement, s: &Spectrum, index: usize, nodes: usize) -> Result<AlgebraElement> {
    let radius = riesz_radius(s, index)?;
    let gamma = Contour::circle(s.clusters[index].center, radius, nodes);
    gamma.validate(s)?;
    funcalc_unchecked(a, &ScalarFunction::constant(Complex64::new(1.0, 0.0)), &gamma)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsolatedPointReport {
    pub lambda: Complex64,
    /// `‖ae − λe‖`.
    pub eigen_defect: f64,
    /// `|‖e‖ − 1|`.
    pub norm_defect: f64,
    /// `‖e² − e‖`.
    pub idempotency_defect: f64,
    /// Normalized largest column of `e` (matrices only).
    pub eigenvector: Option<Vec<Complex64>>,
    /// `‖Av − λv‖₂` for that column.
    pub eigenvector_residual: Option<f64>,
    pub tol: f64,
    pub passes: bool,
}

/// Riesz projection at an isolated point and the properties a G1 element's
/// projection must have: `ae = λe`, `‖e‖ = 1`, `e² = e`.
pub fn verify_isolated_point(a: &AlgebraElement, cluster_index: usize, tol: f64) -> Result<IsolatedPointReport> {
    let s = spectrum_default(a)?;
    let e = riesz_projection_with(a, &s, cluster_index, DEFAULT_NODES)?;
    let lambda = s.clusters[cluster_index].center;
    let eigen_defect = a.mul(&e).sub(&e.scale(lambda)).norm()?;
    let norm_defect = (e.norm()? - 1.0).abs();
    let idempotency_defect = e.mul(&e).sub(&e).norm()?;
    let (eigenvector, eigenvector_residual) = match (a.as_matrix(), e.as_matrix()) {
        (Some(am), Some(em)) => {
            let n = em.order();
            let col = (0..n)
                .map(|j| em.column(j))
                .max_by(|x, y| vec_norm(x).total_cmp(&vec_norm(y)))
                .expect("order is at least one");
            let nrm = vec_norm(&col);
            if nrm > 0.0 {
                let v: Vec<Complex64> = col.iter().map(|z| z / nrm).collect();
                let av = am.mul_vec(&v);
                let res: Vec<Complex64> = av.iter().zip(&v).map(|(x, y)| x - lambda * y).collect();
                (Some(v), Some(vec_norm(&res)))
            } else {
                (None, None)
            }
        }
        _ => (None, None),
    };
    let passes = eigen_defect <= tol
        && norm_defect <= tol
        && idempotency_defect <= tol
        && eigenvector_residual.map_or(true, |r| r <= tol);
    Ok(IsolatedPointReport {
        lambda,
        eigen_defect,
        norm_defect,
        idempotency_defect,
        eigenvector,
        eigenvector_residual,
        tol,
        passes,
    })
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Defects {
    /// `max ‖e_j² − e_j‖`.
    pub idempotency: f64,
    /// `max |‖e_j‖ − 1|`.
    pub norm_one: f64,
    /// `max_{j≠k} ‖e_j e_k‖`.
    pub commutation: f64,
    /// `‖Σ e_j − 1‖`.
    pub resolution: f64,
    /// `‖a − Σ λ_j e_j‖`.
    pub reconstruction: f64,
    /// `‖Π (a − λ_j)‖`.
    pub annihilation: f64,
    /// `max ‖a e_j − λ_j e_j‖`.
    pub eigen: f64,
    /// `max ‖a e_j − e_j a‖`.
    pub commutes_with_a: f64,
}

impl Defects {
    pub fn max(&self) -> f64 {
        [
            self.idempotency,
            self.norm_one,
            self.commutation,
            self.resolution,
            self.reconstruction,
            self.annihilation,
            self.eigen,
            self.commutes_with_a,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `a = Σ λ_j e_j` with Riesz projections `e_j`, and how far the result is
/// from the exact identities a G1 element with finite spectrum satisfies.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    /// Ordered by `(re, im)`.
    pub lambdas: Vec<Complex64>,
    pub projections: Vec<AlgebraElement>,
    pub defects: Defects,
    /// `(1 + r(a)) / gap`.
    pub kappa_gap: f64,
    /// `tol · (1 + κ_gap)`.
    pub threshold: f64,
}

impl SpectralDecomposition {
    pub fn passes(&self) -> bool {
        self.defects.max() <= self.threshold
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }
}

pub fn spectral_decomposition(a: &AlgebraElement, tol: f64) -> Result<SpectralDecomposition> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let s = spectrum_default(a)?;
    let lambdas = s.centers();
    let projections = (0..s.len())
        .map(|j| riesz_projection_with(a, &s, j, DEFAULT_NODES))
        .collect::<Result<Vec<_>>>()?;

    let mut d = Defects {
        idempotency: 0.0,
        norm_one: 0.0,
        commutation: 0.0,
        resolution: 0.0,
        reconstruction: 0.0,
        annihilation: 0.0,
        eigen: 0.0,
        commutes_with_a: 0.0,
    };
    let mut sum = a.zero_like();
    let mut recon = a.zero_like();
    let mut product = a.identity_like();
    for (j, (e, &l)) in projections.iter().zip(&lambdas).enumerate() {
        d.idempotency = d.idempotency.max(e.mul(e).sub(e).norm()?);
        d.norm_one = d.norm_one.max((e.norm()? - 1.0).abs());
        for (k, f) in projections.iter().enumerate() {
            if k != j {
                d.commutation = d.commutation.max(e.mul(f).norm()?);
            }
        }
        let ae = a.mul(e);
        d.eigen = d.eigen.max(ae.sub(&e.scale(l)).norm()?);
        d.commutes_with_a = d.commutes_with_a.max(ae.sub(&e.mul(a)).norm()?);
        sum = sum.add(e);
        recon = recon.add(&e.scale(l));
        product = product.mul(&a.shift(-l));
    }
    d.resolution = sum.sub(&a.identity_like()).norm()?;
    d.reconstruction = a.sub(&recon).norm()?;
    d.annihilation = product.norm()?;

    let gap = s.min_gap().min(1.0 + s.spectral_radius);
    let kappa_gap = (1.0 + s.spectral_radius) / gap;
    Ok(SpectralDecomposition {
        lambdas,
        projections,
        defects: d,
        kappa_gap,
        threshold: tol * (1.0 + kappa_gap),
    })
}

/// `Σ (z − λ_j)⁻¹ e_j`.
pub fn decomposed_resolvent(d: &SpectralDecomposition, z: Complex64) -> Result<AlgebraElement> {
    let scale = d.lambdas.iter().map(|l| l.norm()).fold(1.0, f64::max);
    let mut acc = d.projections[0].zero_like();
    for (e, &l) in d.projections.iter().zip(&d.lambdas) {
        if (z - l).norm() <= RANK_TOL * scale {
            return Err(Error::SpectrumHit(z));
        }
        acc = acc.add(&e.scale(1.0 / (z - l)));
    }
    Ok(acc)
}

/// `Σ f(λ_j) e_j`.
pub fn decomposed_funcalc(d: &SpectralDecomposition, f: &ScalarFunction) -> Result<AlgebraElement> {
    let mut acc = d.projections[0].zero_like();
    for (e, &l) in d.projections.iter().zip(&d.lambdas) {
        let v = f.eval(l);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFinite);
        }
        acc = acc.add(&e.scale(v));
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagReport {
    pub lambdas: Vec<Complex64>,
    /// Numerical rank of each projection.
    pub ranks: Vec<usize>,
    pub rank_sum: usize,
    pub order: usize,
    /// `‖A·E_j − λ_j E_j‖₂` with `E_j` an orthonormal basis of `range(e_j)`.
    pub residuals: Vec<f64>,
    pub direct_sum: bool,
    pub eigenspaces: bool,
}

/// Whether the space splits into eigenspaces of `A`.
pub fn diagonalizability_report(a: &AlgebraElement, tol: f64) -> Result<DiagReport> {
    let am = a
        .as_matrix()
        .ok_or_else(|| Error::Unsupported("diagonalizability needs a matrix element".into()))?;
    let d = spectral_decomposition(a, tol)?;
    let n = am.order();
    let mut ranks = Vec::new();
    let mut residuals = Vec::new();
    for (e, &l) in d.projections.iter().zip(&d.lambdas) {
        let em = e.as_matrix().expect("projection of a matrix is a matrix");
        let svd = left_svd(em)?;
        let cutoff = tol * svd.values[0].max(1.0);
        let rank = svd.values.iter().filter(|&&v| v > cutoff).count();
        ranks.push(rank);
        // A·E − λE padded with zero columns has the same 2-norm
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for (col, u) in svd.vectors.iter().take(rank).enumerate() {
            let au = am.mul_vec(u);
            for i in 0..n {
                data[i * n + col] = au[i] - l * u[i];
            }
        }
        let r = if rank == 0 {
            0.0
        } else {
            sigma_max(&ComplexMatrix::from_vec(n, data)?)?
        };
        residuals.push(r);
    }
    let rank_sum = ranks.iter().sum();
    let eigenspaces = residuals.iter().all(|&r| r <= d.threshold);
    Ok(DiagReport {
        lambdas: d.lambdas,
        ranks,
        rank_sum,
        order: n,
        residuals,
        direct_sum: rank_sum == n,
        eigenspaces,
    })
}

/// Numerical rank of a matrix at a relative cutoff.
pub fn numerical_rank(m: &ComplexMatrix, rel_tol: f64) -> Result<usize> {
    let sv = singular_values(m)?;
    let cutoff = rel_tol * sv[0].max(1.0);
    Ok(sv.iter().filter(|&&v| v > cutoff).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{make_jordan, make_normal, random_unitary};
    use crate::linalg::OperatorNormKind;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn el(m: ComplexMatrix) -> AlgebraElement {
        AlgebraElement::matrix(m, OperatorNormKind::Induced2)
    }

    fn diag(v: &[f64]) -> AlgebraElement {
        el(ComplexMatrix::diagonal(&v.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>()).unwrap())
    }

    fn dist(x: &AlgebraElement, y: &AlgebraElement) -> f64 {
        x.sub(y).norm().unwrap()
    }

    #[test]
    fn funcalc_examples() {
        let a = diag(&[0.0, 1.0]);
        let g = Contour::circle(c(0.5, 0.0), 2.0, 64);
        let one = funcalc(&a, &ScalarFunction::constant(c(1.0, 0.0)), &g).unwrap();
        assert!(dist(&one, &a.identity_like()) < 1e-10);
        let id = funcalc(&a, &ScalarFunction::identity(), &g).unwrap();
        assert!(dist(&id, &a) < 1e-10);
        let ex = funcalc(&a, &ScalarFunction::exp(), &g).unwrap();
        assert!(dist(&ex, &diag(&[1.0, std::f64::consts::E])) < 1e-8);
    }

    #[test]
    fn contour_validation() {
        let a = diag(&[0.0, 1.0]);
        let s = spectrum_default(&a).unwrap();
        // circle passing too close to 1
        assert!(Contour::circle(c(0.0, 0.0), 0.9, 64).validate(&s).is_err());
        assert!(Contour::circle(c(0.0, 0.0), 0.5, 8).validate(&s).is_err());
        let two = Contour::new(vec![
            Circle::new(c(0.0, 0.0), 0.6, 32),
            Circle::new(c(1.0, 0.0), 0.6, 32),
        ]);
        assert!(two.validate(&s).is_err());
        assert!(Contour::around_spectrum(&s, 32).unwrap().validate(&s).is_ok());
    }

    #[test]
    fn riesz_examples() {
        let a = diag(&[0.0, 1.0]);
        let e = riesz_projection(&a, 1).unwrap();
        assert!(dist(&e, &diag(&[0.0, 1.0])) < 1e-12);
        let j = el(make_jordan(2, c(0.0, 0.0)).unwrap());
        let e = riesz_projection(&j, 0).unwrap();
        assert!(dist(&e, &j.identity_like()) < 1e-12);
        assert!(matches!(riesz_projection(&j, 1), Err(Error::InvalidArgument(_))));

        let u = random_unitary(3, 5).unwrap();
        let a = el(make_normal(3, &[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)], 5).unwrap());
        let e = riesz_projection(&a, 1).unwrap();
        let p = ComplexMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let expected = el(u.matmul(&p).matmul(&u.adjoint()));
        assert!(dist(&e, &expected) < 1e-9);
    }

    #[test]
    fn isolated_point_examples() {
        let a = diag(&[0.0, 1.0]);
        let rep = verify_isolated_point(&a, 1, 1e-10).unwrap();
        assert!(rep.passes, "{rep:?}");
        let v = rep.eigenvector.unwrap();
        assert!(v[0].norm() < 1e-12 && (v[1].norm() - 1.0).abs() < 1e-12);

        let q = el(ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 0.0]]).unwrap());
        let rep = verify_isolated_point(&q, 1, 1e-8).unwrap();
        assert!((rep.norm_defect - (2f64.sqrt() - 1.0)).abs() < 1e-10);
        assert!(!rep.passes);
    }

    #[test]
    fn decomposition_examples() {
        let a = diag(&[1.0, 2.0, 3.0]);
        let d = spectral_decomposition(&a, 1e-10).unwrap();
        assert!(d.passes(), "{:?}", d.defects);
        assert!(d.defects.max() <= 1e-10);

        let j = el(make_jordan(2, c(0.0, 0.0)).unwrap());
        let d = spectral_decomposition(&j, 1e-8).unwrap();
        assert_eq!(d.len(), 1);
        assert!((d.defects.reconstruction - 1.0).abs() < 1e-10);
        assert!(!d.passes());

        let s = el(ComplexMatrix::scalar(2, c(4.0, 0.0)));
        let d = spectral_decomposition(&s, 1e-8).unwrap();
        let r = decomposed_resolvent(&d, c(6.0, 0.0)).unwrap();
        assert!(dist(&r, &s.scalar_like(c(0.5, 0.0))) < 1e-12);
        assert!(decomposed_resolvent(&d, c(4.0, 0.0)).is_err());

        let a = diag(&[1.0, 2.0]);
        let d = spectral_decomposition(&a, 1e-8).unwrap();
        let sq = decomposed_funcalc(
            &d,
            &ScalarFunction::polynomial(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        )
        .unwrap();
        assert!(dist(&sq, &diag(&[1.0, 4.0])) < 1e-10);
        let p = decomposed_funcalc(&d, &ScalarFunction::from_roots(&d.lambdas)).unwrap();
        assert!(p.norm().unwrap() < 1e-10);
    }

    #[test]
    fn nilpotent_algebra_decomposition() {
        let x = AlgebraElement::nilpotent(c(2.0, 0.0), c(1.0, 0.0));
        let d = spectral_decomposition(&x, 1e-8).unwrap();
        assert!(dist(&d.projections[0], &x.identity_like()) < 1e-12);
        assert!((d.defects.reconstruction - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonalizability_examples() {
        let a = diag(&[1.0, 2.0, 2.0]);
        let rep = diagonalizability_report(&a, 1e-8).unwrap();
        assert_eq!(rep.ranks, vec![1, 2]);
        assert!(rep.direct_sum && rep.eigenspaces);

        let j = el(make_jordan(2, c(0.0, 0.0)).unwrap());
        let rep = diagonalizability_report(&j, 1e-8).unwrap();
        assert_eq!(rep.ranks, vec![2]);
        assert!((rep.residuals[0] - 1.0).abs() < 1e-10);
        assert!(!rep.eigenspaces);
    }

    #[test]
    fn polynomial_helpers() {
        let p = ScalarFunction::from_roots(&[c(1.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(
            p.coefficients.as_deref(),
            Some(&[c(2.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)][..])
        );
        let q = ScalarFunction::product(&p, &ScalarFunction::identity());
        assert_eq!(q.eval(c(3.0, 0.0)), c(6.0, 0.0));
        let r = ScalarFunction::product(&ScalarFunction::exp(), &p);
        assert!(r.coefficients.is_none());
        assert!((r.eval(c(0.0, 0.0)) - c(2.0, 0.0)).norm() < 1e-15);
    }
}
