//! Spectrum, spectral radius, distance to the spectrum and resolvent norms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebras::{nilpotent_mul, nilpotent_resolvent_norm, NilpotentAlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, OperatorNormKind, RANK_TOL};

/// An element of a unital Banach algebra: either a matrix under a chosen
/// induced norm, or an element of the two-dimensional nilpotent algebra.
///
/// Binary operations between elements of different algebras (or matrices
/// of different order) are programming errors and panic.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraElement {
    Matrix {
        matrix: ComplexMatrix,
        norm: OperatorNormKind,
    },
    Nilpotent(NilpotentAlgebraElement),
}

impl AlgebraElement {
    pub fn matrix(matrix: ComplexMatrix, norm: OperatorNormKind) -> Self {
        Self::Matrix { matrix, norm }
    }

    pub fn nilpotent(alpha: Complex64, beta: Complex64) -> Self {
        Self::Nilpotent(NilpotentAlgebraElement::new(alpha, beta))
    }

    pub fn as_matrix(&self) -> Option<&ComplexMatrix> {
        match self {
            Self::Matrix { matrix, .. } => Some(matrix),
            Self::Nilpotent(_) => None,
        }
    }

    /// `None` for the nilpotent algebra, whose norm is `|α| + |β|`.
    pub fn norm_kind(&self) -> Option<OperatorNormKind> {
        match self {
            Self::Matrix { norm, .. } => Some(*norm),
            Self::Nilpotent(_) => None,
        }
    }

    /// Human-readable norm label used in serialized outputs.
    pub fn norm_label(&self) -> &'static str {
        self.norm_kind().map_or("nilpotent-algebra", OperatorNormKind::label)
    }

    /// Order of the matrix, or 2 for the nilpotent algebra.
    pub fn order(&self) -> usize {
        match self {
            Self::Matrix { matrix, .. } => matrix.order(),
            Self::Nilpotent(_) => 2,
        }
    }

    pub fn norm(&self) -> Result<f64> {
        match self {
            Self::Matrix { matrix, norm } => linalg::operator_norm(matrix, *norm),
            Self::Nilpotent(x) => Ok(x.norm()),
        }
    }

    /// `c · 1` in the same algebra.
    pub fn scalar_like(&self, c: Complex64) -> Self {
        match self {
            Self::Matrix { matrix, norm } => Self::matrix(ComplexMatrix::scalar(matrix.order(), c), *norm),
            Self::Nilpotent(_) => Self::Nilpotent(NilpotentAlgebraElement::scalar(c)),
        }
    }

    pub fn identity_like(&self) -> Self {
        self.scalar_like(Complex64::new(1.0, 0.0))
    }

    pub fn zero_like(&self) -> Self {
        self.scalar_like(Complex64::new(0.0, 0.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Matrix { matrix: a, norm }, Self::Matrix { matrix: b, .. }) => Self::matrix(a.matmul(b), *norm),
            (Self::Nilpotent(x), Self::Nilpotent(y)) => Self::Nilpotent(nilpotent_mul(x, y)),
            _ => panic!("product of elements from different algebras"),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Matrix { matrix: a, norm }, Self::Matrix { matrix: b, .. }) => Self::matrix(a + b, *norm),
            (Self::Nilpotent(x), Self::Nilpotent(y)) => Self::Nilpotent(x.add(y)),
            _ => panic!("sum of elements from different algebras"),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Matrix { matrix: a, norm }, Self::Matrix { matrix: b, .. }) => Self::matrix(a - b, *norm),
            (Self::Nilpotent(x), Self::Nilpotent(y)) => Self::Nilpotent(x.sub(y)),
            _ => panic!("difference of elements from different algebras"),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        match self {
            Self::Matrix { matrix, norm } => Self::matrix(matrix.scale(c), *norm),
            Self::Nilpotent(x) => Self::Nilpotent(x.scale(c)),
        }
    }

    /// `self + c · 1`.
    pub fn shift(&self, c: Complex64) -> Self {
        match self {
            Self::Matrix { matrix, norm } => Self::matrix(matrix.shift(c), *norm),
            Self::Nilpotent(x) => Self::Nilpotent(x.shift(c)),
        }
    }

    /// `α · self + β`.
    pub fn affine(&self, alpha: Complex64, beta: Complex64) -> Self {
        self.scale(alpha).shift(beta)
    }

    /// `p(self)` for `p(z) = Σ coeffs[k] zᵏ`, by Horner's rule.
    pub fn polynomial(&self, coeffs: &[Complex64]) -> Self {
        let mut acc = self.zero_like();
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).shift(*c);
        }
        acc
    }

    /// Raw eigenvalues with multiplicity and their residual bound.
    pub fn eigenvalues(&self) -> Result<linalg::EigenResult> {
        match self {
            Self::Matrix { matrix, .. } => linalg::eigenvalues(matrix),
            Self::Nilpotent(x) => Ok(linalg::EigenResult {
                eigenvalues: vec![x.alpha, x.alpha],
                residual_bound: 0.0,
            }),
        }
    }
}

/// One point of the spectrum with its algebraic multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

/// Eigenvalues merged into clusters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Ordered by `(re, im)` of the center.
    pub clusters: Vec<Cluster>,
    pub cluster_tol: f64,
    pub spectral_radius: f64,
    /// Eigen-residual bound relative to `‖A‖₂` (zero for exact spectra).
    pub residual_bound: f64,
}

impl Spectrum {
    pub fn centers(&self) -> Vec<Complex64> {
        self.clusters.iter().map(|c| c.center).collect()
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Smallest distance between two distinct cluster centers; `∞` for a
    /// single cluster.
    pub fn min_gap(&self) -> f64 {
        let c = self.centers();
        let mut gap = f64::INFINITY;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                gap = gap.min((c[i] - c[j]).norm());
            }
        }
        gap
    }

    /// Distance from cluster `index` to the nearest other cluster.
    pub fn gap_of(&self, index: usize) -> f64 {
        let c = self.clusters[index].center;
        self.clusters
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != index)
            .map(|(_, o)| (o.center - c).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn cmp_complex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Default clustering radius `1e-6 · (1 + ‖a‖)`.
pub fn default_cluster_tol(a: &AlgebraElement) -> Result<f64> {
    Ok(1e-6 * (1.0 + a.norm()?))
}

/// Spectrum with single-linkage clustering at `cluster_tol`.
pub fn spectrum(a: &AlgebraElement, cluster_tol: f64) -> Result<Spectrum> {
    if !(cluster_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "cluster tolerance must be positive, got {cluster_tol}"
        )));
    }
    let eig = a.eigenvalues()?;
    let mut clusters = cluster_points(&eig.eigenvalues, cluster_tol);
    clusters.sort_by(|x, y| cmp_complex(&x.center, &y.center));
    let spectral_radius = clusters.iter().map(|c| c.center.norm()).fold(0.0, f64::max);
    Ok(Spectrum {
        clusters,
        cluster_tol,
        spectral_radius,
        residual_bound: eig.residual_bound,
    })
}

/// Spectrum with the default cluster tolerance.
pub fn spectrum_default(a: &AlgebraElement) -> Result<Spectrum> {
    spectrum(a, default_cluster_tol(a)?)
}

fn cluster_points(points: &[Complex64], tol: f64) -> Vec<Cluster> {
    // union-find over the "within tol" graph
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_slot[r] == usize::MAX {
            root_slot[r] = groups.len();
            groups.push((Complex64::new(0.0, 0.0), 0));
        }
        let g = &mut groups[root_slot[r]];
        g.0 += points[i];
        g.1 += 1;
    }
    let mut clusters: Vec<Cluster> = groups
        .into_iter()
        .map(|(sum, m)| Cluster {
            center: sum / m as f64,
            multiplicity: m,
        })
        .collect();

    // merge any centers that still ended up within tol of each other
    loop {
        let mut merged = false;
        'outer: for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                if (clusters[i].center - clusters[j].center).norm() <= tol {
                    let (a, b) = (clusters[i], clusters[j]);
                    let m = a.multiplicity + b.multiplicity;
                    clusters[i] = Cluster {
                        center: (a.center * a.multiplicity as f64 + b.center * b.multiplicity as f64) / m as f64,
                        multiplicity: m,
                    };
                    clusters.remove(j);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            return clusters;
        }
    }
}

/// `min_{1≤k≤n_max} ‖aᵏ‖^{1/k}`, an upper bound on `r(a)` at every truncation.
pub fn spectral_radius_limit(a: &AlgebraElement, n_max: usize) -> Result<f64> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let mut powers: Vec<AlgebraElement> = Vec::with_capacity(n_max);
    powers.push(a.clone());
    let mut best = f64::INFINITY;
    for k in 1..=n_max {
        if k > 1 {
            let next = if k.is_power_of_two() {
                let half = &powers[k / 2 - 1];
                half.mul(half)
            } else {
                powers[k - 2].mul(a)
            };
            powers.push(next);
        }
        let nrm = powers[k - 1].norm()?;
        if !nrm.is_finite() {
            return Err(Error::Overflow(k));
        }
        if nrm == 0.0 {
            return Ok(0.0);
        }
        best = best.min(nrm.powf(1.0 / k as f64));
    }
    Ok(best)
}

/// `d(z, σ) = min |z − center|`.
pub fn distance_to_spectrum(z: Complex64, s: &Spectrum) -> f64 {
    s.clusters
        .iter()
        .map(|c| (z - c.center).norm())
        .fold(f64::INFINITY, f64::min)
}

/// `(z − a)⁻¹`.
pub fn resolvent(a: &AlgebraElement, z: Complex64) -> Result<AlgebraElement> {
    match a {
        AlgebraElement::Matrix { matrix, norm } => {
            let m = matrix.scale(Complex64::new(-1.0, 0.0)).shift(z);
            match linalg::inverse(&m) {
                Ok(inv) => Ok(AlgebraElement::matrix(inv, *norm)),
                Err(Error::SingularMatrix { .. }) => Err(Error::SpectrumHit(z)),
                Err(e) => Err(e),
            }
        }
        AlgebraElement::Nilpotent(x) => Ok(AlgebraElement::Nilpotent(x.resolvent(z)?)),
    }
}

/// `‖(z − a)⁻¹‖` in the element's norm.
///
/// The 2-norm is evaluated as `1/σ_min(z − A)` without forming the inverse;
/// `σ_min ≤ 1e-14 · max|z − A|` counts as a spectrum hit.
pub fn resolvent_norm(a: &AlgebraElement, z: Complex64) -> Result<f64> {
    match a {
        AlgebraElement::Matrix {
            matrix,
            norm: OperatorNormKind::Induced2,
        } => {
            let m = matrix.scale(Complex64::new(-1.0, 0.0)).shift(z);
            let smin = linalg::sigma_min(&m)?;
            if smin <= RANK_TOL * m.max_abs() || smin == 0.0 {
                return Err(Error::SpectrumHit(z));
            }
            Ok(1.0 / smin)
        }
        AlgebraElement::Matrix { .. } => resolvent(a, z)?.norm(),
        AlgebraElement::Nilpotent(x) => nilpotent_resolvent_norm(x, z),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const PHI: f64 = 1.618_033_988_749_895;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mat(rows: &[&[f64]], norm: OperatorNormKind) -> AlgebraElement {
        AlgebraElement::matrix(ComplexMatrix::from_real_rows(rows).unwrap(), norm)
    }

    #[test]
    fn spectrum_examples() {
        let a = mat(
            &[&[0.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]],
            OperatorNormKind::Induced2,
        );
        let s = spectrum(&a, 1e-8).unwrap();
        assert_eq!(
            s.clusters,
            vec![
                Cluster {
                    center: c(0.0, 0.0),
                    multiplicity: 1
                },
                Cluster {
                    center: c(1.0, 0.0),
                    multiplicity: 2
                }
            ]
        );
        assert_eq!(s.spectral_radius, 1.0);

        let x = AlgebraElement::nilpotent(c(2.0, 1.0), c(5.0, 0.0));
        let s = spectrum(&x, 1e-8).unwrap();
        assert_eq!(
            s.clusters,
            vec![Cluster {
                center: c(2.0, 1.0),
                multiplicity: 2
            }]
        );
        assert_relative_eq!(s.spectral_radius, 5f64.sqrt());

        let r = mat(&[&[0.0, -1.0], &[1.0, 0.0]], OperatorNormKind::Induced2);
        let s = spectrum(&r, 1e-8).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s.clusters[0].center - c(0.0, -1.0)).norm() < 1e-14);
        assert!((s.clusters[1].center - c(0.0, 1.0)).norm() < 1e-14);
        assert_relative_eq!(s.spectral_radius, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let a = mat(&[&[1.0]], OperatorNormKind::Induced1);
        assert!(spectrum(&a, 0.0).is_err());
        assert!(spectral_radius_limit(&a, 0).is_err());
    }

    #[test]
    fn clustering_merges_chains() {
        let pts = [c(0.0, 0.0), c(0.6, 0.0), c(1.2, 0.0), c(5.0, 0.0)];
        let cl = cluster_points(&pts, 0.7);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].multiplicity, 3);
        assert!((cl[0].center - c(0.6, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn radius_limit_examples() {
        for k in OperatorNormKind::ALL {
            let j = mat(&[&[0.0, 1.0], &[0.0, 0.0]], k);
            assert_eq!(spectral_radius_limit(&j, 2).unwrap(), 0.0);
        }
        let d = mat(&[&[2.0, 0.0], &[0.0, 3.0]], OperatorNormKind::InducedInf);
        assert_relative_eq!(spectral_radius_limit(&d, 8).unwrap(), 3.0, max_relative = 1e-14);

        let u = mat(&[&[1.0, 1.0], &[0.0, 1.0]], OperatorNormKind::Induced2);
        let mut prev = f64::INFINITY;
        for n in [4, 16, 64] {
            let v = spectral_radius_limit(&u, n).unwrap();
            assert!((1.0..=1.2).contains(&v) || n < 64, "n={n} v={v}");
            assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn radius_limit_overflow() {
        let big = AlgebraElement::matrix(ComplexMatrix::scalar(2, c(1e200, 0.0)), OperatorNormKind::Induced1);
        assert_eq!(spectral_radius_limit(&big, 4), Err(Error::Overflow(2)));
    }

    #[test]
    fn distances() {
        let s = Spectrum {
            clusters: vec![
                Cluster {
                    center: c(0.0, 0.0),
                    multiplicity: 1,
                },
                Cluster {
                    center: c(1.0, 0.0),
                    multiplicity: 1,
                },
            ],
            cluster_tol: 1e-8,
            spectral_radius: 1.0,
            residual_bound: 0.0,
        };
        assert_eq!(distance_to_spectrum(c(2.0, 0.0), &s), 1.0);
        assert_eq!(distance_to_spectrum(c(0.5, 0.0), &s), 0.5);
        let s2 = Spectrum {
            clusters: vec![
                Cluster {
                    center: c(0.0, -1.0),
                    multiplicity: 1,
                },
                Cluster {
                    center: c(0.0, 1.0),
                    multiplicity: 1,
                },
            ],
            cluster_tol: 1e-8,
            spectral_radius: 1.0,
            residual_bound: 0.0,
        };
        assert_eq!(distance_to_spectrum(c(1.0, 1.0), &s2), 1.0);
    }

    #[test]
    fn resolvent_examples() {
        let d = mat(&[&[0.0, 0.0], &[0.0, 1.0]], OperatorNormKind::Induced2);
        let r = resolvent(&d, c(2.0, 0.0)).unwrap();
        let want = ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, 1.0]]).unwrap();
        assert!((r.as_matrix().unwrap() - &want).max_abs() < 1e-15);

        let n = AlgebraElement::nilpotent(c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(
            resolvent(&n, c(1.0, 0.0)).unwrap(),
            AlgebraElement::nilpotent(c(1.0, 0.0), c(1.0, 0.0))
        );

        let j = mat(&[&[0.0, 1.0], &[0.0, 0.0]], OperatorNormKind::Induced2);
        let r = resolvent(&j, c(1.0, 0.0)).unwrap();
        let want = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!((r.as_matrix().unwrap() - &want).max_abs() < 1e-15);

        assert_eq!(resolvent(&d, c(1.0, 0.0)), Err(Error::SpectrumHit(c(1.0, 0.0))));
    }

    #[test]
    fn resolvent_norm_examples() {
        let d = mat(&[&[0.0, 0.0], &[0.0, 1.0]], OperatorNormKind::Induced2);
        assert_relative_eq!(resolvent_norm(&d, c(2.0, 0.0)).unwrap(), 1.0, max_relative = 1e-14);
        let n = AlgebraElement::nilpotent(c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(resolvent_norm(&n, c(1.0, 0.0)).unwrap(), 2.0);
        let j = mat(&[&[0.0, 1.0], &[0.0, 0.0]], OperatorNormKind::Induced2);
        assert_relative_eq!(resolvent_norm(&j, c(1.0, 0.0)).unwrap(), PHI, max_relative = 1e-14);
        // induced 1 and inf of [[1,1],[0,1]]
        for k in [OperatorNormKind::Induced1, OperatorNormKind::InducedInf] {
            let j = mat(&[&[0.0, 1.0], &[0.0, 0.0]], k);
            assert_relative_eq!(resolvent_norm(&j, c(1.0, 0.0)).unwrap(), 2.0, max_relative = 1e-14);
        }
        assert!(matches!(resolvent_norm(&d, c(0.0, 0.0)), Err(Error::SpectrumHit(_))));
    }

    #[test]
    fn polynomial_horner() {
        let d = mat(&[&[1.0, 0.0], &[0.0, 2.0]], OperatorNormKind::Induced2);
        // (z-1)(z-2) = z² - 3z + 2
        let p = d.polynomial(&[c(2.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)]);
        assert!(p.norm().unwrap() < 1e-15);
        let n = AlgebraElement::nilpotent(c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(
            n.polynomial(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).norm().unwrap(),
            0.0
        );
    }
}
