//! Deviation from the G1 condition `‖(z − a)⁻¹‖ = 1/d(z, σ(a))`, sampled
//! certification, and the scalar and Hermitian-idempotent tests.
//!
//! Sampling can refute the condition with a witness whose margin survives
//! the estimated evaluation error, but it can never prove it. A passing
//! element is reported as consistent, not as certified.

use std::cmp::Ordering;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{sigma_max, OperatorNormKind};
use crate::numrange::is_hermitian;
use crate::spectral::{cmp_complex, distance_to_spectrum, resolvent_norm, spectrum_default, AlgebraElement, Spectrum};

pub const DEFAULT_TOL: f64 = 1e-6;
/// Circle radii `gap · 2⁻ᵏ` for `k = 1..=CIRCLE_LEVELS`.
pub const CIRCLE_LEVELS: i32 = 6;
pub const CIRCLE_NODES: usize = 128;
pub const COARSE_GRID: usize = 41;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "G1-consistent")]
    Consistent,
    #[serde(rename = "Not-G1")]
    NotG1,
    #[serde(rename = "Inconclusive")]
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Consistent => "G1-consistent",
            Self::NotG1 => "Not-G1",
            Self::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct G1Report {
    pub verdict: Verdict,
    pub max_deviation: f64,
    /// `[re, im]` of the sample with the largest deviation.
    pub argmax: [f64; 2],
    pub samples: usize,
    /// Deviation at the argmax minus the tolerance minus the estimated
    /// evaluation error there. Positive exactly for a Not-G1 verdict.
    pub witness_margin: f64,
}

impl G1Report {
    pub fn argmax_point(&self) -> Complex64 {
        Complex64::new(self.argmax[0], self.argmax[1])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `‖(z − a)⁻¹‖ · d(z, σ(a)) − 1`.
pub fn g1_deviation(a: &AlgebraElement, z: Complex64) -> Result<f64> {
    let s = spectrum_default(a)?;
    g1_deviation_with(a, &s, z)
}

/// [`g1_deviation`] against a precomputed spectrum.
pub fn g1_deviation_with(a: &AlgebraElement, s: &Spectrum, z: Complex64) -> Result<f64> {
    let d = distance_to_spectrum(z, s);
    if d == 0.0 {
        return Err(Error::SpectrumHit(z));
    }
    Ok(resolvent_norm(a, z)? * d - 1.0)
}

/// Points at which [`certify_g1`] evaluates the deviation.
pub fn sample_points(a: &AlgebraElement, s: &Spectrum) -> Result<Vec<Complex64>> {
    let norm = a.norm()?;
    let r = s.spectral_radius;
    let gap = s.min_gap().min(1.0 + r);
    let mut points = Vec::new();
    for c in s.centers() {
        for k in 1..=CIRCLE_LEVELS {
            let radius = gap * 2f64.powi(-k);
            for m in 0..CIRCLE_NODES {
                let theta = 2.0 * std::f64::consts::PI * m as f64 / CIRCLE_NODES as f64;
                points.push(c + Complex64::from_polar(radius, theta));
            }
        }
    }
    let delta = 1e-4 * (1.0 + norm);
    let pad = r.max(1.0);
    let c = s.centers();
    let lo_re = c.iter().map(|z| z.re).fold(f64::INFINITY, f64::min) - pad;
    let hi_re = c.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max) + pad;
    let lo_im = c.iter().map(|z| z.im).fold(f64::INFINITY, f64::min) - pad;
    let hi_im = c.iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max) + pad;
    let steps = (COARSE_GRID - 1) as f64;
    for j in 0..COARSE_GRID {
        for i in 0..COARSE_GRID {
            let z = Complex64::new(
                lo_re + (hi_re - lo_re) * i as f64 / steps,
                lo_im + (hi_im - lo_im) * j as f64 / steps,
            );
            if distance_to_spectrum(z, s) > delta {
                points.push(z);
            }
        }
    }
    Ok(points)
}

/// Forward-error estimate for the computed cluster centers. A cluster of
/// multiplicity `m` can move by `η^{1/m}·‖A‖` under a relative backward
/// perturbation `η`, so defective clusters get the larger allowance.
fn eigenvalue_error(a: &AlgebraElement, s: &Spectrum) -> Result<(f64, f64)> {
    match a {
        AlgebraElement::Matrix { matrix, .. } => {
            let scale = sigma_max(matrix)?;
            let eta = s.residual_bound.max(f64::EPSILON);
            let worst = s
                .clusters
                .iter()
                .map(|c| eta.powf(1.0 / c.multiplicity as f64))
                .fold(0.0, f64::max);
            Ok((worst * scale, scale))
        }
        AlgebraElement::Nilpotent(x) => Ok((0.0, x.norm())),
    }
}

/// Samples the deviation around and between the spectrum clusters.
pub fn certify_g1(a: &AlgebraElement, tol: f64) -> Result<G1Report> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let s = spectrum_default(a)?;
    let points = sample_points(a, &s)?;
    let (eig_err, scale) = eigenvalue_error(a, &s)?;
    let n = a.order() as f64;

    let evaluated = points
        .par_iter()
        .map(|&z| match g1_deviation_with(a, &s, z) {
            Ok(g) => Ok(Some((z, g))),
            Err(Error::SpectrumHit(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;

    let mut best: Option<(Complex64, f64)> = None;
    let mut samples = 0;
    for (z, g) in evaluated.into_iter().flatten() {
        samples += 1;
        let better = match best {
            None => true,
            Some((bz, bg)) => match g.total_cmp(&bg) {
                Ordering::Greater => true,
                Ordering::Equal => cmp_complex(&z, &bz) == Ordering::Less,
                Ordering::Less => false,
            },
        };
        if better {
            best = Some((z, g));
        }
    }
    let (z, g) = best.ok_or_else(|| Error::InvalidArgument("no sample point avoided the spectrum".into()))?;

    let d = distance_to_spectrum(z, &s);
    let conditioning = (1.0 + g) * (scale + z.norm()) / d;
    let error = (1.0 + g) * (eig_err / d + 1e-10 + n * f64::EPSILON * (1.0 + conditioning));
    let witness_margin = g - tol - error;
    let verdict = if witness_margin > 0.0 {
        Verdict::NotG1
    } else if g <= tol {
        Verdict::Consistent
    } else {
        Verdict::Inconclusive
    };
    Ok(G1Report {
        verdict,
        max_deviation: g,
        argmax: [z.re, z.im],
        samples,
        witness_margin,
    })
}

/// Outcome of [`scalar_test`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarTestReport {
    /// The single spectral point, when the spectrum is one cluster.
    pub mu: Option<Complex64>,
    /// `‖a − μ‖`, when `mu` is present.
    pub distance_to_scalar: Option<f64>,
    /// Not-G1 when `σ(a) = {μ}` but `a ≠ μ`; consistent when `a = μ`;
    /// inconclusive when the spectrum has several points.
    pub verdict: Verdict,
    /// Affine images `αa + β` re-certified, only when `a` itself certifies
    /// as consistent.
    pub affine_checks: Vec<AffineCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineCheck {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub verdict: Verdict,
    pub max_deviation: f64,
}

pub const AFFINE_MAPS: [(Complex64, Complex64); 3] = [
    (Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)),
    (Complex64::new(-0.5, 1.0), Complex64::new(3.0, 0.0)),
    (Complex64::new(0.0, 1.0), Complex64::new(-1.0, -2.0)),
];

/// A G1 element with a one-point spectrum `{μ}` must equal `μ`.
pub fn scalar_test(a: &AlgebraElement, tol: f64) -> Result<ScalarTestReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let s = spectrum_default(a)?;
    let norm = a.norm()?;
    let (mu, distance_to_scalar, verdict) = if s.len() == 1 {
        let mu = s.clusters[0].center;
        let dist = a.shift(-mu).norm()?;
        let verdict = if dist > tol * (1.0 + norm) {
            Verdict::NotG1
        } else {
            Verdict::Consistent
        };
        (Some(mu), Some(dist), verdict)
    } else {
        (None, None, Verdict::Inconclusive)
    };

    let mut affine_checks = Vec::new();
    if verdict != Verdict::NotG1 && certify_g1(a, tol)?.verdict == Verdict::Consistent {
        for (alpha, beta) in AFFINE_MAPS {
            let rep = certify_g1(&a.affine(alpha, beta), tol)?;
            affine_checks.push(AffineCheck {
                alpha,
                beta,
                verdict: rep.verdict,
                max_deviation: rep.max_deviation,
            });
        }
    }
    Ok(ScalarTestReport {
        mu,
        distance_to_scalar,
        verdict,
        affine_checks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HermIdemConclusion {
    /// Hermitian idempotent, and sampling found no witness.
    HermitianIdempotentG1,
    /// Hermitian idempotent, yet sampling did not come out consistent.
    /// This would contradict the theory and points at numerical trouble.
    HermitianIdempotentNotConsistent,
    /// `σ(a) ⊆ {0, 1}` and a witness was found, so `a` is not a
    /// Hermitian idempotent.
    NotHermitianIdempotent,
    /// None of the above applies.
    Inconclusive,
}

/// Outcome of [`hermitian_idempotent_test`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermIdemReport {
    /// `‖a² − a‖`.
    pub idempotency_defect: f64,
    pub idempotent: bool,
    pub hermitian: bool,
    pub spectrum_in_unit_pair: bool,
    pub norm: f64,
    /// `‖a‖ − 1`; a nonzero idempotent has norm at least one.
    pub norm_excess: f64,
    pub certification: Option<G1Report>,
    pub conclusion: HermIdemConclusion,
}

/// Hermitian idempotents are G1; conversely an element with `σ(a) ⊆ {0,1}`
/// that fails G1 is not a Hermitian idempotent.
pub fn hermitian_idempotent_test(a: &AlgebraElement, tol: f64) -> Result<HermIdemReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let norm = a.norm()?;
    let idempotency_defect = a.mul(a).sub(a).norm()?;
    let idempotent = idempotency_defect <= tol * (1.0 + norm);
    let hermitian = is_hermitian(a, tol)?;
    let s = spectrum_default(a)?;
    let one = Complex64::new(1.0, 0.0);
    let spectrum_in_unit_pair = s.centers().iter().all(|&c| c.norm() <= tol || (c - one).norm() <= tol);

    let certification = if (idempotent && hermitian) || spectrum_in_unit_pair {
        Some(certify_g1(a, tol)?)
    } else {
        None
    };
    let conclusion = match (&certification, idempotent && hermitian) {
        (Some(rep), true) if rep.verdict == Verdict::Consistent => HermIdemConclusion::HermitianIdempotentG1,
        (Some(_), true) => HermIdemConclusion::HermitianIdempotentNotConsistent,
        (Some(rep), false) if rep.verdict == Verdict::NotG1 => HermIdemConclusion::NotHermitianIdempotent,
        _ => HermIdemConclusion::Inconclusive,
    };
    Ok(HermIdemReport {
        idempotency_defect,
        idempotent,
        hermitian,
        spectrum_in_unit_pair,
        norm,
        norm_excess: norm - 1.0,
        certification,
        conclusion,
    })
}

/// True for the matrix 2-norm, where finite-dimensional G1 means normal.
pub fn is_hilbert(a: &AlgebraElement) -> bool {
    a.norm_kind() == Some(OperatorNormKind::Induced2)
}
