//! Test-matrix generators and the two-dimensional nilpotent algebra.
//!
//! The nilpotent algebra consists of elements `α·1 + β·n` with `n² = 0`,
//! normed by `|α| + |β|`. That norm is not an induced matrix norm, so the
//! element is kept as a pair with exact closed forms instead of as a matrix.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, OperatorNormKind};
use crate::spectral::AlgebraElement;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `α·1 + β·n` in the algebra of 2×2 upper-triangular Toeplitz matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NilpotentAlgebraElement {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl NilpotentAlgebraElement {
    pub fn new(alpha: Complex64, beta: Complex64) -> Self {
        Self { alpha, beta }
    }

    pub fn scalar(alpha: Complex64) -> Self {
        Self { alpha, beta: ZERO }
    }

    /// `|α| + |β|`.
    pub fn norm(&self) -> f64 {
        self.alpha.norm() + self.beta.norm()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.alpha + other.alpha, self.beta + other.beta)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.alpha - other.alpha, self.beta - other.beta)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.alpha * c, self.beta * c)
    }

    pub fn shift(&self, c: Complex64) -> Self {
        Self::new(self.alpha + c, self.beta)
    }

    /// The matrix `[[α, β], [0, α]]`.
    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![self.alpha, self.beta], vec![ZERO, self.alpha]])
            .expect("2x2 with finite entries")
    }

    /// `(z − x)⁻¹ = (z−α)⁻¹ + β(z−α)⁻² n`.
    pub fn resolvent(&self, z: Complex64) -> Result<Self> {
        let d = z - self.alpha;
        if d == ZERO {
            return Err(Error::SpectrumHit(z));
        }
        let inv = 1.0 / d;
        Ok(Self::new(inv, self.beta * inv * inv))
    }
}

/// Product in the algebra; forced by `n² = 0`.
pub fn nilpotent_mul(x: &NilpotentAlgebraElement, y: &NilpotentAlgebraElement) -> NilpotentAlgebraElement {
    NilpotentAlgebraElement::new(x.alpha * y.alpha, x.alpha * y.beta + y.alpha * x.beta)
}

/// `‖(z − x)⁻¹‖ = 1/|z−α| + |β|/|z−α|²`, exactly.
pub fn nilpotent_resolvent_norm(x: &NilpotentAlgebraElement, z: Complex64) -> Result<f64> {
    let d = (z - x.alpha).norm();
    if d == 0.0 {
        return Err(Error::SpectrumHit(z));
    }
    Ok(1.0 / d + x.beta.norm() / (d * d))
}

fn gaussian_matrix(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..n * n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        })
        .collect()
}

/// Haar-like random unitary: Gram–Schmidt (applied twice) on the columns
/// of a seeded complex Gaussian matrix.
pub fn random_unitary(n: usize, seed: u64) -> Result<ComplexMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gaussian_matrix(n, &mut rng);
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| g[i * n + j]).collect()).collect();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let dot: Complex64 = cols[k].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                let (done, rest) = cols.split_at_mut(j);
                for (x, q) in rest[0].iter_mut().zip(&done[k]) {
                    *x -= dot * q;
                }
            }
        }
        let nrm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= nrm;
        }
    }
    let mut data = vec![ZERO; n * n];
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            data[i * n + j] = *v;
        }
    }
    ComplexMatrix::from_vec(n, data)
}

/// Seeded complex Gaussian matrix with entry variance `1/n`.
pub fn random_matrix(n: usize, seed: u64) -> Result<ComplexMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 1.0 / (n as f64).sqrt();
    let data = gaussian_matrix(n, &mut rng).into_iter().map(|z| z * scale).collect();
    ComplexMatrix::from_vec(n, data)
}

/// `U · diag(eigenvalues) · Uᴴ` with a seeded random unitary `U`.
pub fn make_normal(n: usize, eigenvalues: &[Complex64], seed: u64) -> Result<ComplexMatrix> {
    if eigenvalues.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: eigenvalues.len(),
        });
    }
    let u = random_unitary(n, seed)?;
    let d = ComplexMatrix::diagonal(eigenvalues)?;
    Ok(u.matmul(&d).matmul(&u.adjoint()))
}

/// Upper Jordan block `J_n(λ)`.
pub fn make_jordan(n: usize, eigenvalue: Complex64) -> Result<ComplexMatrix> {
    let mut m = ComplexMatrix::diagonal(&vec![eigenvalue; n])?;
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, ONE);
    }
    Ok(m)
}

/// `n×n` truncation of the right shift: ones on the first subdiagonal.
///
/// The truncation is nilpotent, so its spectrum is `{0}`, unlike the
/// closed unit disk of the shift on `ℓ²(ℕ)`; its resolvent norm inside the
/// unit disk grows without bound as `n` increases.
pub fn make_shift_truncation(n: usize) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "shift truncation needs n >= 2, got {n}"
        )));
    }
    let mut m = ComplexMatrix::zeros(n);
    for i in 1..n {
        m.set(i, i - 1, ONE);
    }
    Ok(m)
}

/// Rank-one idempotent with `‖P‖₂ = √(1 + t²)`.
///
/// The canonical form is `[[1, t], [0, 0]]` padded with zeros; seed `0`
/// returns it unchanged, any other seed conjugates it by a seeded random
/// unitary (which preserves both idempotency and the 2-norm).
pub fn make_oblique_projection(n: usize, angle_param: f64, seed: u64) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "oblique projection needs n >= 2, got {n}"
        )));
    }
    if !(angle_param > 0.0 && angle_param.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "angle parameter must be positive, got {angle_param}"
        )));
    }
    let mut p = ComplexMatrix::zeros(n);
    p.set(0, 0, ONE);
    p.set(0, 1, Complex64::new(angle_param, 0.0));
    if seed == 0 {
        return Ok(p);
    }
    let u = random_unitary(n, seed)?;
    Ok(u.matmul(&p).matmul(&u.adjoint()))
}

/// Named generator recipes, addressable from the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "recipe", rename_all = "kebab-case")]
pub enum Recipe {
    Normal { eigenvalues: Vec<Complex64>, seed: u64 },
    Diagonal { values: Vec<Complex64> },
    Jordan { order: usize, eigenvalue: Complex64 },
    Shift { order: usize },
    Oblique { order: usize, angle_param: f64, seed: u64 },
    NilpotentAlgebra { alpha: Complex64, beta: Complex64 },
}

impl Recipe {
    pub const NAMES: [&'static str; 6] = ["normal", "diagonal", "jordan", "shift", "oblique", "nilpotent-algebra"];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Normal { .. } => "normal",
            Self::Diagonal { .. } => "diagonal",
            Self::Jordan { .. } => "jordan",
            Self::Shift { .. } => "shift",
            Self::Oblique { .. } => "oblique",
            Self::NilpotentAlgebra { .. } => "nilpotent-algebra",
        }
    }

    /// Builds the element. `norm` is ignored by the nilpotent algebra, which
    /// carries its own norm.
    pub fn build(&self, norm: OperatorNormKind) -> Result<AlgebraElement> {
        let m = match self {
            Self::Normal { eigenvalues, seed } => make_normal(eigenvalues.len(), eigenvalues, *seed)?,
            Self::Diagonal { values } => ComplexMatrix::diagonal(values)?,
            Self::Jordan { order, eigenvalue } => make_jordan(*order, *eigenvalue)?,
            Self::Shift { order } => make_shift_truncation(*order)?,
            Self::Oblique {
                order,
                angle_param,
                seed,
            } => make_oblique_projection(*order, *angle_param, *seed)?,
            Self::NilpotentAlgebra { alpha, beta } => {
                return Ok(AlgebraElement::Nilpotent(NilpotentAlgebraElement::new(*alpha, *beta)))
            }
        };
        Ok(AlgebraElement::matrix(m, norm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigenvalues, operator_norm};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn multiplication_table() {
        let one = NilpotentAlgebraElement::scalar(ONE);
        let x = NilpotentAlgebraElement::new(c(2.0, -1.0), c(0.5, 3.0));
        assert_eq!(nilpotent_mul(&one, &x), x);
        let n = NilpotentAlgebraElement::new(ZERO, ONE);
        assert_eq!(nilpotent_mul(&n, &n), NilpotentAlgebraElement::new(ZERO, ZERO));
        let p = nilpotent_mul(
            &NilpotentAlgebraElement::new(c(2.0, 0.0), c(3.0, 0.0)),
            &NilpotentAlgebraElement::new(c(4.0, 0.0), c(5.0, 0.0)),
        );
        assert_eq!(p, NilpotentAlgebraElement::new(c(8.0, 0.0), c(22.0, 0.0)));
    }

    #[test]
    fn product_matches_matrix_representation() {
        let x = NilpotentAlgebraElement::new(c(1.5, -0.5), c(-2.0, 1.0));
        let y = NilpotentAlgebraElement::new(c(0.25, 2.0), c(3.0, 0.0));
        let lhs = nilpotent_mul(&x, &y).to_matrix();
        let rhs = x.to_matrix().matmul(&y.to_matrix());
        assert!((&lhs - &rhs).max_abs() < 1e-15);
    }

    #[test]
    fn resolvent_norms() {
        let n = NilpotentAlgebraElement::new(ZERO, ONE);
        assert_eq!(nilpotent_resolvent_norm(&n, ONE).unwrap(), 2.0);
        let zero = NilpotentAlgebraElement::new(ZERO, ZERO);
        assert_eq!(nilpotent_resolvent_norm(&zero, c(2.0, 0.0)).unwrap(), 0.5);
        let x = NilpotentAlgebraElement::new(ONE, c(3.0, 0.0));
        assert_eq!(nilpotent_resolvent_norm(&x, c(1.0, 2.0)).unwrap(), 1.25);
        assert_eq!(nilpotent_resolvent_norm(&x, ONE), Err(Error::SpectrumHit(ONE)));
    }

    #[test]
    fn resolvent_inverts() {
        let x = NilpotentAlgebraElement::new(c(0.3, 1.0), c(-2.0, 0.5));
        let z = c(1.0, -1.0);
        let r = x.resolvent(z).unwrap();
        let prod = nilpotent_mul(&r, &x.scale(-ONE).shift(z));
        assert!((prod.alpha - ONE).norm() < 1e-15);
        assert!(prod.beta.norm() < 1e-15);
        assert!((r.norm() - nilpotent_resolvent_norm(&x, z).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn normal_generator() {
        let eig = [c(1.0, 0.0), c(1.0, 0.0), c(5.0, 0.0)];
        let a = make_normal(3, &eig, 42).unwrap();
        let nrm = operator_norm(&a, OperatorNormKind::Induced2).unwrap();
        assert!(a.normality_defect() <= 1e-12 * nrm * nrm);
        let mut ev = eigenvalues(&a).unwrap().eigenvalues;
        ev.sort_by(|x, y| x.re.total_cmp(&y.re));
        for (got, want) in ev.iter().zip(&eig) {
            assert!((got - want).norm() < 1e-12);
        }
        assert!((make_normal(1, &[c(2.0, 1.0)], 7).unwrap().get(0, 0) - c(2.0, 1.0)).norm() < 1e-15);
        assert!(make_normal(2, &[ONE], 0).is_err());
        // seeded: same seed, same matrix
        assert_eq!(make_normal(3, &eig, 42).unwrap(), a);
    }

    #[test]
    fn shift_truncation_shape() {
        let s = make_shift_truncation(2).unwrap();
        assert_eq!(s, ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]).unwrap());
        assert!(make_shift_truncation(1).is_err());
        let s3 = make_shift_truncation(3).unwrap();
        assert!(eigenvalues(&s3).unwrap().eigenvalues.iter().all(|z| *z == ZERO));
    }

    #[test]
    fn oblique_projection_properties() {
        let p = make_oblique_projection(2, 1.0, 0).unwrap();
        assert_eq!(p, ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 0.0]]).unwrap());
        assert!((operator_norm(&p, OperatorNormKind::Induced2).unwrap() - 2f64.sqrt()).abs() < 1e-14);
        for (n, t, seed) in [(2, 0.5, 3), (5, 2.0, 11), (4, 1e-9, 5)] {
            let p = make_oblique_projection(n, t, seed).unwrap();
            assert!((&p.matmul(&p) - &p).max_abs() < 1e-12);
            let nrm = operator_norm(&p, OperatorNormKind::Induced2).unwrap();
            assert!((nrm - (1.0 + t * t).sqrt()).abs() < 1e-12);
            for z in eigenvalues(&p).unwrap().eigenvalues {
                assert!(z.norm() < 1e-10 || (z - ONE).norm() < 1e-10);
            }
        }
        assert!(make_oblique_projection(2, 0.0, 0).is_err());
    }
}
