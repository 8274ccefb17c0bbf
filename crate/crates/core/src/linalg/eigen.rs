//! Eigenvalues of dense complex matrices.
//!
//! Householder reduction to upper Hessenberg form, then single-shift complex
//! QR sweeps (Wilkinson shift, exceptional shifts every tenth stalled sweep)
//! with deflation on negligible subdiagonals. Triangular inputs skip the
//! iteration, so nilpotent shift blocks keep their exact spectrum `{0}`
//! instead of the rounding-induced ring of radius `ε^(1/n)`.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::svd::sigma_max;
use crate::error::{Error, Result};

/// QR-sweep cap per unit of order.
pub const SWEEPS_PER_ORDER: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Eigenvalues with an a-posteriori accuracy certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// All `n` eigenvalues, repeated according to algebraic multiplicity.
    pub eigenvalues: Vec<Complex64>,
    /// For every reported `λ` there is a unit vector `v` with
    /// `‖Av − λv‖₂ ≤ residual_bound · ‖A‖₂`.
    pub residual_bound: f64,
}

/// Complex Schur form `A = Q T Qᴴ`.
#[derive(Debug, Clone)]
pub struct Schur {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
}

impl Schur {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.t.diagonal_entries()
    }

    /// Eigenvector of `A` for the `k`-th diagonal entry of `T`, unit 2-norm.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let y = triangular_eigenvector(&self.t, k);
        let v = self.q.mul_vec(&y);
        normalize(v)
    }
}

fn normalize(v: Vec<Complex64>) -> Vec<Complex64> {
    let s = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if s == 0.0 {
        return v;
    }
    let scaled: Vec<Complex64> = v.iter().map(|z| z / s).collect();
    let nrm = scaled.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    scaled.into_iter().map(|z| z / nrm).collect()
}

fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    if an == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

fn hessenberg(a: &ComplexMatrix) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = a.order();
    let mut h = a.as_slice().to_vec();
    let mut q = ComplexMatrix::identity(n).as_slice().to_vec();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[i * n + k]).collect();
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let xn = (x[0].norm_sqr() + tail).sqrt();
        let phase = if x[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let mut v = x.clone();
        v[0] += phase * xn;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vn;
        }
        // H ← (I − 2vvᴴ) H on rows k+1..n
        for j in 0..n {
            let dot: Complex64 = (0..v.len()).map(|r| v[r].conj() * h[(k + 1 + r) * n + j]).sum();
            for r in 0..v.len() {
                h[(k + 1 + r) * n + j] -= v[r] * dot * 2.0;
            }
        }
        // H ← H (I − 2vvᴴ), Q ← Q (I − 2vvᴴ) on columns k+1..n
        for mat in [&mut h, &mut q] {
            for i in 0..n {
                let dot: Complex64 = (0..v.len()).map(|r| mat[i * n + k + 1 + r] * v[r]).sum();
                for r in 0..v.len() {
                    mat[i * n + k + 1 + r] -= dot * v[r].conj() * 2.0;
                }
            }
        }
        for i in k + 2..n {
            h[i * n + k] = ZERO;
        }
    }
    (h, q)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let mu1 = mean + disc;
    let mu2 = mean - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// Complex Schur decomposition.
pub fn schur(a: &ComplexMatrix) -> Result<Schur> {
    let n = a.order();
    if a.is_upper_triangular() {
        return Ok(Schur {
            q: ComplexMatrix::identity(n),
            t: a.clone(),
        });
    }
    if a.is_lower_triangular() {
        // reversal permutation turns a lower triangular matrix into an upper one
        let mut t = ComplexMatrix::zeros(n);
        let mut q = ComplexMatrix::zeros(n);
        for i in 0..n {
            q.set(i, n - 1 - i, Complex64::new(1.0, 0.0));
            for j in 0..n {
                t.set(i, j, a.get(n - 1 - i, n - 1 - j));
            }
        }
        return Ok(Schur { q, t });
    }

    let (mut h, mut q) = hessenberg(a);
    let h_norm = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let cap = SWEEPS_PER_ORDER * n;
    let mut total = 0;
    let mut stalled = 0;
    let mut hi = n - 1;
    let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(n);

    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let sub = h[lo * n + lo - 1].norm();
            let mut s = h[(lo - 1) * n + lo - 1].norm() + h[lo * n + lo].norm();
            if s == 0.0 {
                s = h_norm;
            }
            if sub <= f64::EPSILON * s || sub <= f64::MIN_POSITIVE {
                h[lo * n + lo - 1] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            stalled = 0;
            continue;
        }
        total += 1;
        stalled += 1;
        if total > cap {
            return Err(Error::NoConvergence {
                iterations: total - 1,
                partial: (0..n).map(|i| h[i * n + i]).collect(),
            });
        }

        let mu = if stalled % 10 == 0 {
            h[hi * n + hi] + h[hi * n + hi - 1].re.abs() * 0.75
        } else {
            wilkinson_shift(
                h[(hi - 1) * n + hi - 1],
                h[(hi - 1) * n + hi],
                h[hi * n + hi - 1],
                h[hi * n + hi],
            )
        };

        for k in lo..=hi {
            h[k * n + k] -= mu;
        }
        rots.clear();
        for k in lo..hi {
            let (c, s) = givens(h[k * n + k], h[(k + 1) * n + k]);
            for j in k..n {
                let x = h[k * n + j];
                let y = h[(k + 1) * n + j];
                h[k * n + j] = x * c + s * y;
                h[(k + 1) * n + j] = -s.conj() * x + y * c;
            }
            h[(k + 1) * n + k] = ZERO;
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = lo + idx;
            for i in 0..=(k + 1).min(hi) {
                let x = h[i * n + k];
                let y = h[i * n + k + 1];
                h[i * n + k] = x * c + y * s.conj();
                h[i * n + k + 1] = -x * s + y * c;
            }
            for i in 0..n {
                let x = q[i * n + k];
                let y = q[i * n + k + 1];
                q[i * n + k] = x * c + y * s.conj();
                q[i * n + k + 1] = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            h[k * n + k] += mu;
        }
    }

    for i in 1..n {
        for j in 0..i {
            h[i * n + j] = ZERO;
        }
    }
    Ok(Schur {
        q: ComplexMatrix::from_vec(n, q)?,
        t: ComplexMatrix::from_vec(n, h)?,
    })
}

/// Solves `(T − t_kk) y = 0` with `y_k = 1` by back substitution. Tiny
/// denominators are floored at `ε‖T‖` so defective eigenvalues still yield
/// a vector with a small residual.
fn triangular_eigenvector(t: &ComplexMatrix, k: usize) -> Vec<Complex64> {
    let n = t.order();
    let lambda = t.get(k, k);
    let floor = (f64::EPSILON * t.max_abs()).max(f64::MIN_POSITIVE);
    let mut y = vec![ZERO; n];
    y[k] = Complex64::new(1.0, 0.0);
    for j in (0..k).rev() {
        let s: Complex64 = (j + 1..=k).map(|i| t.get(j, i) * y[i]).sum();
        let mut den = t.get(j, j) - lambda;
        if den.norm() < floor {
            den = Complex64::new(floor, 0.0);
        }
        y[j] = -s / den;
        let big = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if big > 1e100 {
            for z in y.iter_mut() {
                *z /= big;
            }
        }
    }
    y
}

/// Eigenvalues with residual certificate.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<EigenResult> {
    let s = schur(a)?;
    let eigenvalues = s.eigenvalues();
    let a_norm = sigma_max(a)?;
    if a_norm == 0.0 {
        return Ok(EigenResult {
            eigenvalues,
            residual_bound: 0.0,
        });
    }
    let mut worst: f64 = 0.0;
    for (k, &lambda) in eigenvalues.iter().enumerate() {
        let v = s.eigenvector(k);
        let av = a.mul_vec(&v);
        let r = av
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - y * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(r);
    }
    Ok(EigenResult {
        eigenvalues,
        residual_bound: worst / a_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal_and_nilpotent() {
        let d = ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[0.0, 1.0]]).unwrap();
        let e = eigenvalues(&d).unwrap();
        assert_eq!(sorted(e.eigenvalues), vec![ZERO, Complex64::new(1.0, 0.0)]);

        let j = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let e = eigenvalues(&j).unwrap();
        assert_eq!(e.eigenvalues, vec![ZERO, ZERO]);
        assert!(e.residual_bound < 1e-14);
    }

    #[test]
    fn rotation_generator() {
        // characteristic polynomial z² + 1
        let a = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let e = eigenvalues(&a).unwrap();
        let ev = sorted(e.eigenvalues);
        assert!((ev[0] - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        assert!(e.residual_bound < 1e-14);
    }

    #[test]
    fn lower_shift_keeps_exact_zero_spectrum() {
        let mut s = ComplexMatrix::zeros(6);
        for i in 1..6 {
            s.set(i, i - 1, Complex64::new(1.0, 0.0));
        }
        let e = eigenvalues(&s).unwrap();
        assert!(e.eigenvalues.iter().all(|z| *z == ZERO));
        assert!(e.residual_bound < 1e-14);
    }

    #[test]
    fn schur_reconstructs_companion() {
        // companion matrix of (z-1)(z-2)(z-3)(z+1) with a complex perturbation
        let rows = vec![
            vec![
                Complex64::new(5.0, 0.0),
                Complex64::new(-5.0, 0.1),
                Complex64::new(-5.0, 0.0),
                Complex64::new(6.0, 0.0),
            ],
            vec![Complex64::new(1.0, 0.0), ZERO, ZERO, ZERO],
            vec![ZERO, Complex64::new(1.0, 0.0), ZERO, ZERO],
            vec![ZERO, ZERO, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.3)],
        ];
        let a = ComplexMatrix::from_rows(&rows).unwrap();
        let s = schur(&a).unwrap();
        assert!(s.t.is_upper_triangular());
        let rec = s.q.matmul(&s.t).matmul(&s.q.adjoint());
        assert!((&rec - &a).max_abs() < 1e-12);
        let gram = s.q.adjoint().matmul(&s.q);
        assert!((&gram - &ComplexMatrix::identity(4)).max_abs() < 1e-13);
        let e = eigenvalues(&a).unwrap();
        assert!(e.residual_bound < 1e-12);
    }
}
