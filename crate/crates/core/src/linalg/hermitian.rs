use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }
}

/// Cyclic complex Jacobi method. Only the Hermitian part `(H + Hᴴ)/2` of
/// the input is used.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = h.order();
    let sym = (h + &h.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut m = sym.as_slice().to_vec();
    let mut v = ComplexMatrix::identity(n).as_slice().to_vec();
    let scale = sym.frobenius_norm();

    for sweep in 0..=MAX_SWEEPS {
        if n == 1 || scale == 0.0 {
            break;
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= (n as f64) * f64::EPSILON * scale {
            break;
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                iterations: sweep,
                partial: (0..n).map(|i| m[i * n + i]).collect(),
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = m[p * n + q];
                let babs = b.norm();
                if babs <= 1e-300 {
                    continue;
                }
                let a = m[p * n + p].re;
                let d = m[q * n + q].re;
                let ebar = (b / babs).conj();
                let tau = (d - a) / (2.0 * babs);
                let t = if tau >= 0.0 { 1.0 } else { -1.0 } / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G = diag(1, ē) · [[c, s], [-s, c]]
                let gpp = Complex64::new(c, 0.0);
                let gpq = Complex64::new(s, 0.0);
                let gqp = ebar * (-s);
                let gqq = ebar * c;
                for k in 0..n {
                    let x = m[k * n + p];
                    let y = m[k * n + q];
                    m[k * n + p] = x * gpp + y * gqp;
                    m[k * n + q] = x * gpq + y * gqq;
                    let x = v[k * n + p];
                    let y = v[k * n + q];
                    v[k * n + p] = x * gpp + y * gqp;
                    v[k * n + q] = x * gpq + y * gqq;
                }
                for k in 0..n {
                    let x = m[p * n + k];
                    let y = m[q * n + k];
                    m[p * n + k] = gpp.conj() * x + gqp.conj() * y;
                    m[q * n + k] = gpq.conj() * x + gqq.conj() * y;
                }
                m[p * n + q] = Complex64::new(0.0, 0.0);
                m[q * n + p] = Complex64::new(0.0, 0.0);
                m[p * n + p] = Complex64::new(m[p * n + p].re, 0.0);
                m[q * n + q] = Complex64::new(m[q * n + q].re, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].re.total_cmp(&m[j * n + j].re));
    let values = order.iter().map(|&i| m[i * n + i].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vectors.set(k, new, v[k * n + old]);
        }
    }
    Ok(HermitianEigen { values, vectors })
}
