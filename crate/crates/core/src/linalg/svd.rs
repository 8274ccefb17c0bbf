//! Singular values by one-sided (Hestenes) Jacobi rotations.
//!
//! Column pairs are rotated until mutually orthogonal; the column norms are
//! then the singular values. The method delivers small singular values to
//! high relative accuracy, which is what the resolvent norm `1/σ_min` needs.
//! When only the values are wanted, a column-pivoted QR factorization runs
//! first and the rotations act on `Rᴴ`, which typically halves the sweeps.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const ORTHO_TOL: f64 = 1e-15;
const MAX_SWEEPS: usize = 100;

/// Singular values (descending) together with the matching left singular
/// vectors. Vectors for zero singular values are zero.
#[derive(Debug, Clone)]
pub struct LeftSvd {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

fn jacobi_columns(a: &ComplexMatrix) -> Result<Vec<Vec<Complex64>>> {
    jacobi((0..a.order()).map(|j| a.column(j)).collect())
}

/// Column-pivoted Householder QR; returns the columns of `Rᴴ`.
fn pivoted_r_adjoint(a: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    let n = a.order();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    for k in 0..n {
        let tail = |c: &Vec<Complex64>| c[k..].iter().map(|z| z.norm_sqr()).sum::<f64>();
        let pivot = (k..n)
            .max_by(|&i, &j| tail(&cols[i]).total_cmp(&tail(&cols[j])).then(j.cmp(&i)))
            .expect("nonempty range");
        cols.swap(k, pivot);
        let x = norm(&cols[k][k..]);
        if x == 0.0 {
            continue;
        }
        let x0 = cols[k][k];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * x;
        let mut v: Vec<Complex64> = cols[k][k..].to_vec();
        v[0] -= alpha;
        let vv = sq_norm(&v);
        if vv == 0.0 {
            continue;
        }
        for col in cols.iter_mut().skip(k) {
            let dot: Complex64 = v.iter().zip(&col[k..]).map(|(p, q)| p.conj() * q).sum();
            let f = dot * (2.0 / vv);
            for (entry, p) in col[k..].iter_mut().zip(&v) {
                *entry -= f * p;
            }
        }
        cols[k][k] = alpha;
        for entry in cols[k][k + 1..].iter_mut() {
            *entry = Complex64::new(0.0, 0.0);
        }
    }
    // column i of Rᴴ is the conjugated row i of R
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j >= i {
                        cols[j][i].conj()
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect()
}

fn jacobi(mut cols: Vec<Vec<Complex64>>) -> Result<Vec<Vec<Complex64>>> {
    let n = cols.len();
    let mut norms: Vec<f64> = cols.iter().map(|c| sq_norm(c)).collect();

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norms[p];
                let beta = norms[q];
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= ORTHO_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let cp = &mut left[p];
                let cq = &mut right[0];
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let yq = *y * phase;
                    let xp = *x;
                    *x = xp * c - yq * s;
                    *y = xp * s + yq * c;
                }
                // exact in exact arithmetic; refreshed every sweep below
                norms[p] = (alpha - t * g).max(0.0);
                norms[q] = beta + t * g;
            }
        }
        for (v, c) in norms.iter_mut().zip(&cols) {
            *v = sq_norm(c);
        }
        if !rotated {
            return Ok(cols);
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_SWEEPS,
        partial: norms.iter().map(|v| Complex64::new(v.sqrt(), 0.0)).collect(),
    })
}

fn sq_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    // scaled to avoid overflow/underflow in the sum of squares
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    scale * v.iter().map(|z| (z / scale).norm_sqr()).sum::<f64>().sqrt()
}

/// All singular values, in descending order.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    // squared column norms under- or overflow long before the entries do
    let scale = a.max_abs();
    if !scale.is_finite() {
        return Err(Error::NonFinite);
    }
    if scale == 0.0 {
        return Ok(vec![0.0; a.order()]);
    }
    let cols = jacobi(pivoted_r_adjoint(&a.scale(Complex64::new(1.0 / scale, 0.0))))?;
    let mut values: Vec<f64> = cols.iter().map(|c| norm(c) * scale).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

pub fn left_svd(a: &ComplexMatrix) -> Result<LeftSvd> {
    let scale = a.max_abs();
    if !scale.is_finite() {
        return Err(Error::NonFinite);
    }
    let cols = if scale == 0.0 {
        jacobi_columns(a)?
    } else {
        jacobi_columns(&a.scale(Complex64::new(1.0 / scale, 0.0)))?
            .into_iter()
            .map(|c| c.into_iter().map(|z| z * scale).collect())
            .collect()
    };
    let mut pairs: Vec<(f64, Vec<Complex64>)> = cols
        .into_iter()
        .map(|c| {
            let s = norm(&c);
            let u = if s > 0.0 {
                c.iter().map(|z| z / s).collect()
            } else {
                vec![Complex64::new(0.0, 0.0); c.len()]
            };
            (s, u)
        })
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let (values, vectors) = pairs.into_iter().unzip();
    Ok(LeftSvd { values, vectors })
}

pub fn sigma_min(a: &ComplexMatrix) -> Result<f64> {
    Ok(*singular_values(a)?.last().expect("order is at least one"))
}

pub fn sigma_max(a: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(a)?[0])
}
