use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Relative pivot threshold below which a matrix is declared singular.
pub const RANK_TOL: f64 = 1e-14;

/// Packed LU factors with row permutation, `P A = L U`.
pub(crate) struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl Lu {
    pub(crate) fn factor(a: &ComplexMatrix) -> Result<Self> {
        let n = a.order();
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let tolerance = RANK_TOL * a.max_abs();

        for k in 0..n {
            let (p, pivot) =
                (k..n)
                    .map(|i| (i, lu[i * n + k].norm()))
                    .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot <= tolerance || pivot == 0.0 {
                return Err(Error::SingularMatrix { pivot, tolerance });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let inv = 1.0 / lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] * inv;
                lu[i * n + k] = f;
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= f * u;
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub(crate) fn solve_vec(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        x
    }
}

/// Solves `A X = B` by partial-pivoting LU.
///
/// Fails with [`Error::SingularMatrix`] when a pivot drops below
/// `1e-14 · max|A_ij|`.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.order() != b.order() {
        return Err(Error::DimensionMismatch {
            expected: a.order(),
            found: b.order(),
        });
    }
    let n = a.order();
    let lu = Lu::factor(a)?;
    let mut out = ComplexMatrix::zeros(n);
    for j in 0..n {
        let x = lu.solve_vec(&b.column(j));
        for (i, v) in x.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    solve(a, &ComplexMatrix::identity(a.order()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_diagonal() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(solve(&i2, &i2).unwrap(), i2);
        let d = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 4.0]]).unwrap();
        let x = solve(&d, &i2).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, 0.25]]).unwrap();
        assert!((&x - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn unipotent_inverse_multiplies_back() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let x = inverse(&a).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[1.0, -1.0], &[0.0, 1.0]]).unwrap();
        assert!((&x - &expected).max_abs() < 1e-15);
        assert!((&a.matmul(&x) - &ComplexMatrix::identity(2)).max_abs() < 1e-15);
    }

    #[test]
    fn singular_is_reported() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert!(matches!(inverse(&a), Err(Error::SingularMatrix { .. })));
        let z = ComplexMatrix::zeros(3);
        assert!(matches!(inverse(&z), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn order_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(solve(&a, &b), Err(Error::DimensionMismatch { .. })));
    }
}
