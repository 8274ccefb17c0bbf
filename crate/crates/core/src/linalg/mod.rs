//! Dense complex linear algebra kernels.

mod eigen;
mod hermitian;
mod lu;
mod matrix;
mod svd;

use serde::{Deserialize, Serialize};

pub use eigen::{eigenvalues, schur, EigenResult, Schur, SWEEPS_PER_ORDER};
pub use hermitian::{hermitian_eigen, HermitianEigen};
pub use lu::{inverse, solve, RANK_TOL};
pub use matrix::{ComplexMatrix, MAX_ORDER};
pub use svd::{left_svd, sigma_max, sigma_min, singular_values, LeftSvd};

use crate::error::Result;

/// Induced operator norm on `ℂⁿˣⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorNormKind {
    /// Max absolute column sum.
    #[serde(rename = "1")]
    Induced1,
    /// Largest singular value.
    #[serde(rename = "2")]
    Induced2,
    /// Max absolute row sum.
    #[serde(rename = "inf")]
    InducedInf,
}

impl OperatorNormKind {
    pub const ALL: [OperatorNormKind; 3] = [Self::Induced1, Self::Induced2, Self::InducedInf];

    pub fn label(self) -> &'static str {
        match self {
            Self::Induced1 => "1",
            Self::Induced2 => "2",
            Self::InducedInf => "inf",
        }
    }
}

impl std::str::FromStr for OperatorNormKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "1" => Ok(Self::Induced1),
            "2" => Ok(Self::Induced2),
            "inf" | "Inf" | "INF" => Ok(Self::InducedInf),
            other => Err(format!("unknown norm `{other}` (expected 1, 2 or inf)")),
        }
    }
}

impl std::fmt::Display for OperatorNormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

pub fn operator_norm(a: &ComplexMatrix, kind: OperatorNormKind) -> Result<f64> {
    let n = a.order();
    Ok(match kind {
        OperatorNormKind::Induced1 => (0..n)
            .map(|j| (0..n).map(|i| a.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max),
        OperatorNormKind::InducedInf => (0..n)
            .map(|i| a.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max),
        OperatorNormKind::Induced2 => sigma_max(a)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unital() {
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(operator_norm(&i3, OperatorNormKind::Induced1).unwrap(), 1.0);
        assert_eq!(operator_norm(&i3, OperatorNormKind::InducedInf).unwrap(), 1.0);
        assert_relative_eq!(
            operator_norm(&i3, OperatorNormKind::Induced2).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn hand_computed_norms() {
        let j = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert_relative_eq!(operator_norm(&j, OperatorNormKind::Induced2).unwrap(), 1.0);
        let u = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert_eq!(operator_norm(&u, OperatorNormKind::Induced1).unwrap(), 2.0);
        assert_eq!(operator_norm(&u, OperatorNormKind::InducedInf).unwrap(), 2.0);
        assert_relative_eq!(
            operator_norm(&u, OperatorNormKind::Induced2).unwrap(),
            1.618_033_988_749_895,
            max_relative = 1e-14
        );
    }

    #[test]
    fn norm_kind_parsing() {
        for k in OperatorNormKind::ALL {
            assert_eq!(k.label().parse::<OperatorNormKind>().unwrap(), k);
        }
        assert!("3".parse::<OperatorNormKind>().is_err());
    }
}
