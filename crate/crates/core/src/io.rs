//! Matrix, polygon and decomposition documents.
//!
//! Matrices are read from either of two formats:
//!
//! * JSON `{"n": 2, "entries": [[[re, im], [re, im]], [[re, im], [re, im]]]}`,
//!   rows first;
//! * Matrix Market, `coordinate` or `array` layout with `complex`, `real` or
//!   `integer` fields and `general`, `symmetric`, `skew-symmetric` or
//!   `hermitian` symmetry.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::calculus::{Defects, SpectralDecomposition};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

#[derive(Serialize, Deserialize)]
struct MatrixDocument {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

fn entries_of(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    m.to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn matrix_of(entries: Vec<Vec<[f64; 2]>>) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<Complex64>> = entries
        .into_iter()
        .map(|row| row.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(&rows)
}

pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixDocument {
        n: m.order(),
        entries: entries_of(m),
    })
    .expect("matrix serializes")
}

pub fn matrix_from_json(text: &str) -> Result<ComplexMatrix> {
    let doc: MatrixDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.entries.len() != doc.n {
        return Err(Error::DimensionMismatch {
            expected: doc.n,
            found: doc.entries.len(),
        });
    }
    matrix_of(doc.entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Complex,
    Real,
    Integer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    SkewSymmetric,
    Hermitian,
}

fn mm_header(line: &str) -> Result<(bool, Field, Symmetry)> {
    let words: Vec<String> = line.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(Error::Parse(format!("bad Matrix Market header `{line}`")));
    }
    let coordinate = match words[2].as_str() {
        "coordinate" => true,
        "array" => false,
        other => return Err(Error::Parse(format!("unknown layout `{other}`"))),
    };
    let field = match words[3].as_str() {
        "complex" => Field::Complex,
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        other => return Err(Error::Unsupported(format!("Matrix Market field `{other}`"))),
    };
    let symmetry = match words[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        "hermitian" => Symmetry::Hermitian,
        other => return Err(Error::Unsupported(format!("Matrix Market symmetry `{other}`"))),
    };
    if symmetry == Symmetry::Hermitian && field != Field::Complex {
        return Err(Error::Parse("hermitian symmetry needs a complex field".into()));
    }
    Ok((coordinate, field, symmetry))
}

fn parse_num(tok: Option<&str>, what: &str, lineno: usize) -> Result<f64> {
    let tok = tok.ok_or_else(|| Error::Parse(format!("line {lineno}: missing {what}")))?;
    tok.parse::<f64>()
        .map_err(|e| Error::Parse(format!("line {lineno}: {what} `{tok}`: {e}")))
}

fn parse_index(tok: Option<&str>, n: usize, lineno: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse(format!("line {lineno}: missing index")))?;
    let k: usize = tok
        .parse()
        .map_err(|e| Error::Parse(format!("line {lineno}: index `{tok}`: {e}")))?;
    if k == 0 || k > n {
        return Err(Error::Parse(format!("line {lineno}: index {k} outside 1..={n}")));
    }
    Ok(k - 1)
}

pub fn matrix_from_matrix_market(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let (coordinate, field, symmetry) = mm_header(header)?;
    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (size_no, size_line) = body.next().ok_or_else(|| Error::Parse("missing size line".into()))?;
    let mut sizes = size_line.split_whitespace();
    let rows = parse_index_count(sizes.next(), size_no + 1)?;
    let cols = parse_index_count(sizes.next(), size_no + 1)?;
    if rows != cols {
        return Err(Error::DimensionMismatch {
            expected: rows,
            found: cols,
        });
    }
    let n = rows;
    let declared = if coordinate {
        Some(parse_index_count(sizes.next(), size_no + 1)?)
    } else {
        None
    };

    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    let mut place = |i: usize, j: usize, v: Complex64| {
        data[i * n + j] = v;
        if i != j {
            match symmetry {
                Symmetry::General => {}
                Symmetry::Symmetric => data[j * n + i] = v,
                Symmetry::SkewSymmetric => data[j * n + i] = -v,
                Symmetry::Hermitian => data[j * n + i] = v.conj(),
            }
        }
    };
    let read_value = |toks: &mut std::str::SplitWhitespace, lineno: usize| -> Result<Complex64> {
        let re = parse_num(toks.next(), "value", lineno)?;
        let im = if field == Field::Complex {
            parse_num(toks.next(), "imaginary part", lineno)?
        } else {
            0.0
        };
        Ok(Complex64::new(re, im))
    };

    let mut count = 0;
    if coordinate {
        for (no, line) in body {
            let mut toks = line.split_whitespace();
            let i = parse_index(toks.next(), n, no + 1)?;
            let j = parse_index(toks.next(), n, no + 1)?;
            let v = read_value(&mut toks, no + 1)?;
            place(i, j, v);
            count += 1;
        }
        if Some(count) != declared {
            return Err(Error::Parse(format!(
                "declared {} entries, found {count}",
                declared.unwrap_or(0)
            )));
        }
    } else {
        // column-major; symmetric variants store only the lower triangle
        let mut slots = Vec::new();
        for j in 0..n {
            let start = match symmetry {
                Symmetry::General => 0,
                Symmetry::SkewSymmetric => j + 1,
                _ => j,
            };
            for i in start..n {
                slots.push((i, j));
            }
        }
        for (no, line) in body {
            let mut toks = line.split_whitespace();
            let v = read_value(&mut toks, no + 1)?;
            let &(i, j) = slots
                .get(count)
                .ok_or_else(|| Error::Parse(format!("line {}: too many entries", no + 1)))?;
            place(i, j, v);
            count += 1;
        }
        if count != slots.len() {
            return Err(Error::Parse(format!("expected {} entries, found {count}", slots.len())));
        }
    }
    ComplexMatrix::from_vec(n, data)
}

fn parse_index_count(tok: Option<&str>, lineno: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse(format!("line {lineno}: incomplete size line")))?;
    tok.parse()
        .map_err(|e| Error::Parse(format!("line {lineno}: size `{tok}`: {e}")))
}

/// Dense `array complex general` output.
pub fn matrix_to_matrix_market(m: &ComplexMatrix) -> String {
    let n = m.order();
    let mut out = format!("%%MatrixMarket matrix array complex general\n{n} {n}\n");
    for j in 0..n {
        for i in 0..n {
            let z = m.get(i, j);
            out.push_str(&format!("{} {}\n", z.re, z.im));
        }
    }
    out
}

/// Reads either format, deciding by the first non-blank character.
pub fn read_matrix(text: &str) -> Result<ComplexMatrix> {
    let t = text.trim_start();
    if t.starts_with('{') {
        matrix_from_json(t)
    } else if t.starts_with("%%") {
        matrix_from_matrix_market(t)
    } else {
        Err(Error::Parse("input is neither a JSON matrix nor Matrix Market".into()))
    }
}

/// Polygon as a JSON array of `[re, im]` pairs.
pub fn polygon_to_json(vertices: &[Complex64]) -> String {
    let pairs: Vec<[f64; 2]> = vertices.iter().map(|z| [z.re, z.im]).collect();
    serde_json::to_string(&pairs).expect("polygon serializes")
}

pub fn polygon_from_json(text: &str) -> Result<Vec<Complex64>> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
}

/// Serialized form of a [`SpectralDecomposition`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub lambdas: Vec<[f64; 2]>,
    pub defects: Defects,
    pub kappa_gap: f64,
    pub threshold: f64,
    pub passes: bool,
    /// `n × n` arrays of `[re, im]`; empty for non-matrix elements.
    pub projections: Vec<Vec<Vec<[f64; 2]>>>,
}

impl DecompositionDocument {
    pub fn projection_matrices(&self) -> Result<Vec<ComplexMatrix>> {
        self.projections.iter().cloned().map(matrix_of).collect()
    }
}

impl From<&SpectralDecomposition> for DecompositionDocument {
    fn from(d: &SpectralDecomposition) -> Self {
        Self {
            lambdas: d.lambdas.iter().map(|z| [z.re, z.im]).collect(),
            defects: d.defects,
            kappa_gap: d.kappa_gap,
            threshold: d.threshold,
            passes: d.passes(),
            projections: d
                .projections
                .iter()
                .filter_map(|e| e.as_matrix().map(entries_of))
                .collect(),
        }
    }
}

pub fn decomposition_to_json(d: &SpectralDecomposition) -> String {
    serde_json::to_string_pretty(&DecompositionDocument::from(d)).expect("decomposition serializes")
}

pub fn decomposition_from_json(text: &str) -> Result<DecompositionDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::spectral_decomposition;
    use crate::linalg::OperatorNormKind;
    use crate::spectral::AlgebraElement;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(1.0, 0.5), c(-2.0, 0.0)], vec![c(0.0, 0.1), c(3.25, -1.0)]]).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let m = sample();
        let text = matrix_to_json(&m);
        assert!(text.starts_with("{\"n\":2,\"entries\":[[[1.0,0.5]"));
        assert_eq!(matrix_from_json(&text).unwrap(), m);
        assert_eq!(read_matrix(&text).unwrap(), m);
        assert!(matrix_from_json(r#"{"n":3,"entries":[[[1,0]]]}"#).is_err());
        assert!(matrix_from_json(r#"{"n":1,"entries":[[[1,0],[2,0]]]}"#).is_err());
    }

    #[test]
    fn matrix_market_round_trip() {
        let m = sample();
        let text = matrix_to_matrix_market(&m);
        assert_eq!(read_matrix(&text).unwrap(), m);
    }

    #[test]
    fn matrix_market_variants() {
        let coord = "%%MatrixMarket matrix coordinate complex general\n% comment\n2 2 3\n1 1 1.0 0.5\n1 2 -2 0\n2 2 3.25 -1\n2 1 0 0.1\n";
        assert!(matrix_from_matrix_market(coord).is_err(), "entry count is checked");
        let coord = coord.replace("2 2 3\n", "2 2 4\n");
        assert_eq!(matrix_from_matrix_market(&coord).unwrap(), sample());

        let herm = "%%MatrixMarket matrix coordinate complex hermitian\n2 2 2\n1 1 1 0\n2 1 2 3\n";
        let h = matrix_from_matrix_market(herm).unwrap();
        assert_eq!(h.get(0, 1), c(2.0, -3.0));
        assert_eq!(h.get(1, 0), c(2.0, 3.0));

        let real = "%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n3\n";
        let r = matrix_from_matrix_market(real).unwrap();
        assert_eq!(r.get(0, 1), c(2.0, 0.0));
        assert_eq!(r.get(1, 1), c(3.0, 0.0));

        let skew = "%%MatrixMarket matrix array integer skew-symmetric\n2 2\n5\n";
        let s = matrix_from_matrix_market(skew).unwrap();
        assert_eq!(s.get(1, 0), c(5.0, 0.0));
        assert_eq!(s.get(0, 1), c(-5.0, 0.0));

        assert!(matrix_from_matrix_market("%%MatrixMarket matrix coordinate pattern general\n1 1 0\n").is_err());
        assert!(matrix_from_matrix_market("%%MatrixMarket matrix array real general\n2 3\n").is_err());
        assert!(read_matrix("1 2 3").is_err());
    }

    #[test]
    fn polygon_round_trip() {
        let p = vec![c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.75)];
        assert_eq!(polygon_from_json(&polygon_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn decomposition_round_trip() {
        let a = AlgebraElement::matrix(
            ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap(),
            OperatorNormKind::Induced2,
        );
        let d = spectral_decomposition(&a, 1e-8).unwrap();
        let text = decomposition_to_json(&d);
        let doc = decomposition_from_json(&text).unwrap();
        assert_eq!(doc, DecompositionDocument::from(&d));
        let ps = doc.projection_matrices().unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(&ps[0], d.projections[0].as_matrix().unwrap());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["lambdas", "defects", "projections"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
