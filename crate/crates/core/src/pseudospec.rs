//! Resolvent-norm fields on rectangular grids and ε-pseudospectra.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RANK_TOL;
use crate::numrange::NumericalRangeHull;
use crate::spectral::{distance_to_spectrum, resolvent_norm, spectrum_default, AlgebraElement, Spectrum};

pub const MAX_NODES: usize = 4_000_000;
pub const DEFAULT_RESOLUTION: usize = 201;

/// Axis-aligned grid of `nx × ny` nodes including the corners.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64, nx: usize, ny: usize) -> Result<Self> {
        let g = Self {
            re_min,
            re_max,
            im_min,
            im_max,
            nx,
            ny,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || !(self.re_min < self.re_max) || !(self.im_min < self.im_max) {
            return Err(Error::InvalidGrid(format!(
                "bounds [{}, {}] x [{}, {}] are not an increasing finite box",
                self.re_min, self.re_max, self.im_min, self.im_max
            )));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2x2 nodes, got {}x{}",
                self.nx, self.ny
            )));
        }
        match self.nx.checked_mul(self.ny) {
            Some(count) if count <= MAX_NODES => Ok(()),
            Some(count) => Err(Error::GridTooLarge(count)),
            None => Err(Error::GridTooLarge(usize::MAX)),
        }
    }

    /// Bounding box of the spectrum padded by `max(1, r(a))`.
    pub fn around(s: &Spectrum, nx: usize, ny: usize) -> Result<Self> {
        let pad = s.spectral_radius.max(1.0);
        let c = s.centers();
        let lo_re = c.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let hi_re = c.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        let lo_im = c.iter().map(|z| z.im).fold(f64::INFINITY, f64::min);
        let hi_im = c.iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max);
        Self::new(lo_re - pad, hi_re + pad, lo_im - pad, hi_im + pad, nx, ny)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        (self.re_max - self.re_min) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.im_max - self.im_min) / (self.ny - 1) as f64
    }

    pub fn cell_diagonal(&self) -> f64 {
        self.dx().hypot(self.dy())
    }

    pub fn re(&self, i: usize) -> f64 {
        if i + 1 == self.nx {
            self.re_max
        } else {
            self.re_min + i as f64 * self.dx()
        }
    }

    pub fn im(&self, j: usize) -> f64 {
        if j + 1 == self.ny {
            self.im_max
        } else {
            self.im_min + j as f64 * self.dy()
        }
    }

    /// Node `(i, j)`: `i` indexes the real axis, `j` the imaginary axis.
    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.re(i), self.im(j))
    }

    /// Flat index; rows run along the real axis.
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn node_at(&self, k: usize) -> Complex64 {
        self.node(k % self.nx, k / self.nx)
    }

    /// The grid translated by `c`.
    pub fn translated(&self, c: Complex64) -> Self {
        Self {
            re_min: self.re_min + c.re,
            re_max: self.re_max + c.re,
            im_min: self.im_min + c.im,
            im_max: self.im_max + c.im,
            ..*self
        }
    }
}

/// A closed disk `D(center, radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "disk radius must be nonnegative, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }
}

/// Resolvent norms on a grid, `+∞` at spectrum hits.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudospectrumField {
    pub grid: GridSpec,
    /// Flat, indexed by [`GridSpec::index`].
    pub values: Vec<f64>,
    /// Norm label of the element, as in [`AlgebraElement::norm_label`].
    pub norm: String,
}

impl PseudospectrumField {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    /// Area of the masked region, counting each node as one cell.
    pub fn mask_area(&self, mask: &[bool]) -> f64 {
        mask.iter().filter(|&&m| m).count() as f64 * self.grid.dx() * self.grid.dy()
    }

    /// One node per line, `re,im,resnorm`, rows along the real axis.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 32 + 16);
        out.push_str("re,im,resnorm\n");
        for (k, v) in self.values.iter().enumerate() {
            let z = self.grid.node_at(k);
            out.push_str(&format!("{},{},{}\n", z.re, z.im, v));
        }
        out
    }

    /// Parses [`to_csv`](Self::to_csv) output. The grid is recovered from
    /// the node coordinates; the norm label is not part of the CSV format.
    pub fn from_csv(text: &str, norm: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == "re,im,resnorm" => {}
            _ => return Err(Error::Parse("missing `re,im,resnorm` header".into())),
        }
        let mut rows = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected 3 fields", lineno + 2)));
            }
            let mut parsed = [0.0; 3];
            for (slot, f) in parsed.iter_mut().zip(&fields) {
                *slot = f
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 2)))?;
            }
            rows.push(parsed);
        }
        let nx = rows.iter().take_while(|r| r[1] == rows[0][1]).count();
        if nx < 2 || rows.len() % nx != 0 {
            return Err(Error::Parse("nodes do not form a rectangular grid".into()));
        }
        let ny = rows.len() / nx;
        let last = rows[rows.len() - 1];
        let grid = GridSpec::new(rows[0][0], last[0], rows[0][1], last[1], nx, ny)?;
        let values = rows.iter().map(|r| r[2]).collect();
        Ok(Self {
            grid,
            values,
            norm: norm.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FieldDocument::from(self)).expect("field serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FieldDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.grid.validate()?;
        if doc.values.len() != doc.grid.len() {
            return Err(Error::Parse(format!(
                "expected {} values, found {}",
                doc.grid.len(),
                doc.values.len()
            )));
        }
        Ok(Self {
            grid: doc.grid,
            values: doc.values.into_iter().map(|v| v.unwrap_or(f64::INFINITY)).collect(),
            norm: doc.norm,
        })
    }
}

/// JSON has no infinity; spectrum hits are written as `null`.
#[derive(Serialize, Deserialize)]
struct FieldDocument {
    grid: GridSpec,
    norm: String,
    values: Vec<Option<f64>>,
}

impl From<&PseudospectrumField> for FieldDocument {
    fn from(f: &PseudospectrumField) -> Self {
        Self {
            grid: f.grid,
            norm: f.norm.clone(),
            values: f.values.iter().map(|&v| v.is_finite().then_some(v)).collect(),
        }
    }
}

/// Evaluates `‖(z − a)⁻¹‖` at every node, in parallel. The result does not
/// depend on the number of worker threads.
pub fn resolvent_field(a: &AlgebraElement, g: &GridSpec) -> Result<PseudospectrumField> {
    g.validate()?;
    let s = spectrum_default(a)?;
    let hit_radius = RANK_TOL * (1.0 + a.norm()?);
    let values = (0..g.len())
        .into_par_iter()
        .map(|k| {
            let z = g.node_at(k);
            if distance_to_spectrum(z, &s) <= hit_radius {
                return Ok(f64::INFINITY);
            }
            match resolvent_norm(a, z) {
                Ok(v) => Ok(v),
                Err(Error::SpectrumHit(_)) => Ok(f64::INFINITY),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(PseudospectrumField {
        grid: *g,
        values,
        norm: a.norm_label().to_string(),
    })
}

/// `Λ_ε` on the grid: nodes whose resolvent norm is at least `1/ε`.
pub fn level_set_membership(field: &PseudospectrumField, eps: f64) -> Result<Vec<bool>> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let threshold = 1.0 / eps;
    Ok(field.values.iter().map(|&v| v >= threshold).collect())
}

/// Grid check of `σ(a) + D(0, ε) ⊆ Λ_ε(a) ⊆ V(a) + D(0, ε)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub eps: f64,
    /// Largest `ε − d(z, σ)` over nodes within `ε` of the spectrum that are
    /// not in `Λ_ε`; zero when there are none.
    pub inner_violation: f64,
    /// Largest `d(z, V) − ε` over nodes of `Λ_ε`; zero when all lie in
    /// `V + D(0, ε)`.
    pub outer_violation: f64,
    /// One cell diagonal plus `1e-6` plus the polygon's own discretization
    /// bound.
    pub tolerance: f64,
    pub members: usize,
    pub holds: bool,
}

pub fn verify_inclusions(
    a: &AlgebraElement,
    eps: f64,
    g: &GridSpec,
    hull: &NumericalRangeHull,
) -> Result<InclusionReport> {
    let field = resolvent_field(a, g)?;
    let s = spectrum_default(a)?;
    inclusions_on_field(&field, &s, eps, hull)
}

/// [`verify_inclusions`] on an already computed field.
pub fn inclusions_on_field(
    field: &PseudospectrumField,
    s: &Spectrum,
    eps: f64,
    hull: &NumericalRangeHull,
) -> Result<InclusionReport> {
    let mask = level_set_membership(field, eps)?;
    let g = &field.grid;
    let mut inner: f64 = 0.0;
    let mut outer: f64 = 0.0;
    for (k, &member) in mask.iter().enumerate() {
        let z = g.node_at(k);
        if member {
            outer = outer.max(hull.distance(z) - eps);
        } else {
            let d = distance_to_spectrum(z, s);
            if d <= eps {
                inner = inner.max(eps - d);
            }
        }
    }
    let tolerance = g.cell_diagonal() + 1e-6 + hull.discretization;
    Ok(InclusionReport {
        eps,
        inner_violation: inner,
        outer_violation: outer,
        tolerance,
        members: mask.iter().filter(|&&m| m).count(),
        holds: inner <= tolerance && outer <= tolerance,
    })
}

/// Comparison of the `Λ_ε` mask with the mask of `σ(a) + D(0, ε)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskComparison {
    pub eps: f64,
    /// Nodes in exactly one of the two masks.
    pub symmetric_difference: usize,
    /// Of those, nodes farther than one cell diagonal from the circles
    /// `|z − λ| = ε`.
    pub outside_band: usize,
}

pub fn compare_with_disks(field: &PseudospectrumField, centers: &[Complex64], eps: f64) -> Result<DiskComparison> {
    let mask = level_set_membership(field, eps)?;
    let band = field.grid.cell_diagonal();
    let mut diff = 0;
    let mut outside = 0;
    for (k, &member) in mask.iter().enumerate() {
        let z = field.grid.node_at(k);
        let d = centers.iter().map(|c| (z - c).norm()).fold(f64::INFINITY, f64::min);
        if member != (d <= eps) {
            diff += 1;
            if (d - eps).abs() > band {
                outside += 1;
            }
        }
    }
    Ok(DiskComparison {
        eps,
        symmetric_difference: diff,
        outside_band: outside,
    })
}
