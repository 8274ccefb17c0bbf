use std::fs;
use std::io::Write;

use g1lab::calculus::{self, Contour, ScalarFunction};
use g1lab::g1::certify_g1;
use g1lab::io::{decomposition_to_json, matrix_to_json, polygon_to_json};
use g1lab::numrange::{check_g1_necessary, numerical_range, DEFAULT_DIRECTIONS};
use g1lab::plot::contours_svg;
use g1lab::pseudospec::{level_set_membership, resolvent_field, GridSpec, DEFAULT_RESOLUTION};
use g1lab::spectral::{spectral_radius_limit, spectrum_default, AlgebraElement};
use g1lab::Complex64;
use serde_json::json;

use crate::{CliError, Common, Format, FuncalcArgs};

fn emit(c: &Common, text: &str) -> Result<(), CliError> {
    match &c.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Usage(format!("writing {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Usage(format!("writing stdout: {e}")))
        }
    }
}

/// Secondary lines go to stdout when the main output went to a file.
fn note(c: &Common, line: &str) {
    if c.out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn fmt_c(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{} - {}i", z.re, -z.im)
    } else {
        format!("{} + {}i", z.re, z.im)
    }
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--{name} must be positive, got {v}")))
    }
}

pub fn spectrum(c: &Common) -> Result<(), CliError> {
    let a = c.element()?;
    let s = spectrum_default(&a)?;
    let limit = spectral_radius_limit(&a, 64)?;
    let text = match c.format.unwrap_or(Format::Text) {
        Format::Json => {
            let clusters: Vec<_> = s
                .clusters
                .iter()
                .map(|cl| json!({"center": pair(cl.center), "multiplicity": cl.multiplicity}))
                .collect();
            let doc = json!({
                "norm": a.norm_label(),
                "clusters": clusters,
                "cluster_tol": s.cluster_tol,
                "spectral_radius": s.spectral_radius,
                "spectral_radius_limit": limit,
                "residual_bound": s.residual_bound,
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        Format::Text => {
            let mut t = format!("norm: {}\nclusters: {}\n", a.norm_label(), s.len());
            for cl in &s.clusters {
                t.push_str(&format!("  {}  x{}\n", fmt_c(cl.center), cl.multiplicity));
            }
            t.push_str(&format!("spectral radius (eigenvalues): {}\n", s.spectral_radius));
            t.push_str(&format!("spectral radius (power limit, k <= 64): {limit}\n"));
            t
        }
        f => return Err(CliError::Usage(format!("spectrum does not support --format {f:?}"))),
    };
    emit(c, &text)
}

fn grid_for(c: &Common, a: &AlgebraElement) -> Result<GridSpec, CliError> {
    let (nx, ny) = match c.grid.as_deref() {
        Some([nx, ny]) => (*nx, *ny),
        _ => (DEFAULT_RESOLUTION, DEFAULT_RESOLUTION),
    };
    Ok(match c.bounds.as_deref() {
        Some([r0, r1, i0, i1]) => GridSpec::new(*r0, *r1, *i0, *i1, nx, ny)?,
        _ => GridSpec::around(&spectrum_default(a)?, nx, ny)?,
    })
}

pub fn pseudo(c: &Common) -> Result<(), CliError> {
    for &e in &c.eps {
        positive("eps", e)?;
    }
    let a = c.element()?;
    let g = grid_for(c, &a)?;
    let field = resolvent_field(&a, &g)?;
    let text = match c.format.unwrap_or(Format::Csv) {
        Format::Csv => field.to_csv(),
        Format::Json => field.to_json() + "\n",
        Format::Svg => {
            if c.eps.is_empty() {
                return Err(CliError::Usage("--format svg needs --eps".into()));
            }
            contours_svg(&field, &c.eps, &spectrum_default(&a)?.centers())?
        }
        Format::Text => return Err(CliError::Usage("pseudo writes csv, json or svg".into())),
    };
    emit(c, &text)?;
    for &eps in &c.eps {
        let mask = level_set_membership(&field, eps)?;
        let members = mask.iter().filter(|&&m| m).count();
        note(
            c,
            &format!(
                "eps {eps}: {members} of {} nodes, area {:.6}",
                g.len(),
                field.mask_area(&mask)
            ),
        );
    }
    Ok(())
}

pub fn g1check(c: &Common) -> Result<(), CliError> {
    positive("tol", c.tol)?;
    let a = c.element()?;
    let report = certify_g1(&a, c.tol)?;
    emit(c, &(report.to_json() + "\n"))
}

pub fn numrange(c: &Common) -> Result<(), CliError> {
    let a = c.element()?;
    let directions = c.nodes.unwrap_or(DEFAULT_DIRECTIONS);
    match c.format.unwrap_or(Format::Json) {
        Format::Json => {
            let hull = numerical_range(&a, directions)?;
            emit(c, &(polygon_to_json(&hull.boundary) + "\n"))?;
            note(
                c,
                &format!(
                    "numerical radius {} ({:?}, {} vertices)",
                    hull.numerical_radius,
                    hull.mode,
                    hull.boundary.len()
                ),
            );
            Ok(())
        }
        Format::Text => {
            let r = check_g1_necessary(&a)?;
            let mut t = format!(
                "mode: {:?}\nspectral radius r: {}\nnumerical radius v: {}\nnorm: {}\n",
                r.mode, r.spectral_radius, r.numerical_radius, r.norm
            );
            t.push_str(&format!(
                "slacks: v - r = {:e}, |a| - v = {:e}, e*v - |a| = {:e}\n",
                r.slack_radius, r.slack_numerical, r.slack_norm
            ));
            t.push_str(&format!(
                "hausdorff(V, conv spectrum): {:e} (discretization {:e})\n",
                r.hull_distance, r.discretization
            ));
            match r.norm_over_radius {
                Some(q) => t.push_str(&format!("|a|/r: {q}\n")),
                None => t.push_str("|a|/r: undefined (r = 0)\n"),
            }
            t.push_str(&format!(
                "verdict: {}\n",
                if r.not_g1 { "Not-G1" } else { "no obstruction found" }
            ));
            for reason in &r.reasons {
                t.push_str(&format!("  - {reason}\n"));
            }
            emit(c, &t)
        }
        f => Err(CliError::Usage(format!("numrange does not support --format {f:?}"))),
    }
}

pub fn decompose(c: &Common) -> Result<(), CliError> {
    positive("tol", c.tol)?;
    let a = c.element()?;
    let d = calculus::spectral_decomposition(&a, c.tol)?;
    match c.format.unwrap_or(Format::Json) {
        Format::Json => emit(c, &(decomposition_to_json(&d) + "\n")),
        Format::Text => {
            let mut t = String::from("lambda\n");
            for l in &d.lambdas {
                t.push_str(&format!("  {}\n", fmt_c(*l)));
            }
            let x = &d.defects;
            for (name, v) in [
                ("idempotency", x.idempotency),
                ("norm_one", x.norm_one),
                ("commutation", x.commutation),
                ("resolution", x.resolution),
                ("reconstruction", x.reconstruction),
                ("annihilation", x.annihilation),
                ("eigen", x.eigen),
                ("commutes_with_a", x.commutes_with_a),
            ] {
                t.push_str(&format!("{name:<16} {v:.3e}\n"));
            }
            t.push_str(&format!(
                "threshold        {:.3e}\nresult           {}\n",
                d.threshold,
                if d.passes() { "PASS" } else { "FAIL" }
            ));
            emit(c, &t)
        }
        f => Err(CliError::Usage(format!("decompose does not support --format {f:?}"))),
    }
}

pub fn funcalc(f: &FuncalcArgs) -> Result<(), CliError> {
    let c = &f.common;
    let func = match f.function.as_str() {
        "exp" => ScalarFunction::exp(),
        "poly" | "polynomial" => {
            let coeffs = f
                .coeffs
                .as_deref()
                .ok_or_else(|| CliError::Usage("--function poly needs --coeffs".into()))?;
            ScalarFunction::polynomial(&Common::coefficients(coeffs)?)
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown function `{other}` (expected exp or poly)"
            )))
        }
    };
    let a = c.element()?;
    let s = spectrum_default(&a)?;
    let gamma = Contour::around_spectrum(&s, c.nodes.unwrap_or(calculus::DEFAULT_NODES))?;
    let result = calculus::funcalc(&a, &func, &gamma)?;
    let text = match (&result, c.format.unwrap_or(Format::Json)) {
        (AlgebraElement::Matrix { matrix, .. }, Format::Json) => matrix_to_json(matrix) + "\n",
        (AlgebraElement::Nilpotent(x), Format::Json) => {
            serde_json::to_string(&json!({"alpha": pair(x.alpha), "beta": pair(x.beta)})).expect("json") + "\n"
        }
        (AlgebraElement::Matrix { matrix, .. }, Format::Text) => matrix
            .to_rows()
            .iter()
            .map(|row| row.iter().map(|z| fmt_c(*z)).collect::<Vec<_>>().join("  ") + "\n")
            .collect(),
        (AlgebraElement::Nilpotent(x), Format::Text) => {
            format!("alpha {}\nbeta {}\n", fmt_c(x.alpha), fmt_c(x.beta))
        }
        (_, f) => return Err(CliError::Usage(format!("funcalc does not support --format {f:?}"))),
    };
    emit(c, &text)
}
