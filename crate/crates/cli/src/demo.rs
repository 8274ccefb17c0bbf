//! Named reproduction scenarios. Each prints one PASS/FAIL line per check;
//! all sizes are small enough for `demo all` to finish in seconds.

use std::f64::consts::E;

use g1lab::algebras::{make_jordan, make_normal, make_oblique_projection, random_matrix};
use g1lab::calculus::{
    decomposed_funcalc, decomposed_resolvent, diagonalizability_report, funcalc, spectral_decomposition,
    verify_isolated_point, Contour, ScalarFunction,
};
use g1lab::g1::{certify_g1, g1_deviation, g1_deviation_with, hermitian_idempotent_test, HermIdemConclusion, Verdict};
use g1lab::geometry;
use g1lab::linalg::{ComplexMatrix, OperatorNormKind};
use g1lab::numrange::check_g1_necessary;
use g1lab::pseudospec::{compare_with_disks, resolvent_field, GridSpec};
use g1lab::spectral::{distance_to_spectrum, resolvent, spectrum_default, AlgebraElement};
use g1lab::{Complex64, Result};

use crate::CliError;

const PHI: f64 = 1.618_033_988_749_895;

struct Report {
    lines: Vec<String>,
    failures: usize,
}

impl Report {
    fn check(&mut self, name: &str, pass: bool, detail: String) {
        if !pass {
            self.failures += 1;
        }
        self.lines
            .push(format!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" }));
    }
}

type Scenario = fn(&mut Report) -> Result<()>;

const SCENARIOS: [(&str, Scenario); 13] = [
    ("lower-bound", lower_bound),
    ("normal", normal),
    ("diagonal-uniform", diagonal_uniform),
    ("nilpotent-algebra", nilpotent_algebra),
    ("jordan-witness", jordan_witness),
    ("pseudospectrum-disks", pseudospectrum_disks),
    ("projections", projections),
    ("isolated-point", isolated_point),
    ("decomposition", decomposition),
    ("diagonalizability", diagonalizability),
    ("quadrature", quadrature),
    ("numerical-range", numerical_range_chain),
    ("scalar-replay", scalar_replay),
];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn el(m: ComplexMatrix, k: OperatorNormKind) -> AlgebraElement {
    AlgebraElement::matrix(m, k)
}

/// `m` spectral points on a circle, repeated to order `n`.
fn clustered_spectrum(n: usize, m: usize, seed: u64) -> Vec<Complex64> {
    let points: Vec<Complex64> = (0..m)
        .map(|k| {
            Complex64::from_polar(
                1.0 + 0.25 * (seed % 3) as f64,
                2.0 * std::f64::consts::PI * k as f64 / m as f64 + 0.1 * seed as f64,
            )
        })
        .collect();
    (0..n).map(|k| points[k % m]).collect()
}

fn lower_bound(r: &mut Report) -> Result<()> {
    let mut worst = f64::INFINITY;
    let mut count = 0;
    for seed in 0..12u64 {
        let n = 2 + (seed as usize % 7);
        let k = OperatorNormKind::ALL[seed as usize % 3];
        let a = el(random_matrix(n, seed)?, k);
        let s = spectrum_default(&a)?;
        for j in 0..40 {
            let z = c(-2.5 + 0.13 * j as f64, 1.7 - 0.09 * j as f64 + 0.01 * seed as f64);
            if distance_to_spectrum(z, &s) > 1e-6 {
                worst = worst.min(g1_deviation_with(&a, &s, z)?);
                count += 1;
            }
        }
    }
    r.check(
        "deviation >= -1e-8",
        worst >= -1e-8,
        format!("min {worst:.3e} over {count} points"),
    );
    Ok(())
}

fn normal(r: &mut Report) -> Result<()> {
    let mut worst: f64 = 0.0;
    let mut all = true;
    for seed in 0..4u64 {
        let n = 2 + seed as usize;
        let a = el(
            make_normal(n, &clustered_spectrum(n, n, seed), seed)?,
            OperatorNormKind::Induced2,
        );
        let rep = certify_g1(&a, 1e-6)?;
        all &= rep.verdict == Verdict::Consistent;
        worst = worst.max(rep.max_deviation);
    }
    r.check(
        "normal matrices G1-consistent",
        all && worst <= 1e-7,
        format!("max deviation {worst:.3e}"),
    );
    Ok(())
}

fn diagonal_uniform(r: &mut Report) -> Result<()> {
    let mut worst: f64 = 0.0;
    let mut all = true;
    for seed in 0..4u64 {
        let n = 2 + seed as usize;
        let d = ComplexMatrix::diagonal(&clustered_spectrum(n, n, seed))?;
        let rep = certify_g1(&el(d, OperatorNormKind::InducedInf), 1e-6)?;
        all &= rep.verdict == Verdict::Consistent;
        worst = worst.max(rep.max_deviation);
    }
    r.check(
        "diagonals in inf-norm G1-consistent",
        all && worst <= 1e-9,
        format!("max deviation {worst:.3e}"),
    );
    Ok(())
}

fn nilpotent_algebra(r: &mut Report) -> Result<()> {
    let mut worst: f64 = 0.0;
    let mut scalar_worst: f64 = 0.0;
    for k in 0..20 {
        let alpha = c(0.5 * (k % 4) as f64 - 0.75, 0.3 * (k % 3) as f64);
        let beta = if k % 5 == 0 {
            c(0.0, 0.0)
        } else {
            c(0.2 * k as f64, -0.1 * k as f64)
        };
        let z = alpha + Complex64::from_polar(0.2 + 0.1 * k as f64, k as f64);
        let g = g1_deviation(&AlgebraElement::nilpotent(alpha, beta), z)?;
        let exact = beta.norm() / (z - alpha).norm();
        worst = worst.max((g - exact).abs());
        if beta.norm() == 0.0 {
            scalar_worst = scalar_worst.max(g.abs());
        }
    }
    r.check(
        "deviation equals |beta|/|z-alpha|",
        worst <= 1e-12,
        format!("max error {worst:.3e}"),
    );
    r.check(
        "scalars have zero deviation",
        scalar_worst <= 1e-12,
        format!("max {scalar_worst:.3e}"),
    );
    Ok(())
}

fn jordan_witness(r: &mut Report) -> Result<()> {
    for n in [2, 3] {
        for k in OperatorNormKind::ALL {
            let rep = certify_g1(&el(make_jordan(n, c(0.0, 0.0))?, k), 1e-6)?;
            r.check(
                &format!("J{n}(0) norm {k} refuted"),
                rep.verdict == Verdict::NotG1 && rep.witness_margin > 0.0,
                format!("margin {:.3e}", rep.witness_margin),
            );
        }
    }
    let g = g1_deviation(
        &el(make_jordan(2, c(0.0, 0.0))?, OperatorNormKind::Induced2),
        c(1.0, 0.0),
    )?;
    r.check(
        "J2(0) deviation at z=1 is phi-1",
        (g - (PHI - 1.0)).abs() <= 1e-8,
        format!("{g:.12}"),
    );
    Ok(())
}

fn pseudospectrum_disks(r: &mut Report) -> Result<()> {
    let a = el(
        ComplexMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0)])?,
        OperatorNormKind::Induced2,
    );
    let s = spectrum_default(&a)?;
    let g = GridSpec::around(&s, 201, 201)?;
    let f = resolvent_field(&a, &g)?;
    for eps in [0.05, 0.1, 0.2] {
        let cmp = compare_with_disks(&f, &s.centers(), eps)?;
        r.check(
            &format!("eps {eps} mask equals spectrum + disk"),
            cmp.outside_band == 0,
            format!(
                "{} nodes differ, {} outside one-cell band",
                cmp.symmetric_difference, cmp.outside_band
            ),
        );
    }
    Ok(())
}

fn projections(r: &mut Report) -> Result<()> {
    for seed in 1..3u64 {
        let rank = seed as usize;
        let ones: Vec<Complex64> = (0..3).map(|k| c(if k < rank { 1.0 } else { 0.0 }, 0.0)).collect();
        let p = el(make_normal(3, &ones, seed)?, OperatorNormKind::Induced2);
        let rep = hermitian_idempotent_test(&p, 1e-6)?;
        r.check(
            &format!("orthogonal projection of rank {rank}"),
            rep.conclusion == HermIdemConclusion::HermitianIdempotentG1,
            format!("{:?}", rep.conclusion),
        );
    }
    let q = el(make_oblique_projection(2, 1.0, 0)?, OperatorNormKind::Induced2);
    let rep = hermitian_idempotent_test(&q, 1e-6)?;
    r.check(
        "oblique projection refuted",
        rep.conclusion == HermIdemConclusion::NotHermitianIdempotent,
        format!("{:?}", rep.conclusion),
    );
    r.check(
        "oblique norm excess is sqrt2-1",
        (rep.norm_excess - (2f64.sqrt() - 1.0)).abs() <= 1e-10,
        format!("{:.12}", rep.norm_excess),
    );
    Ok(())
}

fn isolated_point(r: &mut Report) -> Result<()> {
    let mut worst: f64 = 0.0;
    for seed in 0..3u64 {
        let n = 3 + seed as usize;
        let a = el(
            make_normal(n, &clustered_spectrum(n, n, seed), seed)?,
            OperatorNormKind::Induced2,
        );
        for j in 0..n {
            let rep = verify_isolated_point(&a, j, 1e-8)?;
            let residual = rep.eigenvector_residual.unwrap_or(f64::INFINITY);
            worst = worst
                .max(rep.eigen_defect)
                .max(rep.norm_defect)
                .max(rep.idempotency_defect)
                .max(residual);
        }
    }
    r.check(
        "Riesz projection defects <= 1e-8",
        worst <= 1e-8,
        format!("max {worst:.3e}"),
    );
    let q = el(
        ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 0.0]])?,
        OperatorNormKind::Induced2,
    );
    let rep = verify_isolated_point(&q, 1, 1e-8)?;
    r.check(
        "oblique projection has norm defect sqrt2-1",
        (rep.norm_defect - (2f64.sqrt() - 1.0)).abs() <= 1e-10,
        format!("{:.12}", rep.norm_defect),
    );
    Ok(())
}

fn decomposition(r: &mut Report) -> Result<()> {
    let mut worst_defect: f64 = 0.0;
    let mut worst_res: f64 = 0.0;
    let mut worst_exp: f64 = 0.0;
    for seed in 0..3u64 {
        let m = 2 + seed as usize;
        let n = m + 1;
        let a = el(
            make_normal(n, &clustered_spectrum(n, m, seed), seed)?,
            OperatorNormKind::Induced2,
        );
        let d = spectral_decomposition(&a, 1e-7)?;
        worst_defect = worst_defect.max(d.defects.max());
        for k in 0..5 {
            let z = c(2.5 - 0.7 * k as f64, 0.4 * k as f64 - 1.1);
            let diff = decomposed_resolvent(&d, z)?.sub(&resolvent(&a, z)?).norm()?;
            worst_res = worst_res.max(diff / (1.0 + d.kappa_gap));
        }
        let s = spectrum_default(&a)?;
        let contour = Contour::around_spectrum(&s, 128)?;
        let f = ScalarFunction::exp();
        let diff = decomposed_funcalc(&d, &f)?.sub(&funcalc(&a, &f, &contour)?).norm()?;
        worst_exp = worst_exp.max(diff);
    }
    r.check(
        "all defects <= 1e-7",
        worst_defect <= 1e-7,
        format!("max {worst_defect:.3e}"),
    );
    r.check(
        "decomposed resolvent matches",
        worst_res <= 1e-7,
        format!("max {worst_res:.3e}"),
    );
    r.check(
        "decomposed exp matches contour exp",
        worst_exp <= 1e-7,
        format!("max {worst_exp:.3e}"),
    );
    Ok(())
}

fn diagonalizability(r: &mut Report) -> Result<()> {
    let a = el(
        make_normal(3, &[c(1.0, 0.0), c(1.0, 0.0), c(5.0, 0.0)], 42)?,
        OperatorNormKind::Induced2,
    );
    let rep = diagonalizability_report(&a, 1e-7)?;
    let worst = rep.residuals.iter().copied().fold(0.0, f64::max);
    r.check(
        "normal 3x3 splits into eigenspaces",
        rep.ranks == vec![2, 1] && rep.direct_sum && worst <= 1e-7,
        format!("ranks {:?}, max residual {worst:.3e}", rep.ranks),
    );
    let j = el(make_jordan(2, c(0.0, 0.0))?, OperatorNormKind::Induced2);
    let rep = diagonalizability_report(&j, 1e-7)?;
    r.check(
        "J2(0) eigenspace residual is 1",
        (rep.residuals[0] - 1.0).abs() <= 1e-10 && !rep.eigenspaces,
        format!("{:.12}", rep.residuals[0]),
    );
    Ok(())
}

fn quadrature(r: &mut Report) -> Result<()> {
    let eigs = [c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 1.0), c(2.0, -1.0), c(0.5, 2.0)];
    let a = el(make_normal(5, &eigs, 3)?, OperatorNormKind::Induced2);
    let gamma = Contour::circle(c(0.0, 0.0), 0.8, 32);
    let one = ScalarFunction::constant(c(1.0, 0.0));
    let results = [32, 64, 128, 256]
        .iter()
        .map(|&n| funcalc(&a, &one, &gamma.with_nodes(n)))
        .collect::<Result<Vec<_>>>()?;
    let diffs = results
        .windows(2)
        .map(|w| w[0].sub(&w[1]).norm())
        .collect::<Result<Vec<_>>>()?;
    let ok = diffs.windows(2).all(|w| w[0] >= 2.0 * w[1]);
    let shown: Vec<String> = diffs.iter().map(|d| format!("{d:.2e}")).collect();
    r.check(
        "error halves per doubling",
        ok,
        format!("differences {}", shown.join(", ")),
    );
    Ok(())
}

fn numerical_range_chain(r: &mut Report) -> Result<()> {
    let mut ok = true;
    let mut worst: f64 = f64::INFINITY;
    for seed in 0..9u64 {
        let n = 2 + seed as usize % 4;
        let a = el(random_matrix(n, seed)?, OperatorNormKind::ALL[seed as usize % 3]);
        let rep = check_g1_necessary(&a)?;
        let slack = 1e-6 + rep.discretization;
        let this = (rep.slack_radius + slack)
            .min(rep.slack_numerical + slack)
            .min(rep.slack_norm + 1e-6);
        worst = worst.min(this);
        ok &= this >= 0.0;
    }
    r.check("r <= nu <= |a| <= e nu", ok, format!("min slack {worst:.3e}"));

    let a = el(
        make_normal(3, &[c(0.0, 0.0), c(1.0, 0.5), c(-0.5, 1.0)], 7)?,
        OperatorNormKind::Induced2,
    );
    let rep = check_g1_necessary(&a)?;
    let ratio_ok = rep.norm <= E * rep.spectral_radius + 1e-6;
    r.check(
        "normal matrix: V equals spectral hull",
        rep.hull_distance <= 1e-2 && ratio_ok && !rep.not_g1,
        format!("hausdorff {:.3e}", rep.hull_distance),
    );
    let j = el(make_jordan(2, c(0.0, 0.0))?, OperatorNormKind::Induced2);
    let rep = check_g1_necessary(&j)?;
    r.check(
        "J2(0) flagged quasinilpotent",
        rep.quasinilpotent && rep.not_g1,
        format!("{:?}", rep.reasons),
    );
    let x = AlgebraElement::nilpotent(c(2.0, 0.0), c(1.0, 0.0));
    let hull = g1lab::numrange::numerical_range(&x, 360)?;
    let gap = geometry::hausdorff(&hull.boundary, &[c(2.0, 0.0)]);
    r.check(
        "nilpotent(2,1): V strictly larger than {2}",
        gap > 0.5,
        format!("hausdorff {gap:.3e}"),
    );
    Ok(())
}

fn scalar_replay(r: &mut Report) -> Result<()> {
    let mut worst: f64 = 0.0;
    for k in 0..4 {
        let mu = c(k as f64 - 1.5, 0.5 * k as f64);
        let a = el(ComplexMatrix::scalar(2 + k, mu), OperatorNormKind::Induced2);
        let b = a.shift(-mu);
        let scale = 1.0 + a.norm()?;
        for frac in [0.5, 0.1, 0.01] {
            let eps = frac * scale;
            let v = funcalc(&b, &ScalarFunction::identity(), &Contour::circle(c(0.0, 0.0), eps, 64))?.norm()?;
            worst = worst.max(v / eps);
        }
    }
    r.check(
        "|funcalc(a-mu, z)| <= 1.1 eps",
        worst <= 1.1,
        format!("max ratio {worst:.3e}"),
    );
    Ok(())
}

pub fn run(name: &str) -> std::result::Result<(), CliError> {
    let selected: Vec<&(&str, Scenario)> = if name == "all" {
        SCENARIOS.iter().collect()
    } else {
        let found: Vec<_> = SCENARIOS.iter().filter(|(n, _)| *n == name).collect();
        if found.is_empty() {
            let names: Vec<&str> = SCENARIOS.iter().map(|(n, _)| *n).collect();
            return Err(CliError::Usage(format!(
                "unknown demo `{name}` (expected all or one of {})",
                names.join(", ")
            )));
        }
        found
    };
    let mut failures = 0;
    for (scenario, f) in selected {
        let mut report = Report {
            lines: Vec::new(),
            failures: 0,
        };
        if let Err(e) = f(&mut report) {
            report.check("completed", false, e.to_string());
        }
        println!("[{scenario}]");
        for line in &report.lines {
            println!("  {line}");
        }
        failures += report.failures;
    }
    if failures == 0 {
        println!("all checks passed");
        Ok(())
    } else {
        Err(CliError::DemoFailed(failures))
    }
}
