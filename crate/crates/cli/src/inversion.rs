//! `inversion-demo`: Fourier inversion through orbit characters on a
//! Heisenberg group.

use nalgebra::{DMatrix, DVector};
use nilkit_core::catalog::{heisenberg, Field};
use nilkit_harmonics::orbit::{character, character_quadrature};
use nilkit_harmonics::quadrature::gauss_hermite;
use nilkit_harmonics::{fourier_inversion, GaussianTestFunction, InversionOptions, TwoStepAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{sci, OutputFormat, Report, Table};
use crate::{load, InputError, InversionDemo, Output, Tolerances};

/// The standard Gaussian first, then seeded random ones with
/// `A = BBᵀ + I/2`.
pub fn test_functions(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<GaussianTestFunction> {
    let mut out = vec![GaussianTestFunction::standard(n)];
    while out.len() < count {
        let b = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-0.5..0.5));
        let a = &b * b.transpose() + DMatrix::identity(n, n) * 0.5;
        let c = DVector::from_fn(n, |_, _| rng.gen_range(-0.3..0.3));
        let amp = rng.gen_range(0.5..2.0);
        out.push(GaussianTestFunction::new(c, a, amp).expect("BBᵀ + I/2 is positive definite"));
    }
    out.truncate(count);
    out
}

/// The identity first, then seeded points in `[-0.6, 0.6]^n`.
pub fn sample_points(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<DVector<f64>> {
    let mut out = vec![DVector::zeros(n)];
    while out.len() < count {
        out.push(DVector::from_fn(n, |_, _| rng.gen_range(-0.6..0.6)));
    }
    out.truncate(count);
    out
}

fn resolve_algebra(demo: &InversionDemo) -> Result<(String, TwoStepAlgebra), InputError> {
    let (label, alg) = match &demo.algebra {
        Some(src) => {
            let loaded = load(src)?;
            (loaded.label, TwoStepAlgebra::from_algebra(&loaded.file.algebra)?)
        }
        None => {
            let d = demo.d.unwrap_or(1);
            if d == 0 {
                return Err(InputError("--d must be positive".into()));
            }
            (format!("heisenberg-d{d}"), TwoStepAlgebra::from_algebra(&heisenberg(d, Field::C, (d, 0))?.algebra)?)
        }
    };
    let half = alg.half_dim()?;
    if let Some(d) = demo.d {
        if d != half {
            return Err(InputError(format!("--d {d} does not match dim v = {}", 2 * half)));
        }
    }
    if alg.center.len() != 1 {
        return Err(InputError(format!("inversion needs a one-dimensional center, found {}", alg.center.len())));
    }
    Ok((label, alg))
}

pub(crate) fn run(demo: &InversionDemo, tol: &Tolerances, seed: u64) -> Result<Output, InputError> {
    if demo.points == 0 || demo.functions == 0 || demo.quad_order == 0 {
        return Err(InputError("--points, --functions and --quad-order must be positive".into()));
    }
    if !(demo.zeta_max > 0.0) {
        return Err(InputError("--zeta-max must be positive".into()));
    }
    let (label, alg) = resolve_algebra(demo)?;
    let n = alg.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let functions = test_functions(n, demo.functions, &mut rng);
    let points = sample_points(n, demo.points, &mut rng);
    let opts = InversionOptions { zeta_max: demo.zeta_max, ..Default::default() };
    let rule = gauss_hermite(demo.quad_order);

    let mut report = Report::default();
    report.record(
        "inversion",
        &[
            ("algebra", label),
            ("dim", n.to_string()),
            ("d", alg.half_dim()?.to_string()),
            ("functions", demo.functions.to_string()),
            ("points", demo.points.to_string()),
            ("zeta_max", demo.zeta_max.to_string()),
            ("quad_order", demo.quad_order.to_string()),
            ("seed", seed.to_string()),
        ],
    );

    let mut rows = Table::new("sample", &["f", "point", "x", "f(x)", "recovered/kappa", "rel_error", "zeta_lo", "zeta_hi", "err_est"]).aligned();
    let mut kappas = Table::new("kappa", &["f", "kappa", "kappa_expected", "deviation", "max_rel_error", "max_imag"]).aligned();
    let mut chars = Table::new("character", &["f", "zeta", "closed_form", "quadrature", "rel_diff"]).aligned();
    let mut all_kappa = Vec::new();
    for (fi, f) in functions.iter().enumerate() {
        let r = match fourier_inversion(f, &alg, &points, &opts) {
            Ok(r) => r,
            Err(e @ nilkit_harmonics::HarmonicsError::NoConvergence { .. }) => {
                report.fail(format!("check=inversion f={fi} error=\"{e}\""));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        for (pi, (p, v)) in r.points.iter().zip(r.normalized()).enumerate() {
            let rel = (v - p.truth).abs() / p.truth.abs();
            let x: Vec<String> = p.x.iter().map(|c| format!("{c:.6}")).collect();
            rows.push(vec![
                fi.to_string(),
                pi.to_string(),
                x.join(";"),
                sci(p.truth),
                sci(v),
                format!("{rel:.3e}"),
                format!("{:.2}", p.zeta_range.0),
                format!("{:.2}", p.zeta_range.1),
                format!("{:.3e}", p.error_estimate),
            ]);
            report.assert(rel <= tol.inversion_rel, || format!("check=inversion f={fi} point={pi} rel_error={rel:.3e}"));
        }
        kappas.push(vec![
            fi.to_string(),
            sci(r.kappa),
            sci(r.kappa_expected),
            format!("{:.3e}", r.kappa_deviation),
            format!("{:.3e}", r.max_rel_error),
            format!("{:.3e}", r.max_imag),
        ]);
        all_kappa.push(r.kappa);

        for zeta in [0.5, 1.0, 2.0] {
            let a = character(f, &alg, &[zeta])?;
            let b = character_quadrature(f, &alg, &[zeta], &rule)?;
            let rel = (a - b).norm() / a.norm();
            chars.push(vec![fi.to_string(), zeta.to_string(), sci(a.re), sci(b.re), format!("{rel:.3e}")]);
            report.assert(rel <= tol.quadrature_rel, || format!("check=character f={fi} zeta={zeta} rel_diff={rel:.3e}"));
        }
    }
    report.table(rows);
    report.table(kappas);
    report.table(chars);
    if let (Some(lo), Some(hi)) = (
        all_kappa.iter().cloned().reduce(f64::min),
        all_kappa.iter().cloned().reduce(f64::max),
    ) {
        let spread = (hi - lo) / lo;
        report.record("kappa_constancy", &[("spread", format!("{spread:.3e}")), ("tolerance", format!("{:.1e}", tol.kappa_rel))]);
        report.assert(spread <= tol.kappa_rel, || format!("check=kappa_constancy spread={spread:.3e}"));
    }

    if let Some(path) = &demo.csv {
        std::fs::write(path, report.render(OutputFormat::Csv)).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    Ok(Output::Report(report))
}
