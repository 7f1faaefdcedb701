//! Acceptance run: one `PASS`/`FAIL` line per criterion, with timings.
//! Exits nonzero when any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{det_oracle, float_inertia, nilkit, rank_oracle, three_step};
use nalgebra::{DMatrix, DVector};
use nilkit_core::catalog::{canonical_zeta, catalog_entries, heisenberg, verify_table_row, Family, Field, HeisenbergGroup};
use nilkit_core::rational::q;
use nilkit_core::{
    b_matrix_at, b_matrix_symbolic, beta_matrix, check_a1, cohomology_degree, evaluate_p, gamma_hermitian,
    pfaffian, pfaffian_polynomial, signature, CheckFailure, RationalPolynomial, Q,
};
use nilkit_harmonics::schrodinger::WavePacket;
use nilkit_harmonics::{
    fourier_inversion, matrix_coefficient_degree, GaussianState, GaussianTestFunction, InversionOptions,
    SchrodingerModel, TwoStepAlgebra,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=5).into())
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| random_q(rng)).collect()
}

fn pfaffian_law() -> Outcome {
    for d in 1..=4 {
        let alg = heisenberg(d, Field::C, (d, 0)).map_err(|e| e.to_string())?.algebra;
        let m = b_matrix_symbolic(&alg);
        let p = pfaffian(&m);
        let zd = RationalPolynomial::variable(m.nvars(), alg.center_indices[0]).pow(d as u32);
        ensure(p == zd || p == zd.scale(&q(-1)), || format!("d={d}: P is not ±ζ^{d}"))?;
        ensure(&p * &p == det_oracle(&m.dense(), m.nvars()), || format!("d={d}: Pf² ≠ det"))?;
    }
    Ok("d=1..4 P=±ζ^d and Pf²=det".into())
}

fn nondegeneracy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let (mut regular, mut singular) = (0, 0);
    let entries = catalog_entries();
    for e in &entries {
        let alg = e.build().map_err(|err| err.to_string())?.algebra;
        let p = pfaffian_polynomial(&alg);
        for _ in 0..200 {
            let mut zeta = random_vec(&mut rng, alg.center_dim());
            // occasionally land on ζ = 0 so the singular side is exercised
            if rng.gen_bool(0.05) {
                zeta.iter_mut().for_each(|z| *z = Q::zero());
            }
            let b = b_matrix_at(&alg, &zeta).map_err(|err| err.to_string())?;
            let nonzero = !evaluate_p(&alg, &p, &zeta).map_err(|err| err.to_string())?.is_zero();
            let full = rank_oracle(&b) == alg.v_dim();
            ensure(nonzero == full, || format!("{}: P≠0 is {nonzero}, full rank is {full}", e.name))?;
            ensure(full == (b.rank() == alg.v_dim()), || format!("{}: rank oracle disagrees with rref", e.name))?;
            if nonzero {
                regular += 1;
            } else {
                singular += 1;
            }
        }
    }
    Ok(format!("{} entries x 200 zeta, regular={regular} singular={singular}", entries.len()))
}

fn signature_rows() -> Outcome {
    let rows: Vec<_> = catalog_entries()
        .into_iter()
        .filter(|e| (1..=5).any(|k| e.table_ref == format!("commutative-heisenberg row {k}")))
        .collect();
    let mut reversed = 0;
    for e in &rows {
        let v = verify_table_row(e);
        ensure(v.passed(), || v.record())?;
        reversed += usize::from(v.reversed);
        let inst = e.build().map_err(|err| err.to_string())?;
        let b = beta_matrix(&inst.algebra, &inst.j, &canonical_zeta(&inst.algebra)).map_err(|err| err.to_string())?;
        let (p, m, z) = float_inertia(&b);
        let exact = v.computed_signature.unwrap_or_default();
        ensure(z == 0 && (p, m) == exact, || format!("{}: float inertia ({p},{m},{z})", e.name))?;
    }
    for group in [HeisenbergGroup::SpecialUnitary, HeisenbergGroup::Unitary] {
        for n in 1..=5 {
            for r in 0..=n {
                let covered = rows.iter().any(|e| e.family == Family::Heisenberg { group, r, s: n - r });
                ensure(covered, || format!("{group:?} ({r},{}) missing", n - r))?;
            }
        }
    }
    Ok(format!("{} entries in rows 1-5, reversed={reversed}", rows.len()))
}

fn degree_rule() -> Outcome {
    let mut checked = 0;
    for e in catalog_entries() {
        let Family::Heisenberg { group: HeisenbergGroup::Unitary, r, s } = e.family else { continue };
        let inst = e.build().map_err(|err| err.to_string())?;
        for (zeta, expected) in [(1, s), (-1, r)] {
            let deg = cohomology_degree(&inst.algebra, &inst.j, &[q(zeta)]).map_err(|err| err.to_string())?;
            ensure(deg.degree() == Some(expected), || format!("{} zeta={zeta}: degree {:?}, want {expected}", e.name, deg.degree()))?;
        }
        checked += 1;
    }
    ensure(checked == 20, || format!("{checked} U(r,s) entries, want 20"))?;
    Ok(format!("{checked} U(r,s) entries, degree s at +1 and r at -1"))
}

fn satake_a1() -> Outcome {
    let entries = catalog_entries();
    for e in &entries {
        let inst = e.build().map_err(|err| err.to_string())?;
        let r = check_a1(&inst.algebra, &inst.j).map_err(|err| err.to_string())?;
        ensure(r.passed, || format!("{}: {:?}", e.name, r.failure))?;
    }
    let (alg, j) = three_step();
    let r = check_a1(&alg, &j).map_err(|err| err.to_string())?;
    match r.failure {
        Some(CheckFailure::A1 { eigenspace, left, right }) if !r.passed => Ok(format!(
            "{} entries pass; three-step counterexample fails at eigenspace={eigenspace} left={left} right={right}",
            entries.len()
        )),
        other => Err(format!("three-step counterexample not caught: {other:?}")),
    }
}

fn spd_gaussian(n: usize, rng: &mut ChaCha8Rng) -> GaussianTestFunction {
    let b = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-0.5..0.5));
    let a = &b * b.transpose() + DMatrix::identity(n, n) * 0.5;
    let c = DVector::from_fn(n, |_, _| rng.gen_range(-0.3..0.3));
    GaussianTestFunction::new(c, a, rng.gen_range(0.5..2.0)).expect("positive definite")
}

fn inversion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let opts = InversionOptions::default();
    let mut normalized = Vec::new();
    let (mut worst_err, mut worst_dev) = (0.0f64, 0.0f64);
    for d in [1, 2] {
        let alg = TwoStepAlgebra::from_algebra(&heisenberg(d, Field::C, (d, 0)).map_err(|e| e.to_string())?.algebra)
            .map_err(|e| e.to_string())?;
        let n = alg.dim;
        let mut functions = vec![GaussianTestFunction::standard(n)];
        functions.extend((0..2).map(|_| spd_gaussian(n, &mut rng)));
        let mut points = vec![DVector::zeros(n)];
        points.extend((0..4).map(|_| DVector::from_fn(n, |_, _| rng.gen_range(-0.6..0.6))));
        let mut kappas = Vec::new();
        for f in &functions {
            let r = fourier_inversion(f, &alg, &points, &opts).map_err(|e| e.to_string())?;
            for (p, v) in r.points.iter().zip(r.normalized()) {
                let rel = (v - p.truth).abs() / p.truth.abs();
                worst_err = worst_err.max(rel);
                ensure(rel <= 1e-6, || format!("dim {n}: rel error {rel:.3e} at {:?}", p.x.as_slice()))?;
            }
            worst_dev = worst_dev.max(r.kappa_deviation);
            kappas.push(r.kappa);
            normalized.push(r.kappa / r.kappa_expected);
        }
        let spread = spread(&kappas);
        ensure(spread <= 1e-5, || format!("dim {n}: kappa spread {spread:.3e}"))?;
    }
    let all = spread(&normalized);
    ensure(all <= 1e-5, || format!("kappa/(2pi)^dim spread across runs {all:.3e}"))?;
    Ok(format!(
        "max rel error {worst_err:.2e}, kappa spread {all:.2e}, |kappa-(2pi)^dim|/(2pi)^dim <= {worst_dev:.2e}"
    ))
}

fn spread(xs: &[f64]) -> f64 {
    let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (hi - lo) / lo.abs()
}

fn formal_degree() -> Outcome {
    let u = GaussianState::new(vec![WavePacket::normalized(0.8, 0.2, -0.3, 1)]);
    let v = GaussianState::ground(1);
    let (mut ratios, mut dev) = (Vec::new(), 0.0f64);
    for zeta in [0.5, 1.0, 2.0, 4.0] {
        let model = SchrodingerModel::new(1, zeta).map_err(|e| e.to_string())?;
        let r = matrix_coefficient_degree(&model, &u, &v).map_err(|e| e.to_string())?;
        ensure(r.tail_fraction < 1e-8, || format!("zeta={zeta}: tail {:.3e}", r.tail_fraction))?;
        ratios.push(r.degree / zeta);
        dev = dev.max((r.degree / r.expected_degree - 1.0).abs());
    }
    let s = spread(&ratios);
    ensure(s <= 1e-4, || format!("deg/|zeta| spread {s:.3e}: {ratios:?}"))?;
    Ok(format!("deg/|zeta| = {:.10}, spread {s:.2e}, |deg/(|zeta|/2pi) - 1| <= {dev:.2e}", ratios[0]))
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let entries = catalog_entries();
    let neg = |v: &[Q]| v.iter().map(|x| -x).collect::<Vec<_>>();
    for e in &entries {
        let inst = e.build().map_err(|err| err.to_string())?;
        let alg = &inst.algebra;
        let rep = alg.validate().map_err(|err| err.to_string())?;
        ensure(rep.is_valid() && rep.two_step, || format!("{}: validation {:?}", e.name, rep.violations))?;
        for _ in 0..10 {
            let mut zeta = vec![Q::zero(); alg.center_dim()];
            zeta[0] = random_q(&mut rng);
            let b = beta_matrix(alg, &inst.j, &zeta).map_err(|err| err.to_string())?;
            let (s1, s2) = (signature(&b), signature(&beta_matrix(alg, &inst.j, &neg(&zeta)).map_err(|err| err.to_string())?));
            ensure((s1.n_plus, s1.n_minus, s1.n_zero) == (s2.n_minus, s2.n_plus, s2.n_zero), || format!("{}: sign flip", e.name))?;
            let (x, y) = (random_vec(&mut rng, alg.v_dim()), random_vec(&mut rng, alg.v_dim()));
            let form = |a: &[Q], c: &[Q]| a.iter().zip(b.mul_vec(c)).fold(Q::zero(), |s, (p, t)| s + p * t);
            ensure(form(&inst.j.apply(&x), &inst.j.apply(&y)) == form(&x, &y), || format!("{}: beta not J-invariant", e.name))?;
            let g1 = gamma_hermitian(alg, &inst.j, &zeta, &x, &y).map_err(|err| err.to_string())?;
            let g2 = gamma_hermitian(alg, &inst.j, &zeta, &y, &x).map_err(|err| err.to_string())?;
            ensure(g1.conj() == g2, || format!("{}: gamma not Hermitian", e.name))?;
        }
    }
    let (three, _) = three_step();
    let rep = three.validate().map_err(|err| err.to_string())?;
    ensure(rep.is_valid() && !rep.two_step && rep.class == Some(3), || "three-step algebra misclassified".into())?;
    for args in [&["catalog", "verify", "--all"][..], &["inversion-demo", "--d", "2", "--seed", "4"]] {
        let (a, b) = (nilkit(args), nilkit(args));
        ensure(a.status.success() && a.stdout == b.stdout, || format!("nilkit {args:?} not deterministic"))?;
    }
    Ok(format!("{} entries: sign flip, J-invariance, gamma Hermitian, validation; CLI deterministic", entries.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 8] = [
        ("Pfaffian law on complex Heisenberg algebras", Some(Duration::from_secs(1)), pfaffian_law),
        ("P(zeta) != 0 iff b nonsingular", Some(Duration::from_secs(30)), nondegeneracy),
        ("signature column, commutative-heisenberg rows 1-5", Some(Duration::from_secs(10)), signature_rows),
        ("degree rule for U(r,s)", None, degree_rule),
        ("Satake A1 on catalog, counterexample caught", None, satake_a1),
        ("Fourier inversion on h3 and h5", Some(Duration::from_secs(120)), inversion),
        ("formal degree proportional to |zeta| on h3", Some(Duration::from_secs(60)), formal_degree),
        ("property suite and CLI determinism", Some(Duration::from_secs(300)), property_suite),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(outcome.is_err());
        println!("{tag} criterion {}: {name} [{elapsed:.2?}] {detail}", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
