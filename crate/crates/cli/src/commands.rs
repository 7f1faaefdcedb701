//! The exact subcommands: check, pfaffian, satake, signature, catalog.

use std::path::Path;

use nilkit_core::catalog::{canonical_zeta, catalog_entries, resolve, verify_all, verify_table_row, Family};
use nilkit_core::pfaffian::dual_variable_names;
use nilkit_core::rational::format_rational;
use nilkit_core::{
    b_matrix_at, beta_matrix, check_a1, check_derivations, check_invariance, check_j, cohomology_degree, evaluate_p,
    pfaffian_polynomial, signature as inertia, to_json, AlgebraError, AlgebraFile, CheckFailure, CheckReport,
    CohomologyDegree, NilpotentLieAlgebra, Violation, Q,
};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Report, Table};
use crate::{load, AlgebraSource, InputError, Output};

fn yes(b: bool) -> String {
    b.to_string()
}

fn describe_violation(alg: &NilpotentLieAlgebra, v: &Violation) -> String {
    match v {
        Violation::Jacobi { i, j, k } => {
            format!("kind=jacobi triple=({},{},{})", alg.label(*i), alg.label(*j), alg.label(*k))
        }
        Violation::NonCentral { index, witness } => {
            format!("kind=non_central label={} witness={}", alg.label(*index), alg.label(*witness))
        }
        Violation::NotNilpotent { stable_dim } => format!("kind=not_nilpotent stable_dim={stable_dim}"),
    }
}

fn describe_failure(f: &CheckFailure) -> String {
    match f {
        CheckFailure::JSquare { column } => format!("kind=j_square column={column}"),
        CheckFailure::NotInvariant { generator } => format!("kind=not_invariant generator={generator}"),
        CheckFailure::A1 { eigenspace, left, right } => {
            format!("kind=a1 eigenspace={eigenspace} left={left} right={right}")
        }
        CheckFailure::Leibniz { generator, left, right } => {
            format!("kind=leibniz generator={generator} left={left} right={right}")
        }
        CheckFailure::MovesCenter { generator, index } => {
            format!("kind=moves_center generator={generator} index={index}")
        }
        CheckFailure::MovesComplement { generator, index } => {
            format!("kind=moves_complement generator={generator} index={index}")
        }
    }
}

fn push_check(report: &mut Report, table: &mut Table, r: &CheckReport) {
    let detail = r.failure.as_ref().map(describe_failure).unwrap_or_else(|| "-".into());
    table.push(vec![r.check.to_string(), yes(r.passed), detail.clone()]);
    report.assert(r.passed, || format!("check=\"{}\" {detail}", r.check));
}

/// Runs the structure checks that apply to `file` and appends them.
fn structure_checks(report: &mut Report, file: &AlgebraFile) -> Result<(), InputError> {
    let alg = &file.algebra;
    let mut t = Table::new("check", &["name", "passed", "failure"]);
    if let Some(j) = &file.j {
        push_check(report, &mut t, &check_j(alg, j)?);
        push_check(report, &mut t, &check_a1(alg, j)?);
    }
    if let Some(d) = &file.derivations {
        push_check(report, &mut t, &check_derivations(alg, d)?);
        if let Some(j) = &file.j {
            push_check(report, &mut t, &check_invariance(alg, j, d)?);
        }
    }
    if !t.rows.is_empty() {
        report.table(t);
    }
    Ok(())
}

pub(crate) fn check(src: &AlgebraSource) -> Result<Output, InputError> {
    let loaded = load(src)?;
    let alg = &loaded.file.algebra;
    let mut report = Report::default();
    report.record(
        "algebra",
        &[
            ("source", loaded.label.clone()),
            ("dim", alg.dim.to_string()),
            ("center_dim", alg.center_dim().to_string()),
            ("v_dim", alg.v_dim().to_string()),
        ],
    );
    let v = alg.validate()?;
    let lcs: Vec<String> = v.lower_central_dims.iter().map(|d| d.to_string()).collect();
    report.record(
        "validate",
        &[
            ("valid", yes(v.is_valid())),
            ("nilpotent", yes(v.nilpotent)),
            ("class", v.class.map_or("-".into(), |c| c.to_string())),
            ("two_step", yes(v.two_step)),
            ("lower_central", format!("[{}]", lcs.join(","))),
        ],
    );
    for viol in &v.violations {
        report.fail(format!("check=validate {}", describe_violation(alg, viol)));
    }
    if v.is_valid() {
        let c = alg.compute_center()?;
        report.record(
            "center",
            &[
                ("computed_dim", c.dim().to_string()),
                ("declared_dim", alg.center_dim().to_string()),
                ("declared_contained", yes(c.declared_contained)),
                ("declared_strictly_smaller", yes(c.declared_strictly_smaller)),
            ],
        );
        report.assert(c.declared_contained, || "check=center kind=declared_not_central".into());
        structure_checks(&mut report, &loaded.file)?;
    }
    Ok(Output::Report(report))
}

fn random_zeta(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    (0..n)
        .map(|_| {
            let num: i64 = rng.gen_range(-5..=5);
            let den: i64 = rng.gen_range(1..=5);
            Q::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

fn fmt_vec(v: &[Q]) -> String {
    format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(","))
}

pub(crate) fn pfaffian(src: &AlgebraSource, samples: usize, seed: u64) -> Result<Output, InputError> {
    let loaded = load(src)?;
    let alg = &loaded.file.algebra;
    let mut report = Report::default();
    let p = pfaffian_polynomial(alg);
    let names = dual_variable_names(alg);
    report.record(
        "pfaffian",
        &[
            ("source", loaded.label.clone()),
            ("v_dim", alg.v_dim().to_string()),
            ("P", p.render(&names)),
            ("degree", p.degree().map_or("-".into(), |d| d.to_string())),
            ("terms", p.num_terms().to_string()),
            ("square_integrable", yes(!p.is_zero())),
        ],
    );
    let mut cols: Vec<&str> = vec!["coefficient"];
    cols.extend(names.iter().map(String::as_str));
    let mut terms = Table::new("term", &cols);
    for (e, c) in p.sorted_terms() {
        let mut row = vec![format_rational(c)];
        row.extend(e.iter().map(|k| k.to_string()));
        terms.push(row);
    }
    report.table(terms);

    // P(ζ) ≠ 0 exactly when b_{λ_ζ} is nonsingular on v
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agree = 0;
    for _ in 0..samples {
        let zeta = random_zeta(&mut rng, alg.center_dim());
        let nonzero = !evaluate_p(alg, &p, &zeta)?.is_zero();
        let full = b_matrix_at(alg, &zeta)?.rank() == alg.v_dim();
        if nonzero == full {
            agree += 1;
        } else {
            report.fail(format!("check=nondegeneracy zeta={} p_nonzero={nonzero} b_full_rank={full}", fmt_vec(&zeta)));
        }
    }
    report.record("nondegeneracy", &[("samples", samples.to_string()), ("agree", agree.to_string()), ("seed", seed.to_string())]);
    Ok(Output::Report(report))
}

pub(crate) fn satake(src: &AlgebraSource) -> Result<Output, InputError> {
    let loaded = load(src)?;
    if loaded.file.j.is_none() {
        return Err(InputError(format!("{}: no J given", loaded.label)));
    }
    let mut report = Report::default();
    report.record("satake", &[("source", loaded.label.clone())]);
    structure_checks(&mut report, &loaded.file)?;
    Ok(Output::Report(report))
}

pub(crate) fn signature(src: &AlgebraSource, zeta: Option<&[Q]>) -> Result<Output, InputError> {
    let loaded = load(src)?;
    let alg = &loaded.file.algebra;
    let j = loaded.file.j.as_ref().ok_or_else(|| InputError(format!("{}: no J given", loaded.label)))?;
    let zeta = zeta.map(<[Q]>::to_vec).unwrap_or_else(|| canonical_zeta(alg));
    if zeta.len() != alg.center_dim() {
        return Err(InputError(format!("zeta has {} entries, center has dimension {}", zeta.len(), alg.center_dim())));
    }
    let mut report = Report::default();
    let b = match beta_matrix(alg, j, &zeta) {
        Ok(b) => b,
        Err(e @ AlgebraError::Incompatible { .. }) => {
            report.fail(format!("check=beta_symmetric zeta={} error=\"{e}\"", fmt_vec(&zeta)));
            return Ok(Output::Report(report));
        }
        Err(e) => return Err(e.into()),
    };
    let s = inertia(&b);
    let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    report.record(
        "signature",
        &[
            ("source", loaded.label.clone()),
            ("zeta", fmt_vec(&zeta)),
            ("inertia", format!("({},{},{})", s.n_plus, s.n_minus, s.n_zero)),
            ("k_l", format!("({},{})", opt(s.k), opt(s.l))),
            ("degree", opt(s.degree)),
            ("nondegenerate", yes(s.nondegenerate)),
        ],
    );
    let p = evaluate_p(alg, &pfaffian_polynomial(alg), &zeta)?;
    report.record("pfaffian_at_zeta", &[("value", format_rational(&p))]);
    report.assert(s.nondegenerate == !p.is_zero(), || {
        format!("check=nondegeneracy nondegenerate={} p={}", s.nondegenerate, format_rational(&p))
    });
    match cohomology_degree(alg, j, &zeta) {
        Ok(CohomologyDegree::Defined { degree, .. }) => report.record("cohomology", &[("degree", degree.to_string())]),
        Ok(CohomologyDegree::Undefined { n_zero, p_at_zeta }) => {
            report.record("cohomology", &[("degree", "undefined".into()), ("n_zero", n_zero.to_string()), ("p", p_at_zeta)])
        }
        Err(e) => report.fail(format!("check=cohomology error=\"{e}\"")),
    }
    Ok(Output::Report(report))
}

pub(crate) fn family_label(f: &Family) -> String {
    match f {
        Family::Heisenberg { group, r, s } => format!("heisenberg/{group:?}({r},{s})"),
        Family::Lambda2Center { r, s } => format!("lambda2-center({r},{s})"),
        Family::Quaternionic { r, s, circle } => {
            format!("quaternionic{}({r},{s})", if *circle { "/circle" } else { "" })
        }
        Family::SymmetricSquare { r, s } => format!("symmetric-square({r},{s})"),
    }
}

pub(crate) fn catalog_list() -> Output {
    let mut report = Report::default();
    let mut t = Table::new("entry", &["name", "family", "field", "expected", "z_dim", "ref"]);
    for e in catalog_entries() {
        t.push(vec![
            e.name.clone(),
            family_label(&e.family),
            e.field.letter().to_string(),
            format!("({},{})", e.expected_signature.0, e.expected_signature.1),
            e.expected_z_dim.to_string(),
            e.table_ref.clone(),
        ]);
    }
    report.table(t);
    Output::Report(report)
}

pub(crate) fn catalog_build(name: &str, out: Option<&Path>) -> Result<Output, InputError> {
    let entry = resolve(name)?;
    let inst = entry.build()?;
    let derivations = entry.derivations(&inst);
    let file = AlgebraFile { algebra: inst.algebra, j: Some(inst.j), derivations: Some(derivations) };
    let json = to_json(&file);
    match out {
        None => Ok(Output::Raw(json)),
        Some(path) => {
            std::fs::write(path, &json).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let mut report = Report::default();
            report.record(
                "built",
                &[("name", entry.name.clone()), ("path", path.display().to_string()), ("dim", file.algebra.dim.to_string())],
            );
            Ok(Output::Report(report))
        }
    }
}

pub(crate) fn catalog_verify(name: Option<&str>) -> Result<Output, InputError> {
    let verdicts = match name {
        Some(n) => vec![verify_table_row(&resolve(n)?)],
        None => verify_all(&catalog_entries()),
    };
    let mut report = Report::default();
    let mut t = Table::new("verdict", &["status", "name", "expected", "computed", "reversed", "z_dim", "ref", "error"]);
    let pair = |p: Option<(usize, usize)>| p.map_or("-".to_string(), |(a, b)| format!("({a},{b})"));
    let mut passed = 0;
    for v in &verdicts {
        t.push(vec![
            if v.passed() { "PASS" } else { "FAIL" }.into(),
            v.name.clone(),
            pair(Some(v.expected_signature)),
            pair(v.computed_signature),
            yes(v.reversed),
            format!("{}/{}", v.computed_z_dim, v.expected_z_dim),
            v.table_ref.clone(),
            v.error.clone().unwrap_or_else(|| "-".into()),
        ]);
        if v.passed() {
            passed += 1;
        } else {
            report.fail(format!("check=table_row {}", v.record()));
        }
    }
    report.table(t);
    report.record("summary", &[("rows", verdicts.len().to_string()), ("passed", passed.to_string())]);
    Ok(Output::Report(report))
}
