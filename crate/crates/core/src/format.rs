//! JSON algebra files.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis": ["X", "Y", "Z"],
//!   "center": ["Z"],
//!   "brackets": [{"left": "X", "right": "Y", "result": {"Z": "1"}}],
//!   "J": [["0", "-1"], ["1", "0"]],
//!   "derivations": [{"name": "u1", "matrix": [["0","-1","0"], ["1","0","0"], ["0","0","0"]]}]
//! }
//! ```
//!
//! `J` is indexed by the non-central labels in file order and derivation
//! matrices by all labels in file order. Every scalar is a `"p"` or `"p/q"`
//! string. Written files list the center first, so they re-read unchanged.

use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraBuilder, NilpotentLieAlgebra};
use crate::error::AlgebraError;
use crate::linalg::QMatrix;
use crate::rational::{format_rational, parse_rational, Q};
use crate::satake::{ComplexStructure, DerivationSet};

/// Contents of an algebra file.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub algebra: NilpotentLieAlgebra,
    pub j: Option<ComplexStructure>,
    pub derivations: Option<DerivationSet>,
}

fn err(ctx: &str, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::format(ctx, msg)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ctx: &str) -> Result<&'a Value, AlgebraError> {
    obj.get(key).ok_or_else(|| err(ctx, format!("missing field `{key}`")))
}

fn as_str<'a>(v: &'a Value, ctx: &str) -> Result<&'a str, AlgebraError> {
    v.as_str().ok_or_else(|| err(ctx, "expected a string"))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>, AlgebraError> {
    v.as_array().ok_or_else(|| err(ctx, "expected an array"))
}

fn rational(v: &Value, ctx: &str) -> Result<Q, AlgebraError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|m| err(ctx, m)),
        Value::Number(_) => Err(err(ctx, "rational literals must be \"p\" or \"p/q\" strings")),
        _ => Err(err(ctx, "expected a rational string")),
    }
}

fn labels(v: &Value, ctx: &str) -> Result<Vec<String>, AlgebraError> {
    as_array(v, ctx)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_str(x, &format!("{ctx}[{i}]")).map(str::to_string))
        .collect()
}

fn matrix(v: &Value, n: usize, ctx: &str) -> Result<QMatrix, AlgebraError> {
    let rows = as_array(v, ctx)?;
    if rows.len() != n {
        return Err(err(ctx, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut m = QMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        let rctx = format!("{ctx}[{i}]");
        let row = as_array(row, &rctx)?;
        if row.len() != n {
            return Err(err(&rctx, format!("expected {n} entries, found {}", row.len())));
        }
        for (j, x) in row.iter().enumerate() {
            m[(i, j)] = rational(x, &format!("{rctx}[{j}]"))?;
        }
    }
    Ok(m)
}

/// Parses an algebra file. Errors name the offending field path, or the
/// line and column for syntax errors.
pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile, AlgebraError> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| err(&format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| err("$", "expected an object"))?;

    let dim = field(obj, "dim", "$")?.as_u64().ok_or_else(|| err("dim", "expected a positive integer"))? as usize;
    let basis = labels(field(obj, "basis", "$")?, "basis")?;
    if basis.len() != dim {
        return Err(err("basis", format!("dim is {dim} but {} labels are given", basis.len())));
    }
    for (i, l) in basis.iter().enumerate() {
        if basis[..i].contains(l) {
            return Err(err(&format!("basis[{i}]"), format!("duplicate label {l:?}")));
        }
    }
    let center = labels(field(obj, "center", "$")?, "center")?;
    for (i, c) in center.iter().enumerate() {
        if !basis.contains(c) {
            return Err(err(&format!("center[{i}]"), format!("unknown label {c:?}")));
        }
    }

    let mut builder = AlgebraBuilder::new(&basis, &center);
    for (b, entry) in as_array(field(obj, "brackets", "$")?, "brackets")?.iter().enumerate() {
        let ctx = format!("brackets[{b}]");
        let e = entry.as_object().ok_or_else(|| err(&ctx, "expected an object"))?;
        let side = |key: &str| -> Result<String, AlgebraError> {
            let c = format!("{ctx}.{key}");
            let l = as_str(field(e, key, &ctx)?, &c)?;
            if basis.iter().any(|x| x == l) {
                Ok(l.to_string())
            } else {
                Err(err(&c, format!("unknown label {l:?}")))
            }
        };
        let (left, right) = (side("left")?, side("right")?);
        let result = field(e, "result", &ctx)?
            .as_object()
            .ok_or_else(|| err(&format!("{ctx}.result"), "expected an object of label: rational"))?;
        let mut terms = Vec::new();
        for (label, c) in result {
            let rctx = format!("{ctx}.result.{label}");
            if !basis.contains(label) {
                return Err(err(&rctx, format!("unknown label {label:?}")));
            }
            terms.push((label.clone(), rational(c, &rctx)?));
        }
        builder.push_bracket(&left, &right, terms);
    }
    let algebra = builder.build()?;

    let j = match obj.get("J") {
        None | Some(Value::Null) => None,
        Some(v) => Some(ComplexStructure::new(matrix(v, algebra.v_dim(), "J")?)),
    };

    // derivation matrices arrive in file order; permute into basis order
    let perm: Vec<usize> = basis.iter().map(|l| algebra.index_of(l).expect("label")).collect();
    let derivations = match obj.get("derivations") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let mut gens = Vec::new();
            for (d, entry) in as_array(v, "derivations")?.iter().enumerate() {
                let ctx = format!("derivations[{d}]");
                let e = entry.as_object().ok_or_else(|| err(&ctx, "expected an object"))?;
                let name = as_str(field(e, "name", &ctx)?, &format!("{ctx}.name"))?.to_string();
                let file_m = matrix(field(e, "matrix", &ctx)?, dim, &format!("{ctx}.matrix"))?;
                let mut m = QMatrix::zeros(dim, dim);
                for a in 0..dim {
                    for b in 0..dim {
                        m[(perm[a], perm[b])] = file_m[(a, b)].clone();
                    }
                }
                gens.push((name, m));
            }
            Some(DerivationSet::new(gens))
        }
    };
    Ok(AlgebraFile { algebra, j, derivations })
}

fn matrix_json(m: &QMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| Value::String(format_rational(&m[(i, j)]))).collect()))
            .collect(),
    )
}

/// Serializes in basis order (center first), pretty-printed.
pub fn to_json(file: &AlgebraFile) -> String {
    let alg = &file.algebra;
    let center: Vec<&str> = alg.center_indices.iter().map(|&i| alg.label(i)).collect();
    let brackets: Vec<Value> = alg
        .structure
        .iter()
        .filter(|(_, v)| v.values().any(|c| !num_traits::Zero::is_zero(c)))
        .map(|(&(i, j), v)| {
            let result: Map<String, Value> = v
                .iter()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(&k, c)| (alg.label(k).to_string(), Value::String(format_rational(c))))
                .collect();
            json!({"left": alg.label(i), "right": alg.label(j), "result": result})
        })
        .collect();
    let mut root = Map::new();
    root.insert("dim".into(), json!(alg.dim));
    root.insert("basis".into(), json!(alg.basis_labels));
    root.insert("center".into(), json!(center));
    root.insert("brackets".into(), Value::Array(brackets));
    if let Some(j) = &file.j {
        root.insert("J".into(), matrix_json(&j.j));
    }
    if let Some(ds) = &file.derivations {
        let list: Vec<Value> =
            ds.generators.iter().map(|(n, m)| json!({"name": n, "matrix": matrix_json(m)})).collect();
        root.insert("derivations".into(), Value::Array(list));
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("json");
    s.push('\n');
    s
}
