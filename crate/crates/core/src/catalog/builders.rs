//! Heisenberg-type algebras `Im F + F^n` and the two larger-center variants.

use num_traits::Zero;

use crate::algebra::{AlgebraBuilder, NilpotentLieAlgebra};
use crate::error::AlgebraError;
use crate::linalg::QMatrix;
use crate::rational::{q, Q};
use crate::satake::ComplexStructure;

use super::groups::{form_signs, symmetric_pairs, symmetric_square_weights};

/// Base division algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Field {
    R,
    C,
    H,
}

impl Field {
    pub fn real_dim(self) -> usize {
        match self {
            Field::R => 1,
            Field::C => 2,
            Field::H => 4,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "R" => Some(Field::R),
            "C" => Some(Field::C),
            "H" => Some(Field::H),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Field::R => 'R',
            Field::C => 'C',
            Field::H => 'H',
        }
    }
}

const UNIT_NAMES: [&str; 4] = ["r", "i", "j", "k"];

/// Product of quaternion units `e_a e_b = sign · e_c`, units ordered `1, i, j, k`.
pub fn unit_product(a: usize, b: usize) -> (i64, usize) {
    const TABLE: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    TABLE[a][b]
}

fn conj_sign(a: usize) -> i64 {
    if a == 0 {
        1
    } else {
        -1
    }
}

/// Matrix of `x ↦ e_c x` (`left = true`) or `x ↦ x e_c` on the real basis
/// of `F`, which must be closed under the unit (`c < field.real_dim()`).
pub fn unit_multiplication(field: Field, c: usize, left: bool) -> QMatrix {
    let m = field.real_dim();
    assert!(c < m);
    let mut out = QMatrix::zeros(m, m);
    for a in 0..m {
        let (s, idx) = if left { unit_product(c, a) } else { unit_product(a, c) };
        out[(idx, a)] = q(s);
    }
    out
}

/// A built algebra with the labels of its `F^n` coordinates in realified
/// order and, when `F ⊇ C`, the complex structure given by right
/// multiplication by `i`.
#[derive(Clone, Debug)]
pub struct HeisenbergData {
    pub algebra: NilpotentLieAlgebra,
    pub v_labels: Vec<String>,
    pub z_labels: Vec<String>,
    pub j: Option<ComplexStructure>,
}

fn center_labels(field: Field) -> Vec<String> {
    match field {
        Field::R => vec![],
        Field::C => vec!["Z".into()],
        Field::H => vec!["Zi".into(), "Zj".into(), "Zk".into()],
    }
}

fn coordinate_labels(field: Field, names: &[String]) -> Vec<String> {
    names
        .iter()
        .flat_map(|n| match field {
            Field::R => vec![format!("x{n}")],
            Field::C => vec![format!("x{n}"), format!("y{n}")],
            Field::H => UNIT_NAMES.iter().map(|u| format!("h{n}{u}")).collect(),
        })
        .collect()
}

/// Right multiplication by `i` on `F^n`, realified.
fn right_i(field: Field, n: usize) -> Option<ComplexStructure> {
    if field == Field::R {
        return None;
    }
    let block = unit_multiplication(field, 1, false);
    let m = field.real_dim();
    let mut j = QMatrix::zeros(n * m, n * m);
    for p in 0..n {
        for a in 0..m {
            for b in 0..m {
                j[(p * m + a, p * m + b)] = block[(a, b)].clone();
            }
        }
    }
    Some(ComplexStructure::new(j))
}

/// `Im F + F^n` with bracket `Im Σ w_p conj(u_p) v_p` for a diagonal
/// Hermitian form with nonzero rational weights `w_p`.
///
/// Coordinate `p` is named by `names[p]`.
pub fn weighted_heisenberg(field: Field, weights: &[Q], names: &[String]) -> Result<HeisenbergData, AlgebraError> {
    if weights.iter().any(Zero::is_zero) {
        return Err(AlgebraError::Precondition("Hermitian form weights must be nonzero".into()));
    }
    assert_eq!(weights.len(), names.len());
    let m = field.real_dim();
    let z_labels = center_labels(field);
    let v_labels = coordinate_labels(field, names);
    let labels: Vec<String> = z_labels.iter().chain(&v_labels).cloned().collect();
    let mut builder = AlgebraBuilder::new(&labels, &z_labels);
    for (p, w) in weights.iter().enumerate() {
        for a in 0..m {
            for b in a + 1..m {
                let (s, idx) = unit_product(a, b);
                if idx == 0 {
                    continue;
                }
                let c = q(conj_sign(a) * s) * w;
                builder.push_bracket(&v_labels[p * m + a], &v_labels[p * m + b], vec![(z_labels[idx - 1].clone(), c)]);
            }
        }
    }
    let algebra = builder.build()?;
    Ok(HeisenbergData { algebra, j: right_i(field, names.len()), v_labels, z_labels })
}

/// `𝔥_{n;F}`: `Im F + F^n` with the Hermitian form of signature `(r, s)`.
pub fn heisenberg(n: usize, field: Field, (r, s): (usize, usize)) -> Result<HeisenbergData, AlgebraError> {
    if r + s != n {
        return Err(AlgebraError::Precondition(format!("metric signature ({r},{s}) does not add up to n = {n}")));
    }
    if n == 0 {
        return Err(AlgebraError::Precondition("n must be positive".into()));
    }
    let names: Vec<String> = (1..=n).map(|p| p.to_string()).collect();
    weighted_heisenberg(field, &form_signs(r, s), &names)
}

/// `C^{r,s}` with center `Λ²_R(C^{r,s}) ⊕ Im C` and bracket
/// `[u, v] = (u ∧ v, Im⟨u, v⟩)`.
///
/// The `Im C` coordinate `Z` comes first, then `W_a_b` for `a < b` over the
/// realified coordinates.
pub fn free_twostep_with_lambda2_center(r: usize, s: usize) -> Result<HeisenbergData, AlgebraError> {
    let base = heisenberg(r + s, Field::C, (r, s))?;
    let v = &base.v_labels;
    let mut z_labels = base.z_labels.clone();
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            z_labels.push(format!("W_{}_{}", v[a], v[b]));
        }
    }
    let labels: Vec<String> = z_labels.iter().chain(v).cloned().collect();
    let mut builder = AlgebraBuilder::new(&labels, &z_labels);
    let mut w = 1;
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            let ia = base.algebra.index_of(&v[a]).unwrap();
            let ib = base.algebra.index_of(&v[b]).unwrap();
            let mut result: Vec<(String, Q)> = base
                .algebra
                .bracket_basis(ia, ib)
                .into_iter()
                .map(|(k, c)| (base.algebra.label(k).to_string(), c))
                .collect();
            result.push((z_labels[w].clone(), q(1)));
            w += 1;
            builder.push_bracket(&v[a], &v[b], result);
        }
    }
    Ok(HeisenbergData { algebra: builder.build()?, v_labels: base.v_labels, z_labels, j: base.j })
}

/// Heisenberg algebra on `S²_C(C^{r,s})` with the Hermitian form induced
/// from the tensor square, in the basis `e_p ⊗ e_p`, `e_p ⊗ e_q + e_q ⊗ e_p`.
pub fn symmetric_square_heisenberg(r: usize, s: usize) -> Result<HeisenbergData, AlgebraError> {
    if r + s == 0 {
        return Err(AlgebraError::Precondition("r + s must be positive".into()));
    }
    let weights = symmetric_square_weights(&form_signs(r, s));
    let names: Vec<String> = symmetric_pairs(r + s).into_iter().map(|(p, q)| format!("{}_{}", p + 1, q + 1)).collect();
    weighted_heisenberg(Field::C, &weights, &names)
}
