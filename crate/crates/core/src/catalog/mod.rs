//! Concrete algebras with group actions from the classification of
//! weakly symmetric nilmanifolds of complex type, and verification of their
//! signature columns.
//!
//! Shipped rows are Heisenberg algebras over `C^{r,s}` for the classical
//! groups, `C^{r,s}` with the larger center `Λ²_R ⊕ Im C`, the quaternionic
//! Heisenberg algebra under `Sp(r,s)`, and `S²_C(C^{r,s})` under `U(r,s)`.

pub mod builders;
pub mod groups;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::NilpotentLieAlgebra;
use crate::error::AlgebraError;
use crate::linalg::QMatrix;
use crate::rational::{q, Q};
use crate::satake::{ComplexStructure, DerivationSet};
use crate::signature::{beta_matrix, signature};

pub use builders::{
    free_twostep_with_lambda2_center, heisenberg, symmetric_square_heisenberg, unit_multiplication, unit_product,
    Field, HeisenbergData,
};
pub use groups::ClassicalAlgebra;

use groups::{exterior_square_action, scalar_i, symmetric_square_action, unitary_basis, form_signs};

/// Group acting on a Heisenberg algebra over `C^{r,s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HeisenbergGroup {
    /// `SU(r,s)`.
    SpecialUnitary,
    /// `U(r,s)`.
    Unitary,
    /// `Sp(k,ℓ)` on `C^{2k,2ℓ}`.
    Symplectic,
    /// `U(1)·Sp(k,ℓ)` on `C^{2k,2ℓ}`.
    CircleSymplectic,
    /// `U(1)·Sp(m;R)` on `C^{m,m}`.
    CircleRealSymplectic,
    /// `SO(2)·SO(r,s)` on `R^{2×(r,s)} = C^{r,s}`.
    CircleOrthogonal,
    /// `U(1)·SO*(2m)` on `C^{m,m}`.
    CircleOrthogonalStar,
}

impl HeisenbergGroup {
    fn algebra(self) -> ClassicalAlgebra {
        match self {
            Self::SpecialUnitary => ClassicalAlgebra::SpecialUnitary,
            Self::Unitary => ClassicalAlgebra::Unitary,
            Self::Symplectic | Self::CircleSymplectic => ClassicalAlgebra::CompactSymplectic,
            Self::CircleRealSymplectic => ClassicalAlgebra::RealSymplectic,
            Self::CircleOrthogonal => ClassicalAlgebra::Orthogonal,
            Self::CircleOrthogonalStar => ClassicalAlgebra::OrthogonalStar,
        }
    }

    /// Whether the group has an extra central circle factor beyond its
    /// semisimple-or-unitary part.
    fn extra_circle(self) -> bool {
        matches!(
            self,
            Self::CircleSymplectic | Self::CircleRealSymplectic | Self::CircleOrthogonal | Self::CircleOrthogonalStar
        )
    }

    fn has_circle(self) -> bool {
        self.extra_circle() || self == Self::Unitary
    }
}

/// Which construction an entry instantiates. `(r, s)` is always the
/// signature of the Hermitian form on `F^{r+s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Heisenberg { group: HeisenbergGroup, r: usize, s: usize },
    Lambda2Center { r: usize, s: usize },
    Quaternionic { r: usize, s: usize, circle: bool },
    SymmetricSquare { r: usize, s: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub family: Family,
    pub field: Field,
    pub expected_signature: (usize, usize),
    pub expected_z_dim: usize,
    pub table_ref: String,
}

/// An instantiated entry.
#[derive(Clone, Debug)]
pub struct Instance {
    pub algebra: NilpotentLieAlgebra,
    pub j: ComplexStructure,
    pub v_labels: Vec<String>,
    pub z_labels: Vec<String>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Instance, AlgebraError> {
        let data = match self.family {
            Family::Heisenberg { r, s, .. } => heisenberg(r + s, Field::C, (r, s))?,
            Family::Lambda2Center { r, s } => free_twostep_with_lambda2_center(r, s)?,
            Family::Quaternionic { r, s, .. } => heisenberg(r + s, Field::H, (r, s))?,
            Family::SymmetricSquare { r, s } => symmetric_square_heisenberg(r, s)?,
        };
        let j = data.j.expect("catalog fields contain C");
        Ok(Instance { algebra: data.algebra, j, v_labels: data.v_labels, z_labels: data.z_labels })
    }

    /// Generators of the group's Lie algebra acting on the full basis.
    pub fn derivations(&self, inst: &Instance) -> DerivationSet {
        let mut gens: Vec<(String, QMatrix)> = match self.family {
            Family::Heisenberg { group, r, s } => group
                .algebra()
                .basis(r, s)
                .into_iter()
                .map(|(name, x)| (name, embed(inst, &x.realify(), None)))
                .collect(),
            Family::Lambda2Center { r, s } => unitary_basis(&form_signs(r, s))
                .into_iter()
                .map(|(name, x)| {
                    let real = x.realify();
                    let ext = lambda2_center_action(&real);
                    (name, embed(inst, &real, Some(&ext)))
                })
                .collect(),
            Family::Quaternionic { r, s, .. } => quaternionic_symplectic_basis(r, s)
                .into_iter()
                .map(|(name, x)| (name, embed(inst, &x, None)))
                .collect(),
            Family::SymmetricSquare { r, s } => unitary_basis(&form_signs(r, s))
                .into_iter()
                .map(|(name, x)| (name, embed(inst, &symmetric_square_action(&x).realify(), None)))
                .collect(),
        };
        let extra = match self.family {
            Family::Heisenberg { group, .. } => group.extra_circle(),
            Family::Quaternionic { circle, .. } => circle,
            _ => false,
        };
        if extra {
            gens.push(("u1".into(), self.circle_generator(inst).expect("circle factor")));
        }
        DerivationSet::new(gens)
    }

    /// Generator of the central circle of the acting group, when it has one.
    pub fn circle_generator(&self, inst: &Instance) -> Option<QMatrix> {
        match self.family {
            Family::Heisenberg { group, r, s } if group.has_circle() => {
                Some(embed(inst, &scalar_i(r + s).realify(), None))
            }
            Family::Heisenberg { .. } => None,
            Family::Lambda2Center { r, s } => {
                let real = scalar_i(r + s).realify();
                Some(embed(inst, &real, Some(&lambda2_center_action(&real))))
            }
            Family::Quaternionic { r, s, circle } => circle.then(|| {
                let n = r + s;
                let ri = unit_multiplication(Field::H, 1, false);
                let mut v = QMatrix::zeros(4 * n, 4 * n);
                for p in 0..n {
                    put_block(&mut v, p, p, &ri);
                }
                embed(inst, &v, Some(&imaginary_conjugation_by_i()))
            }),
            Family::SymmetricSquare { r, s } => {
                Some(embed(inst, &symmetric_square_action(&scalar_i(r + s)).realify(), None))
            }
        }
    }
}

/// Center action of `x ↦ x e` on `Λ²_R ⊕ Im C`: zero on `Z`, induced on `Λ²`.
fn lambda2_center_action(real: &QMatrix) -> QMatrix {
    let ext = exterior_square_action(real);
    let m = ext.nrows() + 1;
    let mut out = QMatrix::zeros(m, m);
    for a in 0..ext.nrows() {
        for b in 0..ext.ncols() {
            out[(a + 1, b + 1)] = ext[(a, b)].clone();
        }
    }
    out
}

/// `z ↦ z i - i z` on `Im H` with basis `i, j, k`.
fn imaginary_conjugation_by_i() -> QMatrix {
    let r = unit_multiplication(Field::H, 1, false);
    let l = unit_multiplication(Field::H, 1, true);
    let full = r.sub(&l);
    full.submatrix(&[1, 2, 3], &[1, 2, 3])
}

fn put_block(m: &mut QMatrix, p: usize, q: usize, block: &QMatrix) {
    let b = block.nrows();
    for a in 0..b {
        for c in 0..b {
            m[(p * b + a, q * b + c)] = block[(a, c)].clone();
        }
    }
}

/// `sp(r,s)` as left multiplication by `X = H A` on `H^{r,s}` for
/// quaternionic anti-Hermitian `A`, realified on `(1, i, j, k)` quadruples.
pub fn quaternionic_symplectic_basis(r: usize, s: usize) -> Vec<(String, QMatrix)> {
    let n = r + s;
    let signs = form_signs(r, s);
    let units = ["1", "i", "j", "k"];
    let mut out = Vec::new();
    let left = |c: usize| unit_multiplication(Field::H, c, true);
    for p in 0..n {
        for c in 1..4 {
            let mut m = QMatrix::zeros(4 * n, 4 * n);
            put_block(&mut m, p, p, &left(c).scale(&signs[p]));
            out.push((format!("{}E{}{}", units[c], p + 1, p + 1), m));
        }
    }
    for p in 0..n {
        for qq in p + 1..n {
            for c in 0..4 {
                // A = e_c E_pq - conj(e_c) E_qp
                let conj = if c == 0 { q(1) } else { q(-1) };
                let mut m = QMatrix::zeros(4 * n, 4 * n);
                put_block(&mut m, p, qq, &left(c).scale(&signs[p]));
                put_block(&mut m, qq, p, &left(c).scale(&(-conj * &signs[qq])));
                out.push((format!("{}(E{}{})", units[c], p + 1, qq + 1), m));
            }
        }
    }
    out
}

/// Places a `v`-block (ordered as `inst.v_labels`) and optionally a
/// `z`-block (ordered as `inst.z_labels`) into a full-basis matrix.
fn embed(inst: &Instance, v: &QMatrix, z: Option<&QMatrix>) -> QMatrix {
    let alg = &inst.algebra;
    let mut out = QMatrix::zeros(alg.dim, alg.dim);
    let mut place = |labels: &[String], block: &QMatrix| {
        let idx: Vec<usize> = labels.iter().map(|l| alg.index_of(l).expect("builder label")).collect();
        for (a, &i) in idx.iter().enumerate() {
            for (b, &k) in idx.iter().enumerate() {
                out[(i, k)] = block[(a, b)].clone();
            }
        }
    };
    place(&inst.v_labels, v);
    if let Some(z) = z {
        place(&inst.z_labels, z);
    }
    out
}

/// `u(r,s)` acting on the Heisenberg algebra over `C^{r,s}`, zero on the
/// center; one generator per element of the standard anti-Hermitian basis.
pub fn u_rs_derivations(r: usize, s: usize) -> Result<DerivationSet, AlgebraError> {
    let entry = heisenberg_entry(HeisenbergGroup::Unitary, r, s, format!("heis-C-{r}-{s}"));
    let inst = entry.build()?;
    Ok(entry.derivations(&inst))
}

fn heisenberg_entry(group: HeisenbergGroup, r: usize, s: usize, name: String) -> CatalogEntry {
    use HeisenbergGroup::*;
    let row = match group {
        SpecialUnitary => "1",
        Unitary => "2",
        Symplectic => "3",
        CircleSymplectic | CircleRealSymplectic => "4",
        CircleOrthogonal | CircleOrthogonalStar => "5",
    };
    CatalogEntry {
        name,
        family: Family::Heisenberg { group, r, s },
        field: Field::C,
        expected_signature: (2 * r, 2 * s),
        expected_z_dim: 1,
        table_ref: format!("commutative-heisenberg row {row}"),
    }
}

/// Every shipped entry, in a fixed order.
///
/// Table parameters are written as the table writes them: `(k, ℓ)` for the
/// symplectic rows gives `C^{2k,2ℓ}` with expected signature `(4k, 4ℓ)`, and
/// so on. Rows over `C^{r,s}` cover every signature with `1 ≤ r + s ≤ 5`.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    use HeisenbergGroup::*;
    let mut out = Vec::new();
    let pairs = |lo: usize, hi: usize| (lo..=hi).flat_map(|n| (0..=n).rev().map(move |r| (r, n - r)));
    for (r, s) in pairs(1, 5) {
        out.push(heisenberg_entry(SpecialUnitary, r, s, format!("hc-su-{r}-{s}")));
    }
    for (r, s) in pairs(1, 5) {
        out.push(heisenberg_entry(Unitary, r, s, format!("hc-u-{r}-{s}")));
    }
    for (k, l) in pairs(1, 2) {
        out.push(heisenberg_entry(Symplectic, 2 * k, 2 * l, format!("hc-sp-{k}-{l}")));
    }
    for (k, l) in pairs(1, 2) {
        out.push(heisenberg_entry(CircleSymplectic, 2 * k, 2 * l, format!("hc-u1sp-{k}-{l}")));
    }
    for m in 1..=2 {
        out.push(heisenberg_entry(CircleRealSymplectic, m, m, format!("hc-u1spR-{m}")));
    }
    for (r, s) in pairs(2, 5) {
        out.push(heisenberg_entry(CircleOrthogonal, r, s, format!("hc-so2so-{r}-{s}")));
    }
    for n in [2, 4] {
        out.push(heisenberg_entry(CircleOrthogonalStar, n / 2, n / 2, format!("hc-u1sostar-{n}")));
    }
    for (r, s) in pairs(1, 3) {
        out.push(lambda2_entry(r, s, format!("mi-u-lambda2-{r}-{s}")));
    }
    for circle in [false, true] {
        for (r, s) in pairs(1, 2) {
            let prefix = if circle { "mi-u1sp-quat" } else { "mi-sp-quat" };
            out.push(quaternionic_entry(r, s, circle, format!("{prefix}-{r}-{s}")));
        }
    }
    for (r, s) in pairs(1, 3) {
        out.push(CatalogEntry {
            name: format!("mi-u-sym2-{r}-{s}"),
            family: Family::SymmetricSquare { r, s },
            field: Field::C,
            expected_signature: (r * (r + 1) + s * (s + 1), 2 * r * s),
            expected_z_dim: 1,
            table_ref: "maximal-irreducible row 10".into(),
        });
    }
    out
}

fn lambda2_entry(r: usize, s: usize, name: String) -> CatalogEntry {
    let n = r + s;
    CatalogEntry {
        name,
        family: Family::Lambda2Center { r, s },
        field: Field::C,
        expected_signature: (2 * r, 2 * s),
        expected_z_dim: n * (2 * n - 1) + 1,
        table_ref: "maximal-irreducible row 5".into(),
    }
}

fn quaternionic_entry(r: usize, s: usize, circle: bool, name: String) -> CatalogEntry {
    CatalogEntry {
        name,
        family: Family::Quaternionic { r, s, circle },
        field: Field::H,
        expected_signature: (4 * r, 4 * s),
        expected_z_dim: 3,
        table_ref: "maximal-irreducible row 9 (Im H core)".into(),
    }
}

/// Looks up a shipped entry, or one of the parameterized aliases
/// `heis-C-<r>-<s>`, `heis-H-<r>-<s>` and `free2-<r>-<s>`.
pub fn resolve(name: &str) -> Result<CatalogEntry, AlgebraError> {
    if let Some(e) = catalog_entries().into_iter().find(|e| e.name == name) {
        return Ok(e);
    }
    let unknown = || AlgebraError::UnknownLabel(format!("catalog entry {name:?}"));
    let parts: Vec<&str> = name.split('-').collect();
    let rs = |a: &str, b: &str| -> Option<(usize, usize)> {
        let (r, s) = (a.parse::<usize>().ok()?, b.parse::<usize>().ok()?);
        (r + s >= 1 && r + s <= 16).then_some((r, s))
    };
    match parts.as_slice() {
        ["heis", f, a, b] => {
            let (r, s) = rs(a, b).ok_or_else(unknown)?;
            match Field::parse(f) {
                Some(Field::C) => Ok(heisenberg_entry(HeisenbergGroup::Unitary, r, s, name.to_string())),
                Some(Field::H) => Ok(quaternionic_entry(r, s, true, name.to_string())),
                _ => Err(unknown()),
            }
        }
        ["free2", a, b] => {
            let (r, s) = rs(a, b).ok_or_else(unknown)?;
            Ok(lambda2_entry(r, s, name.to_string()))
        }
        _ => Err(unknown()),
    }
}

/// Outcome of checking one entry against its table cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub table_ref: String,
    pub expected_signature: (usize, usize),
    pub computed_signature: Option<(usize, usize)>,
    pub n_zero: usize,
    /// The computed pair matched only after swapping `(k, ℓ)` and `(ℓ, k)`.
    pub reversed: bool,
    pub expected_z_dim: usize,
    pub computed_z_dim: usize,
    pub declared_z_dim: usize,
    pub error: Option<String>,
}

impl Verdict {
    pub fn signature_matches(&self) -> bool {
        self.computed_signature.map_or(false, |c| {
            self.n_zero == 0 && (c == self.expected_signature || (c.1, c.0) == self.expected_signature)
        })
    }

    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.signature_matches()
            && self.computed_z_dim == self.expected_z_dim
            && self.declared_z_dim == self.expected_z_dim
    }

    pub fn record(&self) -> String {
        let fmt = |p: Option<(usize, usize)>| p.map_or("-".to_string(), |(a, b)| format!("({a},{b})"));
        format!(
            "{} {} expected={} computed={} reversed={} z_dim={}/{} ref=\"{}\"{}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            fmt(Some(self.expected_signature)),
            fmt(self.computed_signature),
            self.reversed,
            self.computed_z_dim,
            self.expected_z_dim,
            self.table_ref,
            self.error.as_ref().map(|e| format!(" error=\"{e}\"")).unwrap_or_default(),
        )
    }
}

/// Canonical central parameter `ζ = (1, 0, …, 0)`.
pub fn canonical_zeta(alg: &NilpotentLieAlgebra) -> Vec<Q> {
    (0..alg.center_dim()).map(|i| if i == 0 { q(1) } else { q(0) }).collect()
}

pub fn verify_table_row(entry: &CatalogEntry) -> Verdict {
    let mut v = Verdict {
        name: entry.name.clone(),
        table_ref: entry.table_ref.clone(),
        expected_signature: entry.expected_signature,
        computed_signature: None,
        n_zero: 0,
        reversed: false,
        expected_z_dim: entry.expected_z_dim,
        computed_z_dim: 0,
        declared_z_dim: 0,
        error: None,
    };
    let result = (|| -> Result<(), AlgebraError> {
        let inst = entry.build()?;
        v.declared_z_dim = inst.algebra.center_dim();
        v.computed_z_dim = inst.algebra.compute_center()?.dim();
        let b = beta_matrix(&inst.algebra, &inst.j, &canonical_zeta(&inst.algebra))?;
        let sig = signature(&b);
        v.computed_signature = Some((sig.n_plus, sig.n_minus));
        v.n_zero = sig.n_zero;
        v.reversed = (sig.n_plus, sig.n_minus) != entry.expected_signature
            && (sig.n_minus, sig.n_plus) == entry.expected_signature;
        Ok(())
    })();
    if let Err(e) = result {
        v.error = Some(e.to_string());
    }
    v
}

/// Verifies every entry in parallel; results keep the input order.
pub fn verify_all(entries: &[CatalogEntry]) -> Vec<Verdict> {
    entries.par_iter().map(verify_table_row).collect()
}
