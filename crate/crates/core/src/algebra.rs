//! Nilpotent Lie algebras given by exact structure constants, with a declared
//! splitting `n = z + v` into the center and a complement.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::AlgebraError;
use crate::linalg::{span_basis, span_contains, span_rank, QMatrix};
use crate::rational::Q;

/// Sparse vector of structure constants: basis index to coefficient.
pub type SparseVec = BTreeMap<usize, Q>;

/// A finite-dimensional real Lie algebra with rational structure constants.
///
/// Only brackets `[e_i, e_j]` with `i < j` are stored; the rest follow from
/// antisymmetry. `center_indices` and `v_indices` declare the splitting used by
/// every downstream computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentLieAlgebra {
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub structure: BTreeMap<(usize, usize), SparseVec>,
    pub center_indices: Vec<usize>,
    pub v_indices: Vec<usize>,
}

/// A linear functional on the algebra, in dual-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub coeffs: Vec<Q>,
}

impl Functional {
    pub fn apply(&self, x: &[Q]) -> Q {
        self.coeffs
            .iter()
            .zip(x)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Jacobi identity fails on the basis triple.
    Jacobi { i: usize, j: usize, k: usize },
    /// A declared center vector brackets nontrivially with `witness`.
    NonCentral { index: usize, witness: usize },
    /// The lower central series stabilizes at a nonzero subspace.
    NotNilpotent { stable_dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub nilpotent: bool,
    /// Nilpotency class (1 for abelian); `None` when not nilpotent.
    pub class: Option<usize>,
    pub two_step: bool,
    /// Dimensions of `C^1 = n, C^2 = [n,n], ...` down to the first zero or repeat.
    pub lower_central_dims: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exact center of an algebra, compared with the declared one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Center {
    /// Row-reduced basis vectors of `{x : [x, n] = 0}`.
    pub basis: Vec<Vec<Q>>,
    /// The declared center lies inside the computed one.
    pub declared_contained: bool,
    /// The declared center is a proper subspace of the true center.
    pub declared_strictly_smaller: bool,
}

impl Center {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

impl NilpotentLieAlgebra {
    /// Checks the structural well-formedness that every other operation assumes.
    pub fn check_structure(&self) -> Result<(), AlgebraError> {
        if self.basis_labels.len() != self.dim {
            return Err(AlgebraError::Malformed(format!(
                "dim is {} but {} basis labels were given",
                self.dim,
                self.basis_labels.len()
            )));
        }
        let labels: BTreeSet<&str> = self.basis_labels.iter().map(String::as_str).collect();
        if labels.len() != self.dim {
            return Err(AlgebraError::Malformed("duplicate basis labels".into()));
        }
        for (&(i, j), v) in &self.structure {
            if i >= j || j >= self.dim {
                return Err(AlgebraError::Malformed(format!(
                    "structure key ({i}, {j}) must satisfy i < j < dim = {}",
                    self.dim
                )));
            }
            if let Some((&k, _)) = v.iter().find(|(&k, _)| k >= self.dim) {
                return Err(AlgebraError::Malformed(format!(
                    "bracket ({i}, {j}) has component index {k} outside dim = {}",
                    self.dim
                )));
            }
        }
        let mut seen = vec![false; self.dim];
        for &i in self.center_indices.iter().chain(&self.v_indices) {
            if i >= self.dim || seen[i] {
                return Err(AlgebraError::Malformed(format!(
                    "center/v index sets must partition 0..{}; index {i} is out of range or repeated",
                    self.dim
                )));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(AlgebraError::Malformed(
                "center and v index sets do not cover the basis".into(),
            ));
        }
        Ok(())
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis_labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }

    pub fn center_dim(&self) -> usize {
        self.center_indices.len()
    }

    pub fn v_dim(&self) -> usize {
        self.v_indices.len()
    }

    /// `[e_i, e_j]` as a sparse vector (empty when zero).
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => SparseVec::new(),
            Less => self.structure.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .structure
                .get(&(j, i))
                .map(|v| v.iter().map(|(&k, c)| (k, -c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>, AlgebraError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(AlgebraError::LengthMismatch { expected: self.dim, found: v.len() });
            }
        }
        let mut out = vec![Q::zero(); self.dim];
        for (&(i, j), v) in &self.structure {
            // x_i y_j - x_j y_i multiplies [e_i, e_j]
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            if c.is_zero() {
                continue;
            }
            for (&k, s) in v {
                out[k] += &c * s;
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(x)` in the basis: column `j` is `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Q]) -> Result<QMatrix, AlgebraError> {
        let cols: Vec<Vec<Q>> =
            (0..self.dim).map(|j| self.bracket(x, &unit(self.dim, j))).collect::<Result<_, _>>()?;
        Ok(QMatrix::from_columns(self.dim, &cols))
    }

    fn dense(&self, v: &SparseVec) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (&k, c) in v {
            out[k] = c.clone();
        }
        out
    }

    /// Jacobi identity, centrality of the declared center and the lower
    /// central series.
    pub fn validate(&self) -> Result<ValidationReport, AlgebraError> {
        self.check_structure()?;
        let n = self.dim;
        let mut violations = Vec::new();

        let zero = vec![Q::zero(); n];
        for i in 0..n {
            for j in i + 1..n {
                let eij = self.dense(&self.bracket_basis(i, j));
                for k in j + 1..n {
                    let t1 = self.bracket(&eij, &unit(n, k))?;
                    let ejk = self.dense(&self.bracket_basis(j, k));
                    let t2 = self.bracket(&ejk, &unit(n, i))?;
                    let eki = self.dense(&self.bracket_basis(k, i));
                    let t3 = self.bracket(&eki, &unit(n, j))?;
                    let sum: Vec<Q> =
                        t1.iter().zip(&t2).zip(&t3).map(|((a, b), c)| a + b + c).collect();
                    if sum != zero {
                        violations.push(Violation::Jacobi { i, j, k });
                    }
                }
            }
        }

        for &c in &self.center_indices {
            if let Some(w) = (0..n).find(|&j| !self.bracket_basis(c, j).is_empty()
                && self.bracket_basis(c, j).values().any(|x| !x.is_zero()))
            {
                violations.push(Violation::NonCentral { index: c, witness: w });
            }
        }

        let (dims, class) = self.lower_central_series()?;
        if class.is_none() {
            violations.push(Violation::NotNilpotent { stable_dim: *dims.last().unwrap_or(&0) });
        }
        Ok(ValidationReport {
            violations,
            nilpotent: class.is_some(),
            two_step: class.is_some_and(|c| c <= 2),
            class,
            lower_central_dims: dims,
        })
    }

    /// Dimensions of the lower central series and the nilpotency class.
    fn lower_central_series(&self) -> Result<(Vec<usize>, Option<usize>), AlgebraError> {
        let n = self.dim;
        let mut current: Vec<Vec<Q>> = (0..n).map(|i| unit(n, i)).collect();
        let mut dims = vec![n];
        if n == 0 {
            return Ok((dims, Some(1)));
        }
        loop {
            let mut next = Vec::new();
            for i in 0..n {
                for c in &current {
                    let b = self.bracket(&unit(n, i), c)?;
                    if b.iter().any(|x| !x.is_zero()) {
                        next.push(b);
                    }
                }
            }
            let basis = span_basis(n, &next);
            let d = basis.len();
            dims.push(d);
            if d == 0 {
                // C^{k+1} = 0 where k = dims.len() - 1
                return Ok((dims.clone(), Some(dims.len() - 1)));
            }
            if d == current.len() {
                return Ok((dims, None));
            }
            current = basis;
        }
    }

    /// Exact kernel of `x ↦ ([x, e_1], …, [x, e_n])`.
    pub fn compute_center(&self) -> Result<Center, AlgebraError> {
        self.check_structure()?;
        let n = self.dim;
        // rows: for every j and every output coordinate k, sum_i x_i c^k_{ij} = 0
        let mut rows = Vec::with_capacity(n * n);
        for j in 0..n {
            let mut block = vec![vec![Q::zero(); n]; n];
            for i in 0..n {
                for (k, c) in self.bracket_basis(i, j) {
                    block[k][i] = c;
                }
            }
            rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
        }
        let basis = if rows.is_empty() {
            (0..n).map(|i| unit(n, i)).collect()
        } else {
            span_basis(n, &QMatrix::from_rows(rows).kernel())
        };
        let declared: Vec<Vec<Q>> = self.center_indices.iter().map(|&i| unit(n, i)).collect();
        let contained = span_contains(n, &basis, &declared);
        let strictly_smaller = contained && span_rank(n, &declared) < basis.len();
        Ok(Center { basis, declared_contained: contained, declared_strictly_smaller: strictly_smaller })
    }

    /// `λ_ζ` with `λ_ζ|z = ζ` and `λ_ζ|v = 0`.
    pub fn lift_central(&self, zeta: &[Q]) -> Result<Functional, AlgebraError> {
        if zeta.len() != self.center_indices.len() {
            return Err(AlgebraError::LengthMismatch {
                expected: self.center_indices.len(),
                found: zeta.len(),
            });
        }
        let mut coeffs = vec![Q::zero(); self.dim];
        for (&i, z) in self.center_indices.iter().zip(zeta) {
            coeffs[i] = z.clone();
        }
        Ok(Functional { coeffs })
    }

    /// Embeds coordinates over the `v` basis into the full basis.
    pub fn embed_v(&self, coords: &[Q]) -> Vec<Q> {
        assert_eq!(coords.len(), self.v_indices.len());
        let mut x = vec![Q::zero(); self.dim];
        for (&i, c) in self.v_indices.iter().zip(coords) {
            x[i] = c.clone();
        }
        x
    }

    /// `λ([x, y])`.
    pub fn pair(&self, lambda: &Functional, x: &[Q], y: &[Q]) -> Result<Q, AlgebraError> {
        Ok(lambda.apply(&self.bracket(x, y)?))
    }

    /// Basis vector as a dense vector.
    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        unit(self.dim, i)
    }
}

/// Label-based constructor for algebras.
///
/// The resulting basis is ordered center first, then the complement, each in
/// insertion order.
#[derive(Debug, Default, Clone)]
pub struct AlgebraBuilder {
    labels: Vec<String>,
    center: BTreeSet<String>,
    brackets: Vec<(String, String, Vec<(String, Q)>)>,
}

impl AlgebraBuilder {
    pub fn new<S: AsRef<str>>(labels: &[S], center: &[S]) -> Self {
        Self {
            labels: labels.iter().map(|s| s.as_ref().to_string()).collect(),
            center: center.iter().map(|s| s.as_ref().to_string()).collect(),
            brackets: Vec::new(),
        }
    }

    pub fn bracket<S: AsRef<str>>(mut self, left: &str, right: &str, result: &[(S, Q)]) -> Self {
        self.push_bracket(left, right, result.iter().map(|(s, c)| (s.as_ref().to_string(), c.clone())).collect());
        self
    }

    pub fn push_bracket(&mut self, left: &str, right: &str, result: Vec<(String, Q)>) {
        self.brackets.push((left.to_string(), right.to_string(), result));
    }

    pub fn build(self) -> Result<NilpotentLieAlgebra, AlgebraError> {
        for c in &self.center {
            if !self.labels.contains(c) {
                return Err(AlgebraError::UnknownLabel(c.clone()));
            }
        }
        let ordered: Vec<String> = self
            .labels
            .iter()
            .filter(|l| self.center.contains(*l))
            .chain(self.labels.iter().filter(|l| !self.center.contains(*l)))
            .cloned()
            .collect();
        let index = |l: &str| {
            ordered.iter().position(|x| x == l).ok_or_else(|| AlgebraError::UnknownLabel(l.to_string()))
        };
        let mut structure: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (left, right, result) in &self.brackets {
            let (mut i, mut j) = (index(left)?, index(right)?);
            if i == j {
                if result.iter().any(|(_, c)| !c.is_zero()) {
                    return Err(AlgebraError::Malformed(format!("[{left}, {left}] must vanish")));
                }
                continue;
            }
            let sign = if i > j {
                std::mem::swap(&mut i, &mut j);
                -Q::one()
            } else {
                Q::one()
            };
            let entry = structure.entry((i, j)).or_default();
            for (label, c) in result {
                let k = index(label)?;
                let slot = entry.entry(k).or_insert_with(Q::zero);
                *slot += &sign * c;
            }
        }
        for v in structure.values_mut() {
            v.retain(|_, c| !c.is_zero());
        }
        structure.retain(|_, v| !v.is_empty());
        let nz = self.center.len();
        let alg = NilpotentLieAlgebra {
            dim: ordered.len(),
            basis_labels: ordered,
            structure,
            center_indices: (0..nz).collect(),
            v_indices: (nz..self.labels.len()).collect(),
        };
        alg.check_structure()?;
        Ok(alg)
    }
}
