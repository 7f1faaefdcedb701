//! The skew form `b_λ(x, y) = λ([x, y])` on the complement `v` and its
//! Pfaffian, which decides square integrability modulo the center.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::algebra::NilpotentLieAlgebra;
use crate::error::AlgebraError;
use crate::linalg::QMatrix;
use crate::polynomial::RationalPolynomial;
use crate::rational::Q;

/// Skew-symmetric matrix with polynomial entries; only `i < j` is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPolynomialMatrix {
    n: usize,
    nvars: usize,
    upper: BTreeMap<(usize, usize), RationalPolynomial>,
}

impl SkewPolynomialMatrix {
    pub fn new(n: usize, nvars: usize) -> Self {
        Self { n, nvars, upper: BTreeMap::new() }
    }

    /// Builds from a full square matrix, checking `M = -Mᵀ` with zero diagonal.
    pub fn from_dense(rows: Vec<Vec<RationalPolynomial>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let nvars = rows.first().and_then(|r| r.first()).map_or(0, RationalPolynomial::nvars);
        let mut m = Self::new(n, nvars);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::SizeMismatch { what: "matrix row", expected: n, found: row.len() });
            }
            if !row[i].is_zero() {
                return Err(AlgebraError::NotSkew { i, j: i });
            }
            for j in i + 1..n {
                if row[j] != -&rows[j][i] {
                    return Err(AlgebraError::NotSkew { i, j });
                }
                m.set(i, j, row[j].clone());
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Sets entry `(i, j)` and implicitly `(j, i) = -value`.
    pub fn set(&mut self, i: usize, j: usize, value: RationalPolynomial) {
        assert!(i != j && i < self.n && j < self.n);
        let (a, b, v) = if i < j { (i, j, value) } else { (j, i, -&value) };
        if v.is_zero() {
            self.upper.remove(&(a, b));
        } else {
            self.upper.insert((a, b), v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> RationalPolynomial {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => RationalPolynomial::zero(self.nvars),
            Less => self.upper.get(&(i, j)).cloned().unwrap_or_else(|| RationalPolynomial::zero(self.nvars)),
            Greater => self.upper.get(&(j, i)).map(|p| -p).unwrap_or_else(|| RationalPolynomial::zero(self.nvars)),
        }
    }

    fn upper_ref(&self, i: usize, j: usize) -> Option<&RationalPolynomial> {
        debug_assert!(i < j);
        self.upper.get(&(i, j))
    }

    /// Numeric matrix obtained by evaluating every entry at `point`.
    pub fn evaluate(&self, point: &[Q]) -> QMatrix {
        let mut m = QMatrix::zeros(self.n, self.n);
        for (&(i, j), p) in &self.upper {
            let v = p.eval(point);
            m[(i, j)] = v.clone();
            m[(j, i)] = -v;
        }
        m
    }

    pub fn dense(&self) -> Vec<Vec<RationalPolynomial>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }
}

/// `b_λ` restricted to the `v` basis, as linear polynomials in all dual
/// coordinates `λ_1..λ_dim`.
pub fn b_matrix_symbolic(alg: &NilpotentLieAlgebra) -> SkewPolynomialMatrix {
    let nv = alg.v_dim();
    let mut m = SkewPolynomialMatrix::new(nv, alg.dim);
    for (a, &i) in alg.v_indices.iter().enumerate() {
        for (b, &j) in alg.v_indices.iter().enumerate().skip(a + 1) {
            let br = alg.bracket_basis(i, j);
            if br.is_empty() {
                continue;
            }
            let mut coeffs = vec![Q::zero(); alg.dim];
            for (k, c) in br {
                coeffs[k] = c;
            }
            m.set(a, b, RationalPolynomial::linear(&coeffs));
        }
    }
    m
}

/// Exact symbolic Pfaffian by expansion along the first remaining row,
/// memoized on the remaining index set.
///
/// Sign convention: `Pf([[0, a], [-a, 0]]) = a`. The empty matrix has
/// Pfaffian 1 and odd sizes give 0.
pub fn pfaffian(m: &SkewPolynomialMatrix) -> RationalPolynomial {
    let n = m.size();
    if n % 2 == 1 {
        return RationalPolynomial::zero(m.nvars());
    }
    assert!(n <= 64, "pfaffian expansion supports at most 64 rows");
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo: HashMap<u64, RationalPolynomial> = HashMap::new();
    pf_rec(m, full, &mut memo)
}

fn pf_rec(m: &SkewPolynomialMatrix, set: u64, memo: &mut HashMap<u64, RationalPolynomial>) -> RationalPolynomial {
    if set == 0 {
        return RationalPolynomial::one(m.nvars());
    }
    if let Some(p) = memo.get(&set) {
        return p.clone();
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1u64 << first);
    let mut total = RationalPolynomial::zero(m.nvars());
    let mut bits = rest;
    let mut position = 0usize;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        position += 1;
        let Some(entry) = m.upper_ref(first, j) else { continue };
        let minor = pf_rec(m, rest & !(1u64 << j), memo);
        if minor.is_zero() {
            continue;
        }
        let term = entry * &minor;
        total = if position % 2 == 1 { &total + &term } else { &total - &term };
    }
    memo.insert(set, total.clone());
    total
}

/// Exact Pfaffian of a numeric skew matrix by block skew elimination:
/// `Pf([[S, B], [-Bᵀ, C]]) = Pf(S) · Pf(C + Bᵀ S⁻¹ B)` with 2×2 pivots `S`.
pub fn pfaffian_numeric(m: &QMatrix) -> Result<Q, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::SizeMismatch { what: "pfaffian input", expected: m.nrows(), found: m.ncols() });
    }
    let n = m.nrows();
    for i in 0..n {
        if !m[(i, i)].is_zero() {
            return Err(AlgebraError::NotSkew { i, j: i });
        }
        for j in i + 1..n {
            if m[(i, j)] != -m[(j, i)].clone() {
                return Err(AlgebraError::NotSkew { i, j });
            }
        }
    }
    if n % 2 == 1 {
        return Ok(Q::zero());
    }
    let mut a = m.clone();
    let mut result = Q::one();
    let mut k = 0;
    while k < n {
        let Some(p) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) else {
            return Ok(Q::zero());
        };
        if p != k + 1 {
            // simultaneous row/column swap negates the Pfaffian
            swap_sym(&mut a, p, k + 1);
            result = -result;
        }
        let piv = a[(k, k + 1)].clone();
        result *= &piv;
        // C' = C + Bᵀ S⁻¹ B with S⁻¹ = [[0, -1/p], [1/p, 0]]
        let inv = piv.recip();
        for i in k + 2..n {
            for j in i + 1..n {
                let upd = (&a[(k + 1, i)] * &a[(k, j)] - &a[(k, i)] * &a[(k + 1, j)]) * &inv;
                if upd.is_zero() {
                    continue;
                }
                let v = &a[(i, j)] + &upd;
                a[(i, j)] = v.clone();
                a[(j, i)] = -v;
            }
        }
        k += 2;
    }
    Ok(result)
}

fn swap_sym(a: &mut QMatrix, p: usize, r: usize) {
    a.swap_rows(p, r);
    let n = a.nrows();
    for i in 0..n {
        let tmp = a[(i, p)].clone();
        a[(i, p)] = a[(i, r)].clone();
        a[(i, r)] = tmp;
    }
}

/// Pfaffian polynomial `P` of an algebra, in all dual coordinates.
pub fn pfaffian_polynomial(alg: &NilpotentLieAlgebra) -> RationalPolynomial {
    pfaffian(&b_matrix_symbolic(alg))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareIntegrability {
    Yes(RationalPolynomial),
    No,
}

impl SquareIntegrability {
    pub fn is_yes(&self) -> bool {
        matches!(self, Self::Yes(_))
    }
}

/// Square integrable modulo the center iff the Pfaffian polynomial is not
/// identically zero.
pub fn is_square_integrable(alg: &NilpotentLieAlgebra) -> SquareIntegrability {
    let p = pfaffian_polynomial(alg);
    if p.is_zero() {
        SquareIntegrability::No
    } else {
        SquareIntegrability::Yes(p)
    }
}

/// Evaluates `P` at `λ_ζ`: `ζ` on the center coordinates and 0 on `v`.
pub fn evaluate_p(alg: &NilpotentLieAlgebra, p: &RationalPolynomial, zeta: &[Q]) -> Result<Q, AlgebraError> {
    let lambda = alg.lift_central(zeta)?;
    if p.nvars() != alg.dim {
        return Err(AlgebraError::SizeMismatch { what: "polynomial arity", expected: alg.dim, found: p.nvars() });
    }
    Ok(p.eval(&lambda.coeffs))
}

/// Numeric `b_{λ_ζ}` on `v`.
pub fn b_matrix_at(alg: &NilpotentLieAlgebra, zeta: &[Q]) -> Result<QMatrix, AlgebraError> {
    let lambda = alg.lift_central(zeta)?;
    Ok(b_matrix_symbolic(alg).evaluate(&lambda.coeffs))
}

/// Names of the dual variables, used when rendering `P`.
pub fn dual_variable_names(alg: &NilpotentLieAlgebra) -> Vec<String> {
    alg.basis_labels.iter().map(|l| format!("l_{l}")).collect()
}
