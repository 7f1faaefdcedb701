//! Classical Lie algebras of matrices acting on `C^n`, realified so they can
//! act as derivations on Heisenberg-type algebras.
//!
//! Everything lives inside `u(H)` for a diagonal Hermitian form `H`; the
//! smaller algebras (`su`, `sp`, `so`, `so*`) are cut out by exact linear
//! constraints on the real span of a `u(H)` basis.

use num_traits::{One, Zero};

use crate::linalg::QMatrix;
use crate::rational::{q, GaussianRational as G, Q};

/// Square matrix over the Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMatrix {
    pub n: usize,
    pub data: Vec<G>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![G::zero(); n * n] }
    }

    pub fn get(&self, i: usize, j: usize) -> &G {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: G) {
        self.data[i * self.n + j] = v;
    }

    pub fn real_diag(d: &[Q]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, G::real(x.clone()));
        }
        m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = &out.data[i * n + j] + &(a * b);
                        out.data[i * n + j] = v;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale_real(&self, c: &Q) -> Self {
        let g = G::real(c.clone());
        Self { n: self.n, data: self.data.iter().map(|a| a * &g).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).conj());
            }
        }
        t
    }

    pub fn trace(&self) -> G {
        (0..self.n).fold(G::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(G::is_zero)
    }

    /// Flattened real and imaginary parts, used as a linear constraint image.
    fn to_real_vec(&self) -> Vec<Q> {
        self.data.iter().flat_map(|g| [g.re.clone(), g.im.clone()]).collect()
    }

    /// Real `2n × 2n` matrix on coordinates `(x_1, y_1, …, x_n, y_n)` with
    /// `z_j = x_j + i y_j`.
    pub fn realify(&self) -> QMatrix {
        let n = self.n;
        let mut m = QMatrix::zeros(2 * n, 2 * n);
        for j in 0..n {
            for k in 0..n {
                let g = self.get(j, k);
                m[(2 * j, 2 * k)] = g.re.clone();
                m[(2 * j, 2 * k + 1)] = -g.im.clone();
                m[(2 * j + 1, 2 * k)] = g.im.clone();
                m[(2 * j + 1, 2 * k + 1)] = g.re.clone();
            }
        }
        m
    }
}

/// Signs of a Hermitian form of signature `(r, s)`: `r` pluses then `s` minuses.
pub fn form_signs(r: usize, s: usize) -> Vec<Q> {
    std::iter::repeat(q(1)).take(r).chain(std::iter::repeat(q(-1)).take(s)).collect()
}

/// Basis `X = H A` of `u(H)` with `A` running over the standard
/// anti-Hermitian basis `iE_jj`, `E_jk - E_kj`, `i(E_jk + E_kj)`.
///
/// `H` must be diagonal with entries `±1`, so `H⁻¹ = H` and `X*H + HX = 0`.
pub fn unitary_basis(signs: &[Q]) -> Vec<(String, CMatrix)> {
    let n = signs.len();
    let h = CMatrix::real_diag(signs);
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        let mut a = CMatrix::zeros(n);
        a.set(j, j, G::i());
        out.push((format!("iE{}{}", j + 1, j + 1), h.mul(&a)));
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut a = CMatrix::zeros(n);
            a.set(j, k, G::real(q(1)));
            a.set(k, j, G::real(q(-1)));
            out.push((format!("E{}{}-E{}{}", j + 1, k + 1, k + 1, j + 1), h.mul(&a)));
            let mut b = CMatrix::zeros(n);
            b.set(j, k, G::i());
            b.set(k, j, G::i());
            out.push((format!("i(E{}{}+E{}{})", j + 1, k + 1, k + 1, j + 1), h.mul(&b)));
        }
    }
    out
}

/// Linear constraints cutting a subalgebra out of `u(H)`.
#[derive(Clone, Debug)]
pub enum Constraint {
    /// `tr X = 0`.
    TraceFree,
    /// `Xᵀ B + B X = 0` for a complex bilinear form `B`.
    PreservesBilinear(CMatrix),
    /// `X` has real entries.
    Real,
}

fn constraint_image(c: &Constraint, x: &CMatrix) -> Vec<Q> {
    match c {
        Constraint::TraceFree => {
            let t = x.trace();
            vec![t.re, t.im]
        }
        Constraint::PreservesBilinear(b) => x.transpose().mul(b).add(&b.mul(x)).to_real_vec(),
        Constraint::Real => x.data.iter().map(|g| g.im.clone()).collect(),
    }
}

/// Real basis of `{X ∈ span(basis) : X satisfies every constraint}`.
pub fn constrained_subalgebra(basis: &[(String, CMatrix)], constraints: &[Constraint], prefix: &str) -> Vec<(String, CMatrix)> {
    if constraints.is_empty() {
        return basis.to_vec();
    }
    let cols: Vec<Vec<Q>> = basis
        .iter()
        .map(|(_, x)| constraints.iter().flat_map(|c| constraint_image(c, x)).collect())
        .collect();
    let rows = cols[0].len();
    let m = QMatrix::from_columns(rows, &cols);
    m.kernel()
        .into_iter()
        .enumerate()
        .map(|(idx, coeffs)| {
            let n = basis[0].1.n;
            let x = basis
                .iter()
                .zip(&coeffs)
                .filter(|(_, c)| !c.is_zero())
                .fold(CMatrix::zeros(n), |acc, ((_, b), c)| acc.add(&b.scale_real(c)));
            (format!("{prefix}{}", idx + 1), x)
        })
        .collect()
}

/// Multiplication by `i` on `C^n`.
pub fn scalar_i(n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n);
    for j in 0..n {
        m.set(j, j, G::i());
    }
    m
}

/// Standard skew form pairing coordinates `(1,2), (3,4), …`.
pub fn paired_symplectic(n: usize) -> CMatrix {
    assert!(n % 2 == 0);
    let mut m = CMatrix::zeros(n);
    for p in (0..n).step_by(2) {
        m.set(p, p + 1, G::real(q(1)));
        m.set(p + 1, p, G::real(q(-1)));
    }
    m
}

/// Off-diagonal block form `[[0, I], [εI, 0]]` on `C^{2m}`; `ε = -1` gives a
/// skew form, `ε = 1` a symmetric one.
pub fn block_form(m: usize, eps: i64) -> CMatrix {
    let mut b = CMatrix::zeros(2 * m);
    for j in 0..m {
        b.set(j, m + j, G::real(q(1)));
        b.set(m + j, j, G::real(q(eps)));
    }
    b
}

/// Lie algebras acting on `C^{r,s}` that appear in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalAlgebra {
    /// `u(r, s)`.
    Unitary,
    /// `su(r, s)`.
    SpecialUnitary,
    /// `sp(k, ℓ)` on `C^{2k, 2ℓ}`.
    CompactSymplectic,
    /// `sp(m; R)` on `C^{m, m}`.
    RealSymplectic,
    /// `so(r, s)` acting on `C^{r,s} = R^{r,s} ⊗ C`.
    Orthogonal,
    /// `so*(2m)` on `C^{m, m}`.
    OrthogonalStar,
}

impl ClassicalAlgebra {
    /// Real basis of the algebra for the Hermitian form of signature `(r, s)`.
    pub fn basis(self, r: usize, s: usize) -> Vec<(String, CMatrix)> {
        let n = r + s;
        let u = unitary_basis(&form_signs(r, s));
        match self {
            Self::Unitary => u,
            Self::SpecialUnitary => constrained_subalgebra(&u, &[Constraint::TraceFree], "su"),
            Self::CompactSymplectic => {
                assert!(r % 2 == 0 && s % 2 == 0, "sp(k,l) needs even (r, s)");
                constrained_subalgebra(&u, &[Constraint::PreservesBilinear(paired_symplectic(n))], "sp")
            }
            Self::RealSymplectic => {
                assert_eq!(r, s, "sp(m;R) acts on C^(m,m)");
                constrained_subalgebra(&u, &[Constraint::PreservesBilinear(block_form(r, -1))], "spR")
            }
            Self::Orthogonal => constrained_subalgebra(&u, &[Constraint::Real], "so"),
            Self::OrthogonalStar => {
                assert_eq!(r, s, "so*(2m) acts on C^(m,m)");
                constrained_subalgebra(&u, &[Constraint::PreservesBilinear(block_form(r, 1))], "sostar")
            }
        }
    }
}

/// Action of `X ∈ gl(n, C)` on `S²(C^n)` in the basis `f_jj = e_j ⊗ e_j`,
/// `f_jk = e_j ⊗ e_k + e_k ⊗ e_j` (`j < k`), ordered lexicographically.
pub fn symmetric_square_action(x: &CMatrix) -> CMatrix {
    let n = x.n;
    let pairs = symmetric_pairs(n);
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let mut out = CMatrix::zeros(pairs.len());
    // e_a e_b + e_b e_a = f_ab for a != b, and 2 f_aa for a == b
    let mut add_sym = |col: usize, a: usize, b: usize, c: &G| {
        let row = index(a, b);
        let c = if a == b { c * &G::real(q(2)) } else { c.clone() };
        let v = out.get(row, col) + &c;
        out.set(row, col, v);
    };
    for (col, &(i, j)) in pairs.iter().enumerate() {
        for k in 0..n {
            if i == j {
                // X(e_i ⊗ e_i) = Σ_k X_ki (e_k ⊗ e_i + e_i ⊗ e_k)
                let c = x.get(k, i);
                if !c.is_zero() {
                    add_sym(col, k, i, c);
                }
            } else {
                let c1 = x.get(k, i);
                if !c1.is_zero() {
                    add_sym(col, k, j, c1);
                }
                let c2 = x.get(k, j);
                if !c2.is_zero() {
                    add_sym(col, i, k, c2);
                }
            }
        }
    }
    out
}

pub fn symmetric_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Diagonal weights of the Hermitian form induced on `S²(C^{r,s})` by the
/// tensor square, in the basis of [`symmetric_square_action`].
pub fn symmetric_square_weights(signs: &[Q]) -> Vec<Q> {
    symmetric_pairs(signs.len())
        .into_iter()
        .map(|(i, j)| {
            let s = &signs[i] * &signs[j];
            if i == j {
                s
            } else {
                s * q(2)
            }
        })
        .collect()
}

/// Induced action `D(a ∧ b) = Da ∧ b + a ∧ Db` on `Λ²R^m`, basis `e_a ∧ e_b`
/// (`a < b`) in lexicographic order.
pub fn exterior_square_action(d: &QMatrix) -> QMatrix {
    let m = d.nrows();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b)).unwrap();
    let mut out = QMatrix::zeros(pairs.len(), pairs.len());
    let mut add = |col: usize, a: usize, b: usize, c: &Q| {
        if a == b || c.is_zero() {
            return;
        }
        let (row, sign) = if a < b { (index(a, b), Q::one()) } else { (index(b, a), -Q::one()) };
        out[(row, col)] += sign * c;
    };
    for (col, &(a, b)) in pairs.iter().enumerate() {
        for k in 0..m {
            add(col, k, b, &d[(k, a)]);
            add(col, a, k, &d[(k, b)]);
        }
    }
    out
}
