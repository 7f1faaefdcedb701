//! The forms `β_ζ(u, v) = λ_ζ([u, Jv])` and `γ_ζ = β_ζ + i λ_ζ([u, v])` on
//! `v`, their exact inertia, and the Dolbeault degree it predicts.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::NilpotentLieAlgebra;
use crate::error::AlgebraError;
use crate::linalg::QMatrix;
use crate::pfaffian::{evaluate_p, pfaffian_polynomial};
use crate::rational::{format_rational, GaussianRational, Q};
use crate::satake::ComplexStructure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureReport {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    /// `(k, ℓ) = (n_plus/2, n_minus/2)` when nondegenerate with even counts.
    pub k: Option<usize>,
    pub l: Option<usize>,
    /// Degree of the nonvanishing square-integrable cohomology, `ℓ`.
    pub degree: Option<usize>,
    pub nondegenerate: bool,
}

impl SignatureReport {
    fn from_inertia(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        let nondegenerate = n_zero == 0;
        let even = n_plus % 2 == 0 && n_minus % 2 == 0;
        let (k, l) = if nondegenerate && even { (Some(n_plus / 2), Some(n_minus / 2)) } else { (None, None) };
        Self { n_plus, n_minus, n_zero, k, l, degree: l, nondegenerate }
    }

    /// Inertia pair `(n_plus, n_minus)`.
    pub fn pair(&self) -> (usize, usize) {
        (self.n_plus, self.n_minus)
    }

    /// Fixed-order single-line record.
    pub fn record(&self) -> String {
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        format!(
            "inertia=({},{},{}) k_l=({},{}) degree={} nondegenerate={}",
            self.n_plus,
            self.n_minus,
            self.n_zero,
            opt(self.k),
            opt(self.l),
            opt(self.degree),
            self.nondegenerate
        )
    }
}

fn check_j_size(alg: &NilpotentLieAlgebra, j: &ComplexStructure) -> Result<(), AlgebraError> {
    if j.size() != alg.v_dim() || !j.j.is_square() {
        return Err(AlgebraError::SizeMismatch { what: "J", expected: alg.v_dim(), found: j.size() });
    }
    Ok(())
}

/// `B_ab = λ_ζ([e_a, J e_b])` over the `v` basis, without the symmetry check.
pub fn beta_matrix_raw(alg: &NilpotentLieAlgebra, j: &ComplexStructure, zeta: &[Q]) -> Result<QMatrix, AlgebraError> {
    check_j_size(alg, j)?;
    let lambda = alg.lift_central(zeta)?;
    let nv = alg.v_dim();
    let mut b = QMatrix::zeros(nv, nv);
    let jcols: Vec<Vec<Q>> = (0..nv).map(|c| alg.embed_v(&j.j.column(c))).collect();
    for (a, &i) in alg.v_indices.iter().enumerate() {
        let ei = alg.basis_vector(i);
        for (c, jc) in jcols.iter().enumerate() {
            b[(a, c)] = alg.pair(&lambda, &ei, jc)?;
        }
    }
    Ok(b)
}

/// `β_ζ` as a symmetric matrix; asymmetry is reported as an incompatibility.
pub fn beta_matrix(alg: &NilpotentLieAlgebra, j: &ComplexStructure, zeta: &[Q]) -> Result<QMatrix, AlgebraError> {
    let b = beta_matrix_raw(alg, j, zeta)?;
    if let Some((u, v)) = b.first_asymmetry() {
        return Err(AlgebraError::Incompatible {
            u: alg.label(alg.v_indices[u]).to_string(),
            v: alg.label(alg.v_indices[v]).to_string(),
        });
    }
    Ok(b)
}

/// Exact inertia of a symmetric rational matrix by congruence elimination.
///
/// A nonzero diagonal entry is used as a 1×1 pivot; when the whole remaining
/// diagonal vanishes, a nonzero off-diagonal `a` gives the hyperbolic block
/// `[[0, a], [a, 0]]`, contributing one positive and one negative direction.
///
/// # Panics
///
/// Panics if `b` is not square and symmetric.
pub fn signature(b: &QMatrix) -> SignatureReport {
    assert!(b.is_symmetric(), "signature needs a symmetric matrix");
    let mut a = b.clone();
    let mut active: Vec<usize> = (0..a.nrows()).collect();
    let (mut plus, mut minus) = (0usize, 0usize);
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[(i, i)].is_zero()) {
            let p = active.remove(pos);
            let piv = a[(p, p)].clone();
            if piv.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            let inv = piv.recip();
            for (x, &r) in active.iter().enumerate() {
                if a[(r, p)].is_zero() {
                    continue;
                }
                let f = &a[(r, p)] * &inv;
                for &c in &active[x..] {
                    if a[(p, c)].is_zero() {
                        continue;
                    }
                    let v = &a[(r, c)] - &f * &a[(p, c)];
                    a[(r, c)] = v.clone();
                    a[(c, r)] = v;
                }
            }
            continue;
        }
        let pair = active
            .iter()
            .enumerate()
            .flat_map(|(x, &i)| active[x + 1..].iter().map(move |&j| (i, j)))
            .find(|&(i, j)| !a[(i, j)].is_zero());
        let Some((p, s)) = pair else { break };
        plus += 1;
        minus += 1;
        active.retain(|&i| i != p && i != s);
        // A' = A - (c_p c_sᵀ + c_s c_pᵀ) / a_ps
        let inv = a[(p, s)].recip();
        for (x, &r) in active.iter().enumerate() {
            for &c in &active[x..] {
                let upd = (&a[(r, p)] * &a[(s, c)] + &a[(r, s)] * &a[(p, c)]) * &inv;
                if upd.is_zero() {
                    continue;
                }
                let v = &a[(r, c)] - &upd;
                a[(r, c)] = v.clone();
                a[(c, r)] = v;
            }
        }
    }
    let zero = b.nrows() - plus - minus;
    SignatureReport::from_inertia(plus, minus, zero)
}

/// `γ_ζ(u, v) = λ_ζ([u, Jv]) + i λ_ζ([u, v])` for `u, v` in `v`-coordinates.
pub fn gamma_hermitian(
    alg: &NilpotentLieAlgebra,
    j: &ComplexStructure,
    zeta: &[Q],
    u: &[Q],
    v: &[Q],
) -> Result<GaussianRational, AlgebraError> {
    check_j_size(alg, j)?;
    for x in [u, v] {
        if x.len() != alg.v_dim() {
            return Err(AlgebraError::LengthMismatch { expected: alg.v_dim(), found: x.len() });
        }
    }
    let lambda = alg.lift_central(zeta)?;
    let uu = alg.embed_v(u);
    let vv = alg.embed_v(v);
    let jv = alg.embed_v(&j.apply(v));
    Ok(GaussianRational::new(alg.pair(&lambda, &uu, &jv)?, alg.pair(&lambda, &uu, &vv)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CohomologyDegree {
    Defined { degree: usize, signature: SignatureReport },
    /// `β_ζ` is degenerate; `p_at_zeta` is the Pfaffian there (always 0).
    Undefined { n_zero: usize, p_at_zeta: String },
}

impl CohomologyDegree {
    pub fn degree(&self) -> Option<usize> {
        match self {
            Self::Defined { degree, .. } => Some(*degree),
            Self::Undefined { .. } => None,
        }
    }
}

/// `ℓ = n_minus / 2` of `β_ζ` when nondegenerate.
pub fn cohomology_degree(
    alg: &NilpotentLieAlgebra,
    j: &ComplexStructure,
    zeta: &[Q],
) -> Result<CohomologyDegree, AlgebraError> {
    let sig = signature(&beta_matrix(alg, j, zeta)?);
    if !sig.nondegenerate {
        let p = evaluate_p(alg, &pfaffian_polynomial(alg), zeta)?;
        return Ok(CohomologyDegree::Undefined { n_zero: sig.n_zero, p_at_zeta: format_rational(&p) });
    }
    match sig.l {
        Some(l) => Ok(CohomologyDegree::Defined { degree: l, signature: sig }),
        None => Err(AlgebraError::Precondition(format!(
            "inertia ({}, {}) is not even; J is not compatible with the bracket",
            sig.n_plus, sig.n_minus
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;
    use crate::rational::{q, q_frac};
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h3() -> NilpotentLieAlgebra {
        AlgebraBuilder::new(&["X", "Y", "Z"], &["Z"]).bracket("X", "Y", &[("Z", q(1))]).build().unwrap()
    }

    fn rot() -> ComplexStructure {
        ComplexStructure::new(QMatrix::from_i64(2, 2, &[0, -1, 1, 0]))
    }

    fn diag(v: &[i64]) -> QMatrix {
        let mut m = QMatrix::zeros(v.len(), v.len());
        for (i, &x) in v.iter().enumerate() {
            m[(i, i)] = q(x);
        }
        m
    }

    /// Brute-force table of λ([e_a, J e_b]) for h3 written out by hand:
    /// JX = Y, JY = -X, [X,Y] = Z, so β(X,X) = λ([X,Y]) = ζ, β(Y,Y) = λ([Y,-X]) = ζ.
    #[test]
    fn beta_on_h3_is_identity_times_zeta() {
        assert_eq!(beta_matrix(&h3(), &rot(), &[q(1)]).unwrap(), QMatrix::identity(2));
        assert!(beta_matrix(&h3(), &rot(), &[q(0)]).unwrap().is_zero());
        assert_eq!(beta_matrix(&h3(), &rot(), &[q(-3)]).unwrap(), diag(&[-3, -3]));
    }

    #[test]
    fn asymmetric_beta_is_incompatible() {
        // a 4-dim example where J mixes the two symplectic planes unevenly
        let h5 = AlgebraBuilder::new(&["Z", "X1", "Y1", "X2", "Y2"], &["Z"])
            .bracket("X1", "Y1", &[("Z", q(1))])
            .bracket("X2", "Y2", &[("Z", q(2))])
            .build()
            .unwrap();
        let mut jm = QMatrix::zeros(4, 4);
        // J: X1 -> X2 -> -X1, Y1 -> Y2 -> -Y1
        for (r, c, v) in [(2, 0, 1), (0, 2, -1), (3, 1, 1), (1, 3, -1)] {
            jm[(r, c)] = q(v);
        }
        let err = beta_matrix(&h5, &ComplexStructure::new(jm), &[q(1)]).unwrap_err();
        assert!(matches!(err, AlgebraError::Incompatible { .. }));
    }

    #[test]
    fn signature_examples() {
        let s = signature(&diag(&[1, 1, -1, -1]));
        assert_eq!((s.n_plus, s.n_minus, s.n_zero), (2, 2, 0));
        assert_eq!((s.k, s.l, s.degree), (Some(1), Some(1), Some(1)));
        let z = signature(&QMatrix::zeros(4, 4));
        assert_eq!((z.n_plus, z.n_minus, z.n_zero, z.nondegenerate), (0, 0, 4, false));
        assert_eq!(z.degree, None);
        // hyperbolic plane with zero diagonal
        let h = signature(&QMatrix::from_i64(2, 2, &[0, 3, 3, 0]));
        assert_eq!(h.pair(), (1, 1));
        assert_eq!(h.k, None);
        assert_eq!(s.record(), "inertia=(2,2,0) k_l=(1,1) degree=1 nondegenerate=true");
    }

    fn float_inertia(b: &QMatrix) -> (usize, usize, usize) {
        let n = b.nrows();
        let m = DMatrix::from_fn(n, n, |i, j| crate::rational::to_f64(&b[(i, j)]));
        let eig = m.symmetric_eigen().eigenvalues;
        let scale = eig.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        let mut out = (0, 0, 0);
        for &e in eig.iter() {
            if e.abs() <= 1e-9 * scale {
                out.2 += 1;
            } else if e > 0.0 {
                out.0 += 1;
            } else {
                out.1 += 1;
            }
        }
        out
    }

    #[test]
    fn random_symmetric_matches_eigenvalue_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..60 {
            let n = 6;
            // random rank: B = Mᵀ D M with small integer entries
            let rank = trial % 7;
            let mut m = QMatrix::zeros(rank, n);
            for i in 0..rank {
                for j in 0..n {
                    m[(i, j)] = q_frac(rng.gen_range(-4..=4), rng.gen_range(1..=3));
                }
            }
            let mut d = QMatrix::zeros(rank, rank);
            for i in 0..rank {
                d[(i, i)] = q(if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=5));
            }
            let b = if rank == 0 { QMatrix::zeros(n, n) } else { m.transpose().mul(&d).mul(&m) };
            let s = signature(&b);
            assert_eq!((s.n_plus, s.n_minus, s.n_zero), float_inertia(&b), "trial {trial}");
        }
    }

    #[test]
    fn zero_diagonal_needs_hyperbolic_pivot() {
        let mut b = QMatrix::zeros(4, 4);
        for (i, j, v) in [(0, 1, 1), (2, 3, 2), (0, 3, 1)] {
            b[(i, j)] = q(v);
            b[(j, i)] = q(v);
        }
        let s = signature(&b);
        assert_eq!((s.n_plus, s.n_minus, s.n_zero), float_inertia(&b));
    }

    #[test]
    fn gamma_examples() {
        let a = h3();
        let j = rot();
        let x = [q(1), q(0)];
        let y = [q(0), q(1)];
        assert_eq!(gamma_hermitian(&a, &j, &[q(1)], &x, &x).unwrap(), GaussianRational::real(q(1)));
        assert_eq!(gamma_hermitian(&a, &j, &[q(1)], &x, &y).unwrap(), GaussianRational::i());
        assert!(gamma_hermitian(&a, &j, &[q(0)], &x, &y).unwrap().is_zero());
        let g1 = gamma_hermitian(&a, &j, &[q(2)], &x, &y).unwrap();
        let g2 = gamma_hermitian(&a, &j, &[q(2)], &y, &x).unwrap();
        assert_eq!(g1.conj(), g2);
    }

    #[test]
    fn degree_on_h3() {
        let a = h3();
        assert_eq!(cohomology_degree(&a, &rot(), &[q(1)]).unwrap().degree(), Some(0));
        assert_eq!(cohomology_degree(&a, &rot(), &[q(-1)]).unwrap().degree(), Some(1));
        match cohomology_degree(&a, &rot(), &[q(0)]).unwrap() {
            CohomologyDegree::Undefined { n_zero, p_at_zeta } => {
                assert_eq!(n_zero, 2);
                assert_eq!(p_at_zeta, "0");
            }
            other => panic!("expected undefined, got {other:?}"),
        }
    }
}
