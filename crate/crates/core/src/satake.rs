//! Complex structures on `v` and the exact checks that make `n = z + v`
//! "of complex type": `J² = -I`, invariance under the derivations of `h`,
//! the Satake condition on `v_±`, and the Leibniz rule for `h`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::NilpotentLieAlgebra;
use crate::error::AlgebraError;
use crate::linalg::QMatrix;
use crate::rational::{GaussianRational, Q};

/// Exact rational matrix `J` on `v`, indexed by `v_indices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    pub j: QMatrix,
}

impl ComplexStructure {
    pub fn new(j: QMatrix) -> Self {
        Self { j }
    }

    pub fn size(&self) -> usize {
        self.j.nrows()
    }

    /// `J` acting on `v`-coordinates.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        self.j.mul_vec(v)
    }

    /// `J` on `v` extended by zero on `z`, as a matrix over the full basis.
    pub fn extend_by_zero(&self, alg: &NilpotentLieAlgebra) -> QMatrix {
        let mut m = QMatrix::zeros(alg.dim, alg.dim);
        for (a, &i) in alg.v_indices.iter().enumerate() {
            for (b, &k) in alg.v_indices.iter().enumerate() {
                m[(i, k)] = self.j[(a, b)].clone();
            }
        }
        m
    }
}

/// Named matrices over the full basis, each an infinitesimal automorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivationSet {
    pub generators: Vec<(String, QMatrix)>,
}

impl DerivationSet {
    pub fn new(generators: Vec<(String, QMatrix)>) -> Self {
        Self { generators }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&QMatrix> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckFailure {
    /// `J²e ≠ -e` for the `v` basis vector with this label.
    JSquare { column: String },
    /// `D|v` does not commute with `J`.
    NotInvariant { generator: String },
    /// The `v_∓` component of `[w_left, w_right]` is nonzero, where
    /// `w = u ∓ iJu` spans `v_±`.
    A1 { eigenspace: String, left: String, right: String },
    Leibniz { generator: String, left: String, right: String },
    MovesCenter { generator: String, index: String },
    MovesComplement { generator: String, index: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub passed: bool,
    pub failure: Option<CheckFailure>,
}

impl CheckReport {
    fn pass(check: &'static str) -> Self {
        Self { check, passed: true, failure: None }
    }

    fn fail(check: &'static str, f: CheckFailure) -> Self {
        Self { check, passed: false, failure: Some(f) }
    }
}

fn check_size(alg: &NilpotentLieAlgebra, j: &ComplexStructure) -> Result<(), AlgebraError> {
    if !j.j.is_square() || j.size() != alg.v_dim() {
        return Err(AlgebraError::SizeMismatch { what: "J", expected: alg.v_dim(), found: j.j.nrows() });
    }
    Ok(())
}

pub fn check_j(alg: &NilpotentLieAlgebra, j: &ComplexStructure) -> Result<CheckReport, AlgebraError> {
    check_size(alg, j)?;
    let sq = j.j.mul(&j.j);
    let n = j.size();
    for c in 0..n {
        for r in 0..n {
            let want = if r == c { -Q::one() } else { Q::zero() };
            if sq[(r, c)] != want {
                let label = alg.label(alg.v_indices[c]).to_string();
                return Ok(CheckReport::fail("J^2 = -I", CheckFailure::JSquare { column: label }));
            }
        }
    }
    Ok(CheckReport::pass("J^2 = -I"))
}

fn v_block(alg: &NilpotentLieAlgebra, d: &QMatrix) -> QMatrix {
    d.submatrix(&alg.v_indices, &alg.v_indices)
}

/// `D|v · J = J · D|v` for every generator.
pub fn check_invariance(
    alg: &NilpotentLieAlgebra,
    j: &ComplexStructure,
    derivations: &DerivationSet,
) -> Result<CheckReport, AlgebraError> {
    check_size(alg, j)?;
    for (name, d) in &derivations.generators {
        check_derivation_size(alg, name, d)?;
        let dv = v_block(alg, d);
        if dv.mul(&j.j) != j.j.mul(&dv) {
            return Ok(CheckReport::fail(
                "J invariance",
                CheckFailure::NotInvariant { generator: name.clone() },
            ));
        }
    }
    Ok(CheckReport::pass("J invariance"))
}

type CVec = Vec<GaussianRational>;

fn complex_bracket(alg: &NilpotentLieAlgebra, x: &CVec, y: &CVec) -> Result<CVec, AlgebraError> {
    let re = |v: &CVec| v.iter().map(|c| c.re.clone()).collect::<Vec<Q>>();
    let im = |v: &CVec| v.iter().map(|c| c.im.clone()).collect::<Vec<Q>>();
    let (xr, xi, yr, yi) = (re(x), im(x), re(y), im(y));
    // [a + ib, c + id] = [a,c] - [b,d] + i([a,d] + [b,c])
    let ac = alg.bracket(&xr, &yr)?;
    let bd = alg.bracket(&xi, &yi)?;
    let ad = alg.bracket(&xr, &yi)?;
    let bc = alg.bracket(&xi, &yr)?;
    Ok((0..alg.dim).map(|k| GaussianRational::new(&ac[k] - &bd[k], &ad[k] + &bc[k])).collect())
}

/// Satake's condition `[v_±, v_±] ⊂ v_± + z_C`, checked over the Gaussian
/// rationals with `v_±` spanned by `u ∓ iJu` over the `v` basis.
pub fn check_a1(alg: &NilpotentLieAlgebra, j: &ComplexStructure) -> Result<CheckReport, AlgebraError> {
    check_size(alg, j)?;
    let nv = alg.v_dim();
    for (sign, name) in [(-1i64, "+"), (1i64, "-")] {
        // w_a = e_a + sign·i·J e_a ; v_+ uses sign = -1
        let s = Q::from_integer(sign.into());
        let span: Vec<CVec> = (0..nv)
            .map(|a| {
                let mut e = vec![Q::zero(); nv];
                e[a] = Q::one();
                let je = j.apply(&e);
                let full_re = alg.embed_v(&e);
                let full_im: Vec<Q> = alg.embed_v(&je).iter().map(|x| x * &s).collect();
                full_re.into_iter().zip(full_im).map(|(r, i)| GaussianRational::new(r, i)).collect()
            })
            .collect();
        for a in 0..nv {
            for b in a + 1..nv {
                let br = complex_bracket(alg, &span[a], &span[b])?;
                // v-part, then its component in the opposite eigenspace:
                // for v_+ the v_- projection is (w + iJw)/2, for v_- it is (w - iJw)/2
                let w: CVec = alg.v_indices.iter().map(|&k| br[k].clone()).collect();
                if opposite_component_nonzero(j, &w, sign) {
                    return Ok(CheckReport::fail(
                        "Satake A1",
                        CheckFailure::A1 {
                            eigenspace: name.to_string(),
                            left: alg.label(alg.v_indices[a]).to_string(),
                            right: alg.label(alg.v_indices[b]).to_string(),
                        },
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass("Satake A1"))
}

fn opposite_component_nonzero(j: &ComplexStructure, w: &CVec, sign: i64) -> bool {
    let re: Vec<Q> = w.iter().map(|c| c.re.clone()).collect();
    let im: Vec<Q> = w.iter().map(|c| c.im.clone()).collect();
    let jre = j.apply(&re);
    let jim = j.apply(&im);
    // w - sign·iJw, with iJ(re + i im) = -J im + i J re
    let s = Q::from_integer((-sign).into());
    (0..w.len()).any(|k| {
        let r = &re[k] - &(&s * &jim[k]);
        let i = &im[k] + &(&s * &jre[k]);
        !r.is_zero() || !i.is_zero()
    })
}

fn check_derivation_size(alg: &NilpotentLieAlgebra, name: &str, d: &QMatrix) -> Result<(), AlgebraError> {
    if d.nrows() != alg.dim || d.ncols() != alg.dim {
        return Err(AlgebraError::Format {
            context: format!("derivation {name:?}"),
            message: format!("expected a {0}x{0} matrix, found {1}x{2}", alg.dim, d.nrows(), d.ncols()),
        });
    }
    Ok(())
}

/// Leibniz rule on all basis pairs, and preservation of `z` and `v`.
pub fn check_derivations(alg: &NilpotentLieAlgebra, derivations: &DerivationSet) -> Result<CheckReport, AlgebraError> {
    const NAME: &str = "derivations";
    let n = alg.dim;
    for (name, d) in &derivations.generators {
        check_derivation_size(alg, name, d)?;
        for &c in &alg.center_indices {
            if alg.v_indices.iter().any(|&r| !d[(r, c)].is_zero()) {
                return Ok(CheckReport::fail(
                    NAME,
                    CheckFailure::MovesCenter { generator: name.clone(), index: alg.label(c).into() },
                ));
            }
        }
        for &c in &alg.v_indices {
            if alg.center_indices.iter().any(|&r| !d[(r, c)].is_zero()) {
                return Ok(CheckReport::fail(
                    NAME,
                    CheckFailure::MovesComplement { generator: name.clone(), index: alg.label(c).into() },
                ));
            }
        }
        let cols: Vec<Vec<Q>> = (0..n).map(|j| d.column(j)).collect();
        for i in 0..n {
            for k in i + 1..n {
                let (ei, ek) = (alg.basis_vector(i), alg.basis_vector(k));
                let lhs = d.mul_vec(&alg.bracket(&ei, &ek)?);
                let r1 = alg.bracket(&cols[i], &ek)?;
                let r2 = alg.bracket(&ei, &cols[k])?;
                if lhs.iter().zip(r1.iter().zip(&r2)).any(|(l, (a, b))| *l != a + b) {
                    return Ok(CheckReport::fail(
                        NAME,
                        CheckFailure::Leibniz {
                            generator: name.clone(),
                            left: alg.label(i).into(),
                            right: alg.label(k).into(),
                        },
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass(NAME))
}

/// Complex structure from a central circle generator `ξ` of `h`.
///
/// When `(ξ|v)² = -c² I` with `c` a positive rational, the one-parameter group
/// is `exp(tξ)|v = cos(ct) I + sin(ct) ξ/c`, and at `t = π/(2c)` it equals
/// `ξ/c`, which squares to `-I`.
pub fn complex_structure_from_circle(
    alg: &NilpotentLieAlgebra,
    generator: &QMatrix,
) -> Result<ComplexStructure, AlgebraError> {
    check_derivation_size(alg, "circle generator", generator)?;
    let xi = v_block(alg, generator);
    let sq = xi.mul(&xi);
    let nv = alg.v_dim();
    if nv == 0 {
        return Err(AlgebraError::Precondition("v is zero-dimensional".into()));
    }
    let c2 = -sq[(0, 0)].clone();
    if sq != QMatrix::identity(nv).scale(&-c2.clone()) || c2 <= Q::zero() {
        return Err(AlgebraError::Precondition(
            "circle generator does not square to a negative multiple of the identity on v".into(),
        ));
    }
    let c = rational_sqrt(&c2).ok_or_else(|| {
        AlgebraError::Precondition(format!("circle speed squared {c2} is not a rational square"))
    })?;
    Ok(ComplexStructure::new(xi.scale(&c.recip())))
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}
