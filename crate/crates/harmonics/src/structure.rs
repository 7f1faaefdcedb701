//! Floating-point view of a two-step algebra.

use nalgebra::{DMatrix, DVector};
use nilkit_core::rational::to_f64;
use nilkit_core::{pfaffian_polynomial, NilpotentLieAlgebra, RationalPolynomial};

use crate::HarmonicsError;

/// Structure constants as floats, with the `z`/`v` split and the Pfaffian.
#[derive(Clone, Debug)]
pub struct TwoStepAlgebra {
    pub dim: usize,
    pub center: Vec<usize>,
    pub complement: Vec<usize>,
    /// `[e_i, e_j] = Σ_k c_k e_k` for `i < j`.
    brackets: Vec<(usize, usize, Vec<(usize, f64)>)>,
    pfaffian: RationalPolynomial,
}

impl TwoStepAlgebra {
    pub fn from_algebra(alg: &NilpotentLieAlgebra) -> Result<Self, HarmonicsError> {
        let report = alg.validate()?;
        if !report.is_valid() || !report.two_step {
            return Err(HarmonicsError::Unsupported("numeric path needs a valid two-step algebra".into()));
        }
        let brackets = alg
            .structure
            .iter()
            .map(|(&(i, j), v)| (i, j, v.iter().map(|(&k, c)| (k, to_f64(c))).collect()))
            .collect();
        Ok(Self {
            dim: alg.dim,
            center: alg.center_indices.clone(),
            complement: alg.v_indices.clone(),
            brackets,
            pfaffian: pfaffian_polynomial(alg),
        })
    }

    /// `d` with `dim v = 2d`.
    pub fn half_dim(&self) -> Result<usize, HarmonicsError> {
        let nv = self.complement.len();
        if nv % 2 == 1 {
            return Err(HarmonicsError::Unsupported(format!("dim v = {nv} is odd")));
        }
        Ok(nv / 2)
    }

    pub fn pfaffian(&self) -> &RationalPolynomial {
        &self.pfaffian
    }

    /// Full-length vector with `zeta` on the center coordinates and `w` on
    /// the complement.
    pub fn assemble(&self, zeta: &[f64], w: &[f64]) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        for (&i, &z) in self.center.iter().zip(zeta) {
            out[i] = z;
        }
        for (&i, &x) in self.complement.iter().zip(w) {
            out[i] = x;
        }
        out
    }

    /// `P(ζ)` for `ζ` in center coordinates.
    pub fn p_at(&self, p: &RationalPolynomial, zeta: &[f64]) -> f64 {
        p.eval_f64(self.assemble(zeta, &[]).as_slice())
    }

    /// Matrix of `ad_X = [X, ·]`.
    pub fn ad(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, j, out) in &self.brackets {
            for &(k, c) in out {
                // [x_i e_i, e_j] and [x_j e_j, e_i] = -[e_i, e_j]
                m[(k, *j)] += x[*i] * c;
                m[(k, *i)] -= x[*j] * c;
            }
        }
        m
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.ad(x) * y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nilkit_core::catalog::heisenberg;
    use nilkit_core::catalog::Field;

    #[test]
    fn heisenberg_bracket_and_pfaffian() {
        let h = heisenberg(1, Field::C, (1, 0)).unwrap();
        let a = TwoStepAlgebra::from_algebra(&h.algebra).unwrap();
        assert_eq!(a.half_dim().unwrap(), 1);
        let x = a.assemble(&[0.0], &[1.0, 0.0]);
        let y = a.assemble(&[0.0], &[0.0, 1.0]);
        assert_eq!(a.bracket(&x, &y), a.assemble(&[1.0], &[0.0, 0.0]));
        assert_eq!(a.bracket(&y, &x), a.assemble(&[-1.0], &[0.0, 0.0]));
        assert_eq!(a.p_at(&a.pfaffian().clone(), &[3.0]), 3.0);
    }
}
