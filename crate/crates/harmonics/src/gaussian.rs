//! Gaussian Schwartz functions in exponential coordinates.

use std::f64::consts::PI;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use num_complex::Complex64;

use crate::quadrature::tensor_gauss_hermite;
use crate::structure::TwoStepAlgebra;
use crate::HarmonicsError;

/// `f(exp X) = amplitude · exp(−½ (X − center)ᵀ A (X − center))`.
#[derive(Clone, Debug)]
pub struct GaussianTestFunction {
    pub center: DVector<f64>,
    pub form: DMatrix<f64>,
    pub amplitude: f64,
    chol: Cholesky<f64, Dyn>,
}

impl PartialEq for GaussianTestFunction {
    fn eq(&self, other: &Self) -> bool {
        self.center == other.center && self.form == other.form && self.amplitude == other.amplitude
    }
}

const SYMMETRY_TOL: f64 = 1e-12;

impl GaussianTestFunction {
    pub fn new(center: DVector<f64>, form: DMatrix<f64>, amplitude: f64) -> Result<Self, HarmonicsError> {
        let n = center.len();
        if form.nrows() != n || form.ncols() != n {
            return Err(HarmonicsError::Dimension { what: "quadratic form", expected: n, found: form.nrows() });
        }
        let scale = form.amax().max(1.0);
        for i in 0..n {
            for j in 0..i {
                if (form[(i, j)] - form[(j, i)]).abs() > SYMMETRY_TOL * scale {
                    return Err(HarmonicsError::NotSymmetric);
                }
            }
        }
        for k in 1..=n {
            let minor = form.view((0, 0), (k, k)).determinant();
            if minor <= SYMMETRY_TOL * scale.powi(k as i32) {
                return Err(HarmonicsError::NotPositiveDefinite { index: k, value: minor });
            }
        }
        let chol = Cholesky::new(form.clone())
            .ok_or(HarmonicsError::NotPositiveDefinite { index: n, value: form.determinant() })?;
        Ok(Self { center, form, amplitude, chol })
    }

    /// `A = I`, centered at the origin, amplitude 1.
    pub fn standard(n: usize) -> Self {
        Self::new(DVector::zeros(n), DMatrix::identity(n, n), 1.0).expect("identity is positive definite")
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn eval(&self, x: &DVector<f64>) -> f64 {
        let d = x - &self.center;
        self.amplitude * (-0.5 * d.dot(&(&self.form * &d))).exp()
    }

    pub fn covariance(&self) -> DMatrix<f64> {
        self.chol.inverse()
    }

    pub fn det_form(&self) -> f64 {
        self.chol.determinant()
    }

    /// `f̂(ν) = amp (2π)^{n/2} det(A)^{−1/2} exp(iν·c − ½ νᵀA⁻¹ν)`.
    pub fn fourier(&self, nu: &DVector<f64>) -> Complex64 {
        let n = self.dim() as f64;
        let sol = self.chol.solve(nu);
        let modulus = self.amplitude * (2.0 * PI).powf(n / 2.0) / self.det_form().sqrt() * (-0.5 * nu.dot(&sol)).exp();
        Complex64::from_polar(modulus, nu.dot(&self.center))
    }

    /// `f̂(ν)` by tensor Gauss–Hermite on `X = c + √2 L⁻ᵀ t` with `A = L Lᵀ`.
    pub fn fourier_quadrature(&self, nu: &DVector<f64>, rule: &[(f64, f64)]) -> Complex64 {
        let n = self.dim();
        let l = self.chol.l();
        let det_l: f64 = (0..n).map(|i| l[(i, i)]).product();
        let scale = self.amplitude * 2f64.powf(n as f64 / 2.0) / det_l;
        let phase0 = nu.dot(&self.center);
        // ν · √2 L⁻ᵀ t = (√2 L⁻¹ ν) · t
        let freq = l.solve_lower_triangular(nu).expect("Cholesky factor is invertible") * 2f64.sqrt();
        let sum = tensor_gauss_hermite(n, rule, |t| {
            let phase: f64 = t.iter().zip(freq.iter()).map(|(a, b)| a * b).sum();
            Complex64::from_polar(1.0, phase)
        });
        sum * Complex64::from_polar(scale, phase0)
    }

    /// `(r_x f)(exp Y) = f(exp Y · exp X)`.
    ///
    /// In a two-step group `exp Y exp X = exp(Y + X + ½[Y, X])`, so the
    /// translate is again Gaussian with `A' = MᵀAM`, `c' = M⁻¹(c − X)` where
    /// `M = I − ½ ad_X` and `M⁻¹ = I + ½ ad_X`.
    pub fn right_translate(&self, alg: &TwoStepAlgebra, x: &DVector<f64>) -> Result<Self, HarmonicsError> {
        if x.len() != self.dim() || alg.dim != self.dim() {
            return Err(HarmonicsError::Dimension { what: "translation", expected: self.dim(), found: x.len() });
        }
        let ad = alg.ad(x);
        let n = self.dim();
        let m = DMatrix::identity(n, n) - &ad * 0.5;
        let m_inv = DMatrix::identity(n, n) + &ad * 0.5;
        let form = m.transpose() * &self.form * &m;
        let form = (&form + form.transpose()) * 0.5;
        let center = m_inv * (&self.center - x);
        Self::new(center, form, self.amplitude)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { amplitude: self.amplitude * factor, ..self.clone() }
    }
}
