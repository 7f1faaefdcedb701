//! Orbit integrals, the character formula and Fourier inversion.

use std::f64::consts::PI;

use nalgebra::{Cholesky, DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::gaussian::GaussianTestFunction;
use crate::quadrature::{decay_interval, romberg, tensor_gauss_hermite};
use crate::structure::TwoStepAlgebra;
use crate::{orbit_constant, HarmonicsError};

/// Below this `|P(ζ)|` the character formula is treated as singular.
pub const SINGULAR_P: f64 = 1e-12;

/// `f̂` at `ν = (ζ, w)`, with `w` the coordinates on `z^⊥`.
pub fn orbit_fourier(f: &GaussianTestFunction, alg: &TwoStepAlgebra, zeta: &[f64], w: &[f64]) -> Result<Complex64, HarmonicsError> {
    check_dims(f, alg, zeta)?;
    if w.len() != alg.complement.len() {
        return Err(HarmonicsError::Dimension { what: "orbit coordinate", expected: alg.complement.len(), found: w.len() });
    }
    Ok(f.fourier(&alg.assemble(zeta, w)))
}

fn check_dims(f: &GaussianTestFunction, alg: &TwoStepAlgebra, zeta: &[f64]) -> Result<(), HarmonicsError> {
    if f.dim() != alg.dim {
        return Err(HarmonicsError::Dimension { what: "test function", expected: alg.dim, found: f.dim() });
    }
    if zeta.len() != alg.center.len() {
        return Err(HarmonicsError::Dimension { what: "zeta", expected: alg.center.len(), found: zeta.len() });
    }
    Ok(())
}

/// Precomputed pieces of `ζ ↦ ∫_{z^⊥} f̂(ζ + w) dw` for one Gaussian.
///
/// With `Σ = A⁻¹` split into center (`z`) and complement (`w`) blocks, the
/// `w`-integral of `exp(iν·c − ½νᵀΣν)` is Gaussian with matrix `Σ_ww` and
/// linear term `b = i c_w − Σ_wz ζ`.
#[derive(Clone, Debug)]
pub struct SlicePlan {
    prefactor: f64,
    c_z: DVector<f64>,
    c_w: DVector<f64>,
    s_zz: DMatrix<f64>,
    s_wz: DMatrix<f64>,
    s_ww: Cholesky<f64, nalgebra::Dyn>,
}

impl SlicePlan {
    pub fn new(f: &GaussianTestFunction, alg: &TwoStepAlgebra) -> Result<Self, HarmonicsError> {
        if f.dim() != alg.dim {
            return Err(HarmonicsError::Dimension { what: "test function", expected: alg.dim, found: f.dim() });
        }
        let sigma = f.covariance();
        let pick = |rows: &[usize], cols: &[usize]| DMatrix::from_fn(rows.len(), cols.len(), |i, j| sigma[(rows[i], cols[j])]);
        let (z, w) = (&alg.center, &alg.complement);
        let s_ww_mat = pick(w, w);
        let k = w.len() as f64;
        let n = alg.dim as f64;
        let s_ww = Cholesky::new(s_ww_mat).ok_or(HarmonicsError::NotPositiveDefinite { index: w.len(), value: 0.0 })?;
        let prefactor = f.amplitude * (2.0 * PI).powf((n + k) / 2.0) / (f.det_form() * s_ww.determinant()).sqrt();
        Ok(Self {
            prefactor,
            c_z: DVector::from_iterator(z.len(), z.iter().map(|&i| f.center[i])),
            c_w: DVector::from_iterator(w.len(), w.iter().map(|&i| f.center[i])),
            s_zz: pick(z, z),
            s_wz: pick(w, z),
            s_ww,
        })
    }

    pub fn eval(&self, zeta: &DVector<f64>) -> Complex64 {
        let shift = &self.s_wz * zeta;
        // b = i c_w − shift; ½ bᵀ S⁻¹ b split into real and imaginary parts
        let sol_c = self.s_ww.solve(&self.c_w);
        let sol_s = self.s_ww.solve(&shift);
        let quad_re = 0.5 * (shift.dot(&sol_s) - self.c_w.dot(&sol_c));
        let quad_im = -self.c_w.dot(&sol_s);
        let re = -0.5 * zeta.dot(&(&self.s_zz * zeta)) + quad_re;
        let im = zeta.dot(&self.c_z) + quad_im;
        Complex64::from_polar(self.prefactor * re.exp(), im)
    }
}

/// `∫_{O(ζ)} f̂ dν` in closed form.
pub fn slice_integral(f: &GaussianTestFunction, alg: &TwoStepAlgebra, zeta: &[f64]) -> Result<Complex64, HarmonicsError> {
    check_dims(f, alg, zeta)?;
    Ok(SlicePlan::new(f, alg)?.eval(&DVector::from_row_slice(zeta)))
}

/// The same integral by quadrature on the group side.
///
/// Integrating `f̂` over `w ∈ z^⊥` collapses the complement directions of the
/// Fourier integral, leaving `(2π)^k ∫_z f(exp Z) e^{iζ(Z)} dZ`. The
/// remaining Gaussian integral over the center runs through tensor
/// Gauss–Hermite with `f` evaluated pointwise.
pub fn slice_integral_quadrature(
    f: &GaussianTestFunction,
    alg: &TwoStepAlgebra,
    zeta: &[f64],
    rule: &[(f64, f64)],
) -> Result<Complex64, HarmonicsError> {
    check_dims(f, alg, zeta)?;
    let z = &alg.center;
    let m = z.len();
    let a_zz = DMatrix::from_fn(m, m, |i, j| f.form[(z[i], z[j])]);
    let chol = Cholesky::new(a_zz.clone()).ok_or(HarmonicsError::NotPositiveDefinite { index: m, value: 0.0 })?;
    // center the rule at the maximizer of f on z: A_zz (Z − c_z) = A_zw c_w
    let mut rhs = DVector::zeros(m);
    for (i, &zi) in z.iter().enumerate() {
        for &wj in &alg.complement {
            rhs[i] += f.form[(zi, wj)] * f.center[wj];
        }
    }
    let c_z = DVector::from_iterator(m, z.iter().map(|&i| f.center[i]));
    let peak = &c_z + chol.solve(&rhs);
    let l = chol.l();
    let det_l: f64 = (0..m).map(|i| l[(i, i)]).product();
    let lt = l.transpose();
    let jac = 2f64.powf(m as f64 / 2.0) / det_l;
    let sum = tensor_gauss_hermite(m, rule, |t| {
        let t = DVector::from_row_slice(t);
        let off = lt.solve_upper_triangular(&t).expect("Cholesky factor is invertible") * 2f64.sqrt();
        let zz = &peak + off;
        let x = alg.assemble(zz.as_slice(), &[]);
        let phase: f64 = zz.iter().zip(zeta).map(|(a, b)| a * b).sum();
        Complex64::from_polar(f.eval(&x) * t.norm_squared().exp(), phase)
    });
    Ok(sum * jac * (2.0 * PI).powi(alg.complement.len() as i32))
}

fn checked_p(alg: &TwoStepAlgebra, zeta: &[f64]) -> Result<f64, HarmonicsError> {
    if zeta.iter().all(|z| *z == 0.0) {
        return Err(HarmonicsError::ZeroZeta);
    }
    let p = alg.p_at(alg.pfaffian(), zeta);
    if p.abs() <= SINGULAR_P {
        return Err(HarmonicsError::SingularParameter { zeta: zeta.to_vec(), p });
    }
    Ok(p)
}

/// `Θ_{π_ζ}(f) = c⁻¹ |P(ζ)|⁻¹ ∫_{O(ζ)} f̂ dν`.
pub fn character(f: &GaussianTestFunction, alg: &TwoStepAlgebra, zeta: &[f64]) -> Result<Complex64, HarmonicsError> {
    let p = checked_p(alg, zeta)?;
    let d = alg.half_dim()?;
    Ok(slice_integral(f, alg, zeta)? / (orbit_constant(d) * p.abs()))
}

/// [`character`] with the orbit integral done by quadrature.
pub fn character_quadrature(
    f: &GaussianTestFunction,
    alg: &TwoStepAlgebra,
    zeta: &[f64],
    rule: &[(f64, f64)],
) -> Result<Complex64, HarmonicsError> {
    let p = checked_p(alg, zeta)?;
    let d = alg.half_dim()?;
    Ok(slice_integral_quadrature(f, alg, zeta, rule)? / (orbit_constant(d) * p.abs()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct InversionOptions {
    /// Hard cap on `|ζ|` for the truncated domain.
    pub zeta_max: f64,
    /// Truncation threshold relative to the integrand's peak.
    pub cutoff: f64,
    pub step: f64,
    pub rel_tol: f64,
    pub max_levels: usize,
}

impl Default for InversionOptions {
    fn default() -> Self {
        Self { zeta_max: 200.0, cutoff: 1e-14, step: 0.25, rel_tol: 1e-12, max_levels: 22 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InversionPoint {
    pub x: Vec<f64>,
    pub recovered: Complex64,
    pub truth: f64,
    pub zeta_range: (f64, f64),
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InversionReport {
    pub points: Vec<InversionPoint>,
    pub kappa: f64,
    pub kappa_expected: f64,
    /// `|κ − (2π)^{dim n}| / (2π)^{dim n}`.
    pub kappa_deviation: f64,
    /// `max |recovered/κ − f(x)| / |f(x)|`.
    pub max_rel_error: f64,
    /// Largest `|Im recovered| / κ`.
    pub max_imag: f64,
    pub options: InversionOptions,
}

impl InversionReport {
    /// `recovered / κ` at each point.
    pub fn normalized(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.recovered.re / self.kappa).collect()
    }

    /// Ratios `recovered / f(x)`, the pointwise estimates of `κ`.
    pub fn pointwise_kappa(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.recovered.re / p.truth).collect()
    }
}

/// `c ∫_{z*} Θ_{π_ζ}(r_x f) |P(ζ)| dζ` at one point `x`, for one-dimensional
/// centers.
///
/// Where `|P(ζ)|` is below [`SINGULAR_P`] the integrand is replaced by its
/// regular limit, the orbit integral itself.
pub fn inversion_integral(
    f: &GaussianTestFunction,
    alg: &TwoStepAlgebra,
    x: &DVector<f64>,
    opts: &InversionOptions,
) -> Result<InversionPoint, HarmonicsError> {
    if alg.center.len() != 1 {
        return Err(HarmonicsError::Unsupported(format!("inversion needs dim z = 1, found {}", alg.center.len())));
    }
    let d = alg.half_dim()?;
    let c = orbit_constant(d);
    let translated = f.right_translate(alg, x)?;
    let plan = SlicePlan::new(&translated, alg)?;
    let p = alg.pfaffian();
    let integrand = |zeta: f64| -> Complex64 {
        let pz = alg.p_at(p, &[zeta]).abs();
        let slice = plan.eval(&DVector::from_element(1, zeta));
        if pz > SINGULAR_P {
            let theta = slice / (c * pz);
            theta * (c * pz)
        } else {
            slice
        }
    };
    let (lo, hi) = decay_interval(opts.step, opts.zeta_max, opts.cutoff, |z| integrand(z).norm())?;
    let result = romberg(lo, hi, opts.rel_tol, 0.0, opts.max_levels, integrand).map_err(|e| match e {
        HarmonicsError::NoConvergence { estimate, .. } => {
            HarmonicsError::NoConvergence { what: format!("zeta integral at x = {:?}", x.as_slice()), estimate }
        }
        other => other,
    })?;
    Ok(InversionPoint {
        x: x.as_slice().to_vec(),
        recovered: result.value,
        truth: f.eval(x),
        zeta_range: (lo, hi),
        error_estimate: result.error_estimate,
        evaluations: result.evaluations,
    })
}

/// Runs [`inversion_integral`] at every sample point and fits one constant
/// `κ` by least squares, `κ = Σ r_i f_i / Σ f_i²`.
pub fn fourier_inversion(
    f: &GaussianTestFunction,
    alg: &TwoStepAlgebra,
    samples: &[DVector<f64>],
    opts: &InversionOptions,
) -> Result<InversionReport, HarmonicsError> {
    let points: Vec<InversionPoint> =
        samples.par_iter().map(|x| inversion_integral(f, alg, x, opts)).collect::<Result<_, _>>()?;
    let num: f64 = points.iter().map(|p| p.recovered.re * p.truth).sum();
    let den: f64 = points.iter().map(|p| p.truth * p.truth).sum();
    if den == 0.0 {
        return Err(HarmonicsError::Unsupported("all sample values vanish".into()));
    }
    let kappa = num / den;
    let kappa_expected = (2.0 * PI).powi(alg.dim as i32);
    let max_rel_error = points
        .iter()
        .map(|p| (p.recovered.re / kappa - p.truth).abs() / p.truth.abs())
        .fold(0.0, f64::max);
    let max_imag = points.iter().map(|p| p.recovered.im.abs() / kappa).fold(0.0, f64::max);
    Ok(InversionReport {
        points,
        kappa,
        kappa_expected,
        kappa_deviation: (kappa - kappa_expected).abs() / kappa_expected,
        max_rel_error,
        max_imag,
        options: opts.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_hermite;
    use nilkit_core::catalog::{heisenberg, Field};

    fn h(d: usize) -> TwoStepAlgebra {
        TwoStepAlgebra::from_algebra(&heisenberg(d, Field::C, (d, 0)).unwrap().algebra).unwrap()
    }

    fn skewed(n: usize) -> GaussianTestFunction {
        let mut a = DMatrix::identity(n, n) * 1.5;
        for i in 0..n - 1 {
            a[(i, i + 1)] = 0.3;
            a[(i + 1, i)] = 0.3;
        }
        let c = DVector::from_fn(n, |i, _| 0.2 * i as f64 - 0.3);
        GaussianTestFunction::new(c, a, 0.8).unwrap()
    }

    /// For the standard Gaussian on `h3`, `∫_{R²} (2π)^{3/2} e^{−(ζ² + |w|²)/2} dw
    /// = (2π)^{5/2} e^{−ζ²/2}`.
    #[test]
    fn standard_slice_on_h3() {
        let alg = h(1);
        let f = GaussianTestFunction::standard(3);
        let got = slice_integral(&f, &alg, &[1.0]).unwrap();
        let expect = (2.0 * PI).powf(2.5) * (-0.5f64).exp();
        assert!((got.re - expect).abs() < 1e-10 * expect && got.im.abs() < 1e-12);
        let theta = character(&f, &alg, &[1.0]).unwrap();
        assert!((theta.re - expect / 2.0).abs() < 1e-10 * expect);
    }

    #[test]
    fn closed_form_and_quadrature_slices_agree() {
        let rule = gauss_hermite(64);
        for d in [1, 2] {
            let alg = h(d);
            let f = skewed(2 * d + 1);
            for zeta in [0.5, -1.0, 2.5] {
                let a = slice_integral(&f, &alg, &[zeta]).unwrap();
                let b = slice_integral_quadrature(&f, &alg, &[zeta], &rule).unwrap();
                assert!((a - b).norm() <= 1e-8 * a.norm(), "d={d} zeta={zeta}: {a} vs {b}");
                let t1 = character(&f, &alg, &[zeta]).unwrap();
                let t2 = character_quadrature(&f, &alg, &[zeta], &rule).unwrap();
                assert!((t1 - t2).norm() <= 1e-8 * t1.norm());
            }
        }
    }

    #[test]
    fn character_is_linear_and_even() {
        let alg = h(1);
        let f = GaussianTestFunction::new(DVector::zeros(3), DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0, 3.0])), 1.0).unwrap();
        let a = character(&f, &alg, &[1.3]).unwrap();
        let b = character(&f.scaled(2.5), &alg, &[1.3]).unwrap();
        assert!((b - a * 2.5).norm() < 1e-12 * b.norm());
        let c = character(&f, &alg, &[-1.3]).unwrap();
        assert!((a - c).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn character_rejects_singular_zeta() {
        let alg = h(1);
        let f = GaussianTestFunction::standard(3);
        assert!(matches!(character(&f, &alg, &[0.0]), Err(HarmonicsError::ZeroZeta)));
        assert!(matches!(character(&f, &alg, &[1e-13]), Err(HarmonicsError::SingularParameter { .. })));
    }

    #[test]
    fn inversion_recovers_identity_value() {
        let alg = h(1);
        let f = GaussianTestFunction::standard(3);
        let opts = InversionOptions::default();
        let pt = inversion_integral(&f, &alg, &DVector::zeros(3), &opts).unwrap();
        let kappa = (2.0 * PI).powi(3);
        assert!((pt.recovered.re / kappa - 1.0).abs() < 1e-6);
        let far = DVector::from_vec(vec![0.0, 12.0, 0.0]);
        let pt = inversion_integral(&f, &alg, &far, &opts).unwrap();
        assert!((pt.recovered.re / kappa).abs() < 1e-8);
    }

    #[test]
    fn inversion_reports_truncation_failure() {
        let alg = h(1);
        // very wide in ζ because A is steep in the center direction
        let f = GaussianTestFunction::new(DVector::zeros(3), DMatrix::from_diagonal(&DVector::from_vec(vec![1e4, 1.0, 1.0])), 1.0).unwrap();
        let opts = InversionOptions { zeta_max: 5.0, ..Default::default() };
        assert!(matches!(
            inversion_integral(&f, &alg, &DVector::zeros(3), &opts),
            Err(HarmonicsError::NoConvergence { .. })
        ));
    }
}
