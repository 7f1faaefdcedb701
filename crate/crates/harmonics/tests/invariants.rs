use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use nilkit_core::catalog::{heisenberg, Field};
use nilkit_harmonics::orbit::{slice_integral, slice_integral_quadrature};
use nilkit_harmonics::quadrature::gauss_hermite;
use nilkit_harmonics::schrodinger::WavePacket;
use nilkit_harmonics::{
    fourier_inversion, matrix_coefficient_degree, GaussianState, GaussianTestFunction, InversionOptions,
    SchrodingerModel, TwoStepAlgebra,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn h(d: usize) -> TwoStepAlgebra {
    TwoStepAlgebra::from_algebra(&heisenberg(d, Field::C, (d, 0)).unwrap().algebra).unwrap()
}

/// Random SPD matrix `B Bᵀ + I/2` with entries of `B` in `[-0.6, 0.6]`.
fn spd(n: usize, entries: &[f64]) -> DMatrix<f64> {
    let b = DMatrix::from_fn(n, n, |i, j| entries[i * n + j]);
    &b * b.transpose() + DMatrix::identity(n, n) * 0.5
}

fn gaussian_strategy(n: usize) -> impl Strategy<Value = GaussianTestFunction> {
    (prop::collection::vec(-0.6..0.6f64, n * n), prop::collection::vec(-0.5..0.5f64, n), 0.5..2.0f64)
        .prop_map(move |(b, c, amp)| GaussianTestFunction::new(DVector::from_vec(c), spd(n, &b), amp).unwrap())
}

/// `(2π)^{2d} ∫ f(exp zZ) e^{iζz} dz` by a plain Riemann sum on the center
/// line. Uses only pointwise evaluation of `f`.
fn slice_oracle(f: &GaussianTestFunction, alg: &TwoStepAlgebra, zeta: f64) -> Complex64 {
    let h = 2e-3;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in -20_000..=20_000 {
        let z = i as f64 * h;
        let x = alg.assemble(&[z], &[]);
        acc += Complex64::from_polar(f.eval(&x), zeta * z) * h;
    }
    acc * (2.0 * PI).powi(alg.complement.len() as i32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fourier_closed_form_matches_quadrature(f in gaussian_strategy(3), nu in prop::collection::vec(-1.5..1.5f64, 3)) {
        let rule = gauss_hermite(48);
        let nu = DVector::from_vec(nu);
        let (a, b) = (f.fourier(&nu), f.fourier_quadrature(&nu, &rule));
        prop_assert!((a - b).norm() <= 1e-8 * a.norm(), "{} vs {}", a, b);
    }

    #[test]
    fn slice_closed_form_matches_both_quadratures(f in gaussian_strategy(3), zeta in 0.2..3.0f64) {
        let alg = h(1);
        let a = slice_integral(&f, &alg, &[zeta]).unwrap();
        let b = slice_integral_quadrature(&f, &alg, &[zeta], &gauss_hermite(64)).unwrap();
        let c = slice_oracle(&f, &alg, zeta);
        prop_assert!((a - b).norm() <= 1e-8 * a.norm());
        prop_assert!((a - c).norm() <= 1e-8 * a.norm().max(1e-6));
    }

    #[test]
    fn central_character_is_phase_only(
        z in -50.0..50.0f64,
        zeta in prop::sample::select(vec![-2.0, 0.5, 1.0, 3.0]),
        w in 0.5..1.5f64, c in -1.0..1.0f64, p in -1.0..1.0f64, k in 0usize..4,
    ) {
        let m = SchrodingerModel::new(1, zeta).unwrap();
        let u = GaussianState::new(vec![WavePacket::normalized(w, c, p, k)]);
        let v = GaussianState::new(vec![WavePacket::normalized(1.0 / w, -c, 0.5 * p, (k + 1) % 3)]);
        prop_assert!(m.central_character_defect(&u, &v, z).unwrap() < 1e-14);
    }
}

#[test]
fn formal_degree_is_proportional_to_zeta() {
    let u = GaussianState::new(vec![WavePacket::normalized(0.8, 0.2, -0.3, 1)]);
    let v = GaussianState::ground(1);
    let ratios: Vec<f64> = [0.5, 1.0, 2.0, 4.0]
        .iter()
        .map(|&zeta| {
            let r = matrix_coefficient_degree(&SchrodingerModel::new(1, zeta).unwrap(), &u, &v).unwrap();
            assert!(r.tail_fraction < 1e-8);
            r.degree / zeta
        })
        .collect();
    for r in &ratios {
        assert!((r / ratios[0] - 1.0).abs() < 1e-4, "{ratios:?}");
    }
}

#[test]
fn inversion_constant_is_shared_by_different_gaussians() {
    let alg = h(1);
    let opts = InversionOptions::default();
    let samples: Vec<DVector<f64>> = [[0.0, 0.0, 0.0], [0.3, -0.5, 0.2], [-0.4, 0.1, 0.6]]
        .iter()
        .map(|x| DVector::from_row_slice(x))
        .collect();
    let f1 = GaussianTestFunction::standard(3);
    let f2 = GaussianTestFunction::new(DVector::from_vec(vec![0.1, 0.2, -0.1]), spd(3, &[0.3, 0.1, 0.0, -0.2, 0.4, 0.1, 0.0, 0.2, 0.5]), 1.7).unwrap();
    let k1 = fourier_inversion(&f1, &alg, &samples, &opts).unwrap();
    let k2 = fourier_inversion(&f2, &alg, &samples, &opts).unwrap();
    assert!((k1.kappa / k2.kappa - 1.0).abs() < 1e-6);
    assert!(k1.max_rel_error < 1e-6 && k2.max_rel_error < 1e-6);
    assert!(k1.kappa_deviation < 1e-6);
}
