//! Schrödinger model of `π_ζ` on `h_{2d+1}` and its matrix coefficients.
//!
//! `π_ζ(x, y, z) φ(t) = e^{iζ(z + y·t + x·y/2)} φ(t + x)` acting on
//! `L²(R^d)`. States are products of Hermite–Gaussian wave packets, so every
//! matrix coefficient factorizes over coordinates.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::quadrature::{gauss_hermite, DEFAULT_ORDER};
use crate::{factorial, HarmonicsError};

#[derive(Clone, Debug)]
pub struct SchrodingerModel {
    pub d: usize,
    pub zeta: f64,
    rule: Vec<(f64, f64)>,
}

/// `a · H_k((t − c)/w) · exp(−(t − c)²/(2w²)) · e^{ipt}` with `H_k` the
/// physicists' Hermite polynomial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WavePacket {
    pub width: f64,
    pub center: f64,
    pub momentum: f64,
    pub order: usize,
    pub amplitude: f64,
}

impl WavePacket {
    /// Unit-norm packet.
    pub fn normalized(width: f64, center: f64, momentum: f64, order: usize) -> Self {
        let norm2 = width * 2f64.powi(order as i32) * factorial(order) * PI.sqrt();
        Self { width, center, momentum, order, amplitude: 1.0 / norm2.sqrt() }
    }

    pub fn ground() -> Self {
        Self::normalized(1.0, 0.0, 0.0, 0)
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let s = (t - self.center) / self.width;
        Complex64::from_polar(self.amplitude * hermite(self.order, s) * (-0.5 * s * s).exp(), self.momentum * t)
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitude * self.amplitude * self.width * 2f64.powi(self.order as i32) * factorial(self.order) * PI.sqrt()
    }
}

/// A product state `φ(t) = Π_k φ_k(t_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianState {
    pub factors: Vec<WavePacket>,
}

impl GaussianState {
    pub fn new(factors: Vec<WavePacket>) -> Self {
        Self { factors }
    }

    pub fn ground(d: usize) -> Self {
        Self { factors: vec![WavePacket::ground(); d] }
    }

    pub fn norm_squared(&self) -> f64 {
        self.factors.iter().map(WavePacket::norm_squared).product()
    }
}

/// `H_k(s)` by the three-term recurrence.
pub fn hermite(k: usize, s: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * s);
    if k == 0 {
        return h0;
    }
    for n in 1..k {
        let h2 = 2.0 * s * h1 - 2.0 * n as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

impl SchrodingerModel {
    pub fn new(d: usize, zeta: f64) -> Result<Self, HarmonicsError> {
        Self::with_order(d, zeta, DEFAULT_ORDER)
    }

    pub fn with_order(d: usize, zeta: f64, order: usize) -> Result<Self, HarmonicsError> {
        if zeta == 0.0 || !zeta.is_finite() {
            return Err(HarmonicsError::ZeroZeta);
        }
        if d == 0 || order == 0 {
            return Err(HarmonicsError::Unsupported("d and the quadrature order must be positive".into()));
        }
        Ok(Self { d, zeta, rule: gauss_hermite(order) })
    }

    fn check(&self, states: &[&GaussianState]) -> Result<(), HarmonicsError> {
        for s in states {
            if s.factors.len() != self.d {
                return Err(HarmonicsError::Dimension { what: "state", expected: self.d, found: s.factors.len() });
            }
        }
        Ok(())
    }

    /// `∫ conj(u(t)) e^{iζyt} v(t + x) dt` for one coordinate.
    ///
    /// The two envelopes combine into one Gaussian of precision `P` and mean
    /// `μ`. Moving the contour to `Im t = ω/P` absorbs the oscillation
    /// `e^{iωt}` into the factor `e^{iωμ − ω²/(2P)}`, leaving a polynomial
    /// against `e^{−s²}` that Gauss–Hermite integrates without aliasing.
    pub fn packet_coefficient(&self, u: &WavePacket, v: &WavePacket, x: f64, y: f64) -> Complex64 {
        let (au, av) = (1.0 / (u.width * u.width), 1.0 / (v.width * v.width));
        let prec = au + av;
        let mean = (u.center * au + (v.center - x) * av) / prec;
        let log_const = -0.5 * (u.center * u.center * au + (v.center - x).powi(2) * av) + 0.5 * prec * mean * mean;
        let scale = (2.0 / prec).sqrt();
        let omega = self.zeta * y + v.momentum - u.momentum;
        let shift = Complex64::new(mean, omega / prec);
        let mut sum = Complex64::new(0.0, 0.0);
        for &(s, w) in &self.rule {
            let t = shift + s * scale;
            sum += hermite_complex(u.order, (t - u.center) / u.width) * hermite_complex(v.order, (t + x - v.center) / v.width) * w;
        }
        let log_mod = log_const - omega * omega / (2.0 * prec);
        sum * Complex64::from_polar(u.amplitude * v.amplitude * scale * log_mod.exp(), omega * mean + v.momentum * x)
    }

    /// `⟨u, π_ζ(x, y, z) v⟩`.
    pub fn coefficient(&self, u: &GaussianState, v: &GaussianState, x: &[f64], y: &[f64], z: f64) -> Complex64 {
        let mut out = Complex64::from_polar(1.0, self.zeta * z);
        for k in 0..self.d {
            let phase = Complex64::from_polar(1.0, 0.5 * self.zeta * x[k] * y[k]);
            out *= self.packet_coefficient(&u.factors[k], &v.factors[k], x[k], y[k]) * phase;
        }
        out
    }

    /// `⟨u, v⟩ = ∫ conj(u) v`.
    pub fn inner_product(&self, u: &GaussianState, v: &GaussianState) -> Complex64 {
        (0..self.d).map(|k| self.packet_coefficient(&u.factors[k], &v.factors[k], 0.0, 0.0)).product()
    }

    /// `| |⟨u, π_ζ(exp zZ) v⟩| − |⟨u, v⟩| |`.
    pub fn central_character_defect(&self, u: &GaussianState, v: &GaussianState, z: f64) -> Result<f64, HarmonicsError> {
        self.check(&[u, v])?;
        let zeros = vec![0.0; self.d];
        Ok((self.coefficient(u, v, &zeros, &zeros, z).norm() - self.inner_product(u, v).norm()).abs())
    }
}

fn hermite_complex(k: usize, s: Complex64) -> Complex64 {
    let (mut h0, mut h1) = (Complex64::new(1.0, 0.0), s * 2.0);
    if k == 0 {
        return h0;
    }
    for n in 1..k {
        let h2 = s * h1 * 2.0 - h0 * (2.0 * n as f64);
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// Outcome of integrating `|f_{u,v}|²` over `N/Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeReport {
    pub zeta: f64,
    /// `∫_{N/Z} |⟨u, π_ζ(n) v⟩|² dn`.
    pub integral: f64,
    /// `integral / (‖u‖² ‖v‖²)`, the empirical `1/deg π_ζ`.
    pub inverse_degree: f64,
    pub degree: f64,
    /// `(|ζ|/2π)^d` from Plancherel in `y`.
    pub expected_degree: f64,
    /// Largest, over coordinates, share of the integral outside the inner
    /// three quarters of the integration box.
    pub tail_fraction: f64,
    /// Relative change at the last grid refinement.
    pub error_estimate: f64,
    pub grid_points: usize,
}

/// Trapezoid sum over a box, refined by doubling until the change relative
/// to `∫|g|` drops below `tol`. Returns `(value, inner, change, points)`
/// where `inner` is the part of the sum inside the central three quarters
/// of the box.
fn box_trapezoid<F>(
    cx: f64,
    cy: f64,
    hx: f64,
    hy: f64,
    tol: f64,
    mut g: F,
) -> Result<(Complex64, Complex64, f64, usize), HarmonicsError>
where
    F: FnMut(f64, f64) -> Complex64,
{
    let mut n = 32usize;
    let mut prev: Option<Complex64> = None;
    loop {
        let (dx, dy) = (2.0 * hx / n as f64, 2.0 * hy / n as f64);
        let mut total = Complex64::new(0.0, 0.0);
        let mut inner = Complex64::new(0.0, 0.0);
        let mut mass = 0.0;
        for i in 0..=n {
            let x = -hx + i as f64 * dx;
            let wx = if i == 0 || i == n { 0.5 } else { 1.0 };
            for j in 0..=n {
                let y = -hy + j as f64 * dy;
                let wy = if j == 0 || j == n { 0.5 } else { 1.0 };
                let v = g(cx + x, cy + y) * (wx * wy * dx * dy);
                total += v;
                mass += v.norm();
                if x.abs() <= 0.75 * hx && y.abs() <= 0.75 * hy {
                    inner += v;
                }
            }
        }
        if let Some(p) = prev {
            let change = (total - p).norm() / mass.max(f64::MIN_POSITIVE);
            if change < tol {
                return Ok((total, inner, change, (n + 1) * (n + 1)));
            }
            if n >= 2048 {
                return Err(HarmonicsError::NoConvergence { what: "matrix coefficient grid".into(), estimate: change });
            }
        }
        prev = Some(total);
        n *= 2;
    }
}

/// Half-widths and centre of the box carrying the coefficient of one
/// coordinate pair.
fn packet_box(zeta: f64, u: &WavePacket, v: &WavePacket) -> (f64, f64, f64, f64) {
    let spread = ((2 * u.order.max(v.order) + 1) as f64).sqrt();
    let hx = 10.0 * spread * (u.width * u.width + v.width * v.width).sqrt();
    let hy = 10.0 * spread * (1.0 / (u.width * u.width) + 1.0 / (v.width * v.width)).sqrt() / zeta.abs();
    (v.center - u.center, (u.momentum - v.momentum) / zeta, hx, hy)
}

/// `∫_{N/Z} f_{u,v} · conj(f_{u',v'})` together with the tail share; the
/// integral factorizes over the `d` coordinate pairs.
pub fn coefficient_overlap(
    model: &SchrodingerModel,
    (u, v): (&GaussianState, &GaussianState),
    (u2, v2): (&GaussianState, &GaussianState),
    tol: f64,
) -> Result<(Complex64, f64, f64, usize), HarmonicsError> {
    model.check(&[u, v, u2, v2])?;
    let mut total = Complex64::new(1.0, 0.0);
    let mut tail: f64 = 0.0;
    let mut change: f64 = 0.0;
    let mut points = 1;
    for k in 0..model.d {
        let (a, b, a2, b2) = (&u.factors[k], &v.factors[k], &u2.factors[k], &v2.factors[k]);
        let (cx, cy, hx, hy) = packet_box(model.zeta, a, b);
        let (_, _, hx2, hy2) = packet_box(model.zeta, a2, b2);
        let (val, inner, ch, pts) = box_trapezoid(cx, cy, hx.max(hx2), hy.max(hy2), tol, |x, y| {
            model.packet_coefficient(a, b, x, y) * model.packet_coefficient(a2, b2, x, y).conj()
        })?;
        total *= val;
        tail = tail.max((val - inner).norm() / val.norm().max(f64::MIN_POSITIVE));
        change = change.max(ch);
        points *= pts;
    }
    Ok((total, tail, change, points))
}

/// Integrates `|⟨u, π_ζ(n) v⟩|²` over `N/Z` by trapezoid quadrature.
pub fn matrix_coefficient_degree(
    model: &SchrodingerModel,
    u: &GaussianState,
    v: &GaussianState,
) -> Result<DegreeReport, HarmonicsError> {
    let (val, tail, change, points) = coefficient_overlap(model, (u, v), (u, v), 1e-12)?;
    let integral = val.re;
    let inverse_degree = integral / (u.norm_squared() * v.norm_squared());
    Ok(DegreeReport {
        zeta: model.zeta,
        integral,
        inverse_degree,
        degree: 1.0 / inverse_degree,
        expected_degree: (model.zeta.abs() / (2.0 * PI)).powi(model.d as i32),
        tail_fraction: tail,
        error_estimate: change,
        grid_points: points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Riemann sum on a fine grid, independent of the Gauss–Hermite path.
    fn brute_inner(u: &WavePacket, v: &WavePacket, zeta: f64, x: f64, y: f64) -> Complex64 {
        let (n, h) = (40_000, 1e-3);
        (0..n)
            .map(|i| {
                let t = -20.0 + i as f64 * h;
                u.eval(t).conj() * Complex64::from_polar(1.0, zeta * y * t) * v.eval(t + x) * h
            })
            .sum()
    }

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(0, 0.7), 1.0);
        assert_eq!(hermite(1, 0.5), 1.0);
        assert!((hermite(3, 2.0) - (8.0 * 8.0 - 12.0 * 2.0)).abs() < 1e-12);
    }

    #[test]
    fn packets_are_normalized() {
        let m = SchrodingerModel::new(1, 1.0).unwrap();
        for p in [WavePacket::ground(), WavePacket::normalized(0.7, 1.2, -0.4, 3)] {
            let s = GaussianState::new(vec![p]);
            assert!((m.inner_product(&s, &s).re - 1.0).abs() < 1e-13);
            assert!((s.norm_squared() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn packet_coefficient_matches_riemann_sum() {
        let m = SchrodingerModel::new(1, 1.7).unwrap();
        let u = WavePacket::normalized(0.8, 0.3, 0.5, 1);
        let v = WavePacket::normalized(1.3, -0.2, -0.1, 2);
        for (x, y) in [(0.0, 0.0), (0.7, -1.1), (-1.5, 0.4)] {
            let a = m.packet_coefficient(&u, &v, x, y);
            let b = brute_inner(&u, &v, 1.7, x, y);
            assert!((a - b).norm() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn zero_zeta_rejected() {
        assert!(matches!(SchrodingerModel::new(1, 0.0), Err(HarmonicsError::ZeroZeta)));
    }

    #[test]
    fn ground_state_degree_is_zeta_over_two_pi() {
        for zeta in [0.5, 1.0, -2.0] {
            let m = SchrodingerModel::new(1, zeta).unwrap();
            let g = GaussianState::ground(1);
            let r = matrix_coefficient_degree(&m, &g, &g).unwrap();
            assert!((r.degree / r.expected_degree - 1.0).abs() < 1e-9, "{r:?}");
            assert!(r.tail_fraction < 1e-8);
        }
    }

    #[test]
    fn product_states_in_two_variables() {
        let m = SchrodingerModel::new(2, 1.5).unwrap();
        let u = GaussianState::new(vec![WavePacket::normalized(0.9, 0.1, 0.0, 0), WavePacket::normalized(1.2, 0.0, 0.3, 1)]);
        let v = GaussianState::new(vec![WavePacket::normalized(1.1, -0.3, 0.2, 1), WavePacket::ground()]);
        let r = matrix_coefficient_degree(&m, &u, &v).unwrap();
        assert!((r.degree / r.expected_degree - 1.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn orthogonal_states_give_orthogonal_coefficients() {
        let m = SchrodingerModel::new(1, 1.0).unwrap();
        let u = GaussianState::new(vec![WavePacket::normalized(1.0, 0.0, 0.0, 0)]);
        let u2 = GaussianState::new(vec![WavePacket::normalized(1.0, 0.0, 0.0, 1)]);
        let v = GaussianState::new(vec![WavePacket::normalized(0.8, 0.5, 0.2, 0)]);
        assert!(m.inner_product(&u, &u2).norm() < 1e-14);
        let (ov, _, _, _) = coefficient_overlap(&m, (&u, &v), (&u2, &v), 1e-12).unwrap();
        assert!(ov.norm() < 1e-6);
    }

    #[test]
    fn central_action_is_a_phase() {
        let m = SchrodingerModel::new(1, 2.0).unwrap();
        let u = GaussianState::new(vec![WavePacket::normalized(0.9, 0.2, 0.1, 1)]);
        let v = GaussianState::new(vec![WavePacket::normalized(1.1, 0.0, -0.3, 1)]);
        for z in [0.3, -4.0, 17.0] {
            assert!(m.central_character_defect(&u, &v, z).unwrap() < 1e-15);
        }
    }
}
