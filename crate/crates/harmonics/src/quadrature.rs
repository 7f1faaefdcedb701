//! Tensor Gauss–Hermite rules and adaptive Romberg integration.

use std::num::NonZeroUsize;

use gauss_quad::hermite::GaussHermite;
use num_complex::Complex64;

use crate::HarmonicsError;

/// Default Gauss–Hermite order per dimension.
pub const DEFAULT_ORDER: usize = 64;

/// Nodes and weights for `∫ e^{-t²} g(t) dt`.
pub fn gauss_hermite(order: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(order).expect("order must be positive");
    GaussHermite::new(n).as_node_weight_pairs().to_vec()
}

/// `∫_{R^n} e^{-|t|²} g(t) dt` on the tensor grid of `rule`.
///
/// Summation runs in a fixed lexicographic order.
pub fn tensor_gauss_hermite<F>(n: usize, rule: &[(f64, f64)], mut g: F) -> Complex64
where
    F: FnMut(&[f64]) -> Complex64,
{
    let m = rule.len();
    let mut idx = vec![0usize; n];
    let mut t = vec![0.0; n];
    let mut total = Complex64::new(0.0, 0.0);
    loop {
        let mut w = 1.0;
        for (k, &i) in idx.iter().enumerate() {
            t[k] = rule[i].0;
            w *= rule[i].1;
        }
        total += g(&t) * w;
        let mut k = 0;
        loop {
            if k == n {
                return total;
            }
            idx[k] += 1;
            if idx[k] < m {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Result of a one-dimensional adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    /// Difference between the last two Richardson extrapolants.
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Romberg integration of `g` over `[a, b]`: trapezoid sums with step
/// halving and Richardson extrapolation, stopping when successive diagonal
/// entries agree to `rel_tol` (relative) or `abs_tol`.
pub fn romberg<F>(a: f64, b: f64, rel_tol: f64, abs_tol: f64, max_levels: usize, mut g: F) -> Result<Integral, HarmonicsError>
where
    F: FnMut(f64) -> Complex64,
{
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let h0 = b - a;
    let mut trap = (g(a) + g(b)) * (0.5 * h0);
    let mut evals = 2;
    let mut last_err = f64::INFINITY;
    for level in 0..max_levels {
        if level > 0 {
            let pieces = 1usize << (level - 1);
            let h = h0 / (pieces as f64);
            let mut mid = Complex64::new(0.0, 0.0);
            for k in 0..pieces {
                mid += g(a + (k as f64 + 0.5) * h);
            }
            evals += pieces;
            trap = trap * 0.5 + mid * (0.5 * h);
        }
        let mut row = vec![trap];
        let mut factor = 1.0;
        for k in 1..=level {
            factor *= 4.0;
            let prev = &rows[level - 1][k - 1];
            let v = row[k - 1] + (row[k - 1] - prev) / (factor - 1.0);
            row.push(v);
        }
        if level >= 4 {
            let err = (row[level] - rows[level - 1][level - 1]).norm();
            last_err = err;
            if err <= rel_tol * row[level].norm() || err <= abs_tol {
                return Ok(Integral { value: row[level], error_estimate: err, evaluations: evals });
            }
        }
        rows.push(row);
    }
    Err(HarmonicsError::NoConvergence { what: "romberg".into(), estimate: last_err })
}

/// Walks outward from `0` in steps of `step` until `|g|` stays below
/// `cutoff · peak` for two consecutive points, returning the reached
/// positions `(lower, upper)`.
pub fn decay_interval<F>(step: f64, limit: f64, cutoff: f64, mut g: F) -> Result<(f64, f64), HarmonicsError>
where
    F: FnMut(f64) -> f64,
{
    let mut peak = g(0.0);
    let mut ends = [0.0; 2];
    for (side, dir) in [-1.0, 1.0].into_iter().enumerate() {
        let mut quiet = 0;
        let mut x = 0.0;
        while quiet < 2 {
            x += dir * step;
            if x.abs() > limit {
                return Err(HarmonicsError::NoConvergence {
                    what: format!("domain truncation within |x| <= {limit}"),
                    estimate: g(x - dir * step) / peak.max(f64::MIN_POSITIVE),
                });
            }
            let v = g(x);
            peak = peak.max(v);
            quiet = if v < cutoff * peak { quiet + 1 } else { 0 };
        }
        ends[side] = x;
    }
    Ok((ends[0], ends[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn hermite_moments() {
        let rule = gauss_hermite(20);
        let m0: f64 = rule.iter().map(|(_, w)| w).sum();
        let m2: f64 = rule.iter().map(|(t, w)| w * t * t).sum();
        assert!((m0 - PI.sqrt()).abs() < 1e-13);
        assert!((m2 - PI.sqrt() / 2.0).abs() < 1e-13);
    }

    /// `∫ e^{-|t|²} cos(a·t) dt = π^{n/2} e^{-|a|²/4}`.
    #[test]
    fn tensor_rule_oscillatory_gaussian() {
        let rule = gauss_hermite(24);
        let a = [0.7, -1.3, 0.4];
        let v = tensor_gauss_hermite(3, &rule, |t| {
            Complex64::from_polar(1.0, t.iter().zip(&a).map(|(x, y)| x * y).sum())
        });
        let exact = PI.powf(1.5) * (-a.iter().map(|x| x * x).sum::<f64>() / 4.0).exp();
        assert!((v.re - exact).abs() < 1e-13 && v.im.abs() < 1e-13);
    }

    #[test]
    fn romberg_gaussian() {
        let r = romberg(-12.0, 12.0, 1e-14, 0.0, 20, |x| Complex64::new((-x * x / 2.0).exp(), 0.0)).unwrap();
        assert!((r.value.re - (2.0 * PI).sqrt()).abs() < 1e-12);
        assert!(r.error_estimate < 1e-12);
    }

    #[test]
    fn romberg_reports_failure() {
        let r = romberg(0.0, 1.0, 1e-30, 0.0, 6, |x| Complex64::new(x.sqrt(), 0.0));
        assert!(matches!(r, Err(HarmonicsError::NoConvergence { .. })));
    }

    #[test]
    fn decay_interval_brackets_gaussian() {
        let (lo, hi) = decay_interval(0.5, 100.0, 1e-14, |x| (-(x - 1.0) * (x - 1.0)).exp()).unwrap();
        assert!(lo < -4.0 && hi > 6.0);
        assert!(decay_interval(0.5, 3.0, 1e-14, |x| (-x * x / 100.0).exp()).is_err());
    }
}
