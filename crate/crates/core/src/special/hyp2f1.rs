//! Gauss hypergeometric series on `[0, 1)`.
//!
//! Direct summation below `x = 0.75`; beyond that the `x -> 1 - x`
//! connection formula, in the logarithm-free form available when
//! `c - a - b = 1/2` (the only case arising from the boundary equation,
//! where the identity holds exactly).

use super::gamma::{gamma_fn, reciprocal_gamma};
use super::SpecialError;

const SERIES_CAP: usize = 600;
const SWITCH_X: f64 = 0.75;

/// `n` such that `x = -n` exactly, if any.
fn nonpos_int(x: f64) -> Option<usize> {
    if x <= 0.0 && x == x.round() && x >= -1e9 {
        Some((-x) as usize)
    } else {
        None
    }
}

/// Coefficients of the Gauss series `sum t_k x^k`, shared by the profile
/// evaluators. For terminating parameter sets the vector is the exact
/// polynomial.
#[derive(Debug, Clone)]
pub struct Hyp2f1Series {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    coeffs: Vec<f64>,
    terminating: bool,
}

impl Hyp2f1Series {
    /// Build coefficients; fails when `c` hits a pole before the series
    /// terminates.
    pub fn build(a: f64, b: f64, c: f64) -> Result<Self, SpecialError> {
        let stop = match (nonpos_int(a), nonpos_int(b)) {
            (Some(n), Some(m)) => Some(n.min(m)),
            (Some(n), None) => Some(n),
            (None, Some(m)) => Some(m),
            (None, None) => None,
        };
        if let Some(cn) = nonpos_int(c) {
            // pole of (c)_k enters at k = cn + 1 unless the series stops first
            if stop.is_none_or(|n| n > cn) {
                return Err(SpecialError::CPole(c));
            }
        }
        let len = stop.map_or(SERIES_CAP, |n| n + 1);
        let mut coeffs = Vec::with_capacity(len.min(SERIES_CAP));
        let mut t = 1.0f64;
        for k in 0..len {
            coeffs.push(t);
            if k + 1 == len {
                break;
            }
            let kf = k as f64;
            t *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
        }
        Ok(Hyp2f1Series {
            a,
            b,
            c,
            coeffs,
            terminating: stop.is_some(),
        })
    }

    pub fn is_terminating(&self) -> bool {
        self.terminating
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner evaluation of the (possibly truncated) series.
    pub fn value(&self, x: f64) -> f64 {
        let mut acc = 0.0f64;
        for &t in self.coeffs.iter().rev() {
            acc = acc * x + t;
        }
        acc
    }

    /// Value plus first and second derivatives with respect to `x`.
    pub fn value_d1_d2(&self, x: f64) -> (f64, f64, f64) {
        let (mut f, mut d1, mut d2) = (0.0f64, 0.0f64, 0.0f64);
        for &t in self.coeffs.iter().rev() {
            d2 = d2 * x + 2.0 * d1;
            d1 = d1 * x + f;
            f = f * x + t;
        }
        (f, d1, d2)
    }

    /// Geometric bound on the dropped tail at `x`, relative to the last
    /// kept term.
    pub fn tail_bound(&self, x: f64) -> f64 {
        if self.terminating || x == 0.0 {
            return 0.0;
        }
        let k = self.coeffs.len() - 1;
        let last = self.coeffs[k] * x.powi(k as i32);
        let ax = x.abs();
        if ax >= 1.0 {
            return f64::INFINITY;
        }
        last.abs() * ax / (1.0 - ax)
    }
}

/// Gauss hypergeometric function for `x` in `[0, 1)`.
///
/// Terminating series are summed exactly; otherwise direct summation is
/// used up to `x = 0.75` and the `1 - x` connection formula beyond,
/// relying on `c - a - b = 1/2`. Direct summation elsewhere reports a
/// precision loss when the tail bound is not negligible.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64, SpecialError> {
    if !(0.0..1.0).contains(&x) {
        return Err(SpecialError::OutOfRange(x));
    }
    let series = Hyp2f1Series::build(a, b, c)?;
    if series.is_terminating() || x <= SWITCH_X {
        let value = series.value(x);
        let bound = series.tail_bound(x);
        let tol = 1e-12 * (1.0 + value.abs());
        if bound > tol {
            return Err(SpecialError::PrecisionLoss { bound, tol });
        }
        return Ok(value);
    }
    if (c - a - b - 0.5).abs() > 1e-8 {
        // outside the half-integer family: fall back to the direct series
        // and let the tail bound decide
        let value = series.value(x);
        let bound = series.tail_bound(x);
        let tol = 1e-12 * (1.0 + value.abs());
        if bound > tol {
            return Err(SpecialError::PrecisionLoss { bound, tol });
        }
        return Ok(value);
    }
    connection_half(a, b, c, x)
}

/// `F(a,b;c;x)` for `c - a - b = 1/2` via the two-term expansion around
/// `x = 1`:
///
/// ```text
/// F = K1 F(a,b;1/2;y) + K2 sqrt(y) F(c-a,c-b;3/2;y),   y = 1 - x
/// K1 = gamma(c) gamma(1/2) / (gamma(c-a) gamma(c-b))
/// K2 = gamma(c) gamma(-1/2) / (gamma(a) gamma(b))
/// ```
fn connection_half(a: f64, b: f64, c: f64, x: f64) -> Result<f64, SpecialError> {
    let y = 1.0 - x;
    let gc = gamma_fn(c);
    if gc.pole {
        return Err(SpecialError::CPole(c));
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let k1 = gc.value * sqrt_pi * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
    let k2 = gc.value * (-2.0 * sqrt_pi) * reciprocal_gamma(a) * reciprocal_gamma(b);
    let s1 = Hyp2f1Series::build(a, b, 0.5)?;
    let s2 = Hyp2f1Series::build(c - a, c - b, 1.5)?;
    Ok(k1 * s1.value(y) + k2 * y.sqrt() * s2.value(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_series_at_origin() {
        assert_eq!(gauss_2f1(0.3, -2.2, 1.1, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn one_term_polynomial() {
        // a = -1: F = 1 - (b/c) x
        for &(b, c, x) in &[(0.7, 1.5, 0.3), (2.0, 0.4, 0.9), (-3.5, 2.0, 0.99)] {
            let v = gauss_2f1(-1.0, b, c, x).unwrap();
            assert!((v - (1.0 - b / c * x)).abs() < 1e-14);
        }
    }

    #[test]
    fn log_identity() {
        // ln(1+z) = z F(1,1;2;-z) i.e. F(1,1;2;x) = -ln(1-x)/x
        for &x in &[0.1, 0.4, 0.7] {
            let v = gauss_2f1(1.0, 1.0, 2.0, x).unwrap();
            assert!((v + (1.0 - x).ln() / x).abs() < 1e-13);
        }
    }

    #[test]
    fn c_pole_detected() {
        assert!(matches!(
            gauss_2f1(0.3, 0.7, -1.0, 0.2),
            Err(SpecialError::CPole(_))
        ));
        // terminating before the pole is fine: a = -1 stops at k = 1,
        // (c)_1 = c = -2 is nonzero
        assert!(gauss_2f1(-1.0, 0.7, -2.0, 0.2).is_ok());
    }

    #[test]
    fn connection_matches_series_at_switch() {
        // c - a - b = 1/2 family; compare both routes just below/above 0.75
        for &(a, b) in &[(0.3, 0.7), (-0.9, 1.2), (1.7, -2.3)] {
            let c = a + b + 0.5;
            let direct = Hyp2f1Series::build(a, b, c).unwrap().value(0.74);
            let conn = connection_half(a, b, c, 0.74).unwrap();
            assert!(
                (direct - conn).abs() <= 1e-11 * (1.0 + direct.abs()),
                "a={a} b={b}: {direct} vs {conn}"
            );
        }
    }

    #[test]
    fn gauss_summation_at_large_x() {
        // near x = 1 the value approaches gamma(c) gamma(1/2) /
        // (gamma(c-a) gamma(c-b))
        let (a, b) = (0.25, 0.5);
        let c = a + b + 0.5;
        let limit = gamma_fn(c).value * std::f64::consts::PI.sqrt()
            / (gamma_fn(c - a).value * gamma_fn(c - b).value);
        let v = gauss_2f1(a, b, c, 1.0 - 1e-12).unwrap();
        assert!((v - limit).abs() < 1e-5);
    }
}
