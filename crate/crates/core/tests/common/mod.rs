//! Shared oracles for the integration suites: double-double series
//! summation, a polyline-based region classifier, and a high-accuracy
//! reference integrator. These deliberately avoid the implementation
//! paths they are used to check.
#![allow(dead_code)]

use slelab_core::phase::{blue_quartic_point, green_point, transition_lines};
use slelab_core::spectrum::{landmarks, Kappa};

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1.0f64.max(a.abs()).max(b.abs())
}

pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!(close(a, b, tol), "{what}: {a} vs {b} (tol {tol})");
}

// ---------------------------------------------------------------------
// double-double arithmetic (error-free transformations with FMA)

#[derive(Debug, Clone, Copy)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub fn dd_add(a: Dd, b: Dd) -> Dd {
    let (s, e) = two_sum(a.hi, b.hi);
    let e = e + a.lo + b.lo;
    let (hi, lo) = quick_two_sum(s, e);
    Dd { hi, lo }
}

pub fn dd_mul(a: Dd, b: Dd) -> Dd {
    let (p, e) = two_prod(a.hi, b.hi);
    let e = e + a.hi * b.lo + a.lo * b.hi;
    let (hi, lo) = quick_two_sum(p, e);
    Dd { hi, lo }
}

pub fn dd_div(a: Dd, b: Dd) -> Dd {
    let q1 = a.hi / b.hi;
    let r = dd_add(a, dd_neg(dd_mul(Dd::from(q1), b)));
    let q2 = r.hi / b.hi;
    let r2 = dd_add(r, dd_neg(dd_mul(Dd::from(q2), b)));
    let q3 = r2.hi / b.hi;
    let (hi, lo) = quick_two_sum(q1, q2 + q3);
    Dd { hi, lo }
}

pub fn dd_neg(a: Dd) -> Dd {
    Dd {
        hi: -a.hi,
        lo: -a.lo,
    }
}

/// Gauss series at quadruple working precision, summed until the term
/// drops below `2^-140` relative or `max_terms` is reached.
pub fn dd_gauss_2f1(a: f64, b: f64, c: f64, x: f64, max_terms: usize) -> f64 {
    let mut term = Dd::from(1.0);
    let mut sum = Dd::from(1.0);
    let xd = Dd::from(x);
    for k in 0..max_terms {
        let kf = k as f64;
        let num = dd_mul(Dd::from(a + kf), Dd::from(b + kf));
        let den = dd_mul(Dd::from(c + kf), Dd::from(kf + 1.0));
        term = dd_mul(term, dd_div(dd_mul(num, xd), den));
        sum = dd_add(sum, term);
        if term.hi.abs() <= 1e-40 * sum.hi.abs() {
            break;
        }
        if a + kf == 0.0 || b + kf == 0.0 {
            break;
        }
    }
    sum.to_f64()
}

// ---------------------------------------------------------------------
// polyline region oracle

/// Region classifier built from densely sampled curve polylines and the
/// straight lines, independent of the root-inequality route. Points
/// within `margin` of any boundary are refused.
pub struct RegionOracle {
    kappa: Kappa,
    /// `(p, q)` along the quartic branch below `Q_0`, with `p` strictly
    /// decreasing.
    quartic: Vec<(f64, f64)>,
    /// `(p, q)` along the green left branch from `P_0`-side down past
    /// `Q_0`, with `p` strictly decreasing.
    green_left: Vec<(f64, f64)>,
    p_prime0: f64,
    p0: f64,
    d1_offset: f64,
    pub margin: f64,
}

fn interp(poly: &[(f64, f64)], p: f64) -> Option<f64> {
    // polylines are stored with decreasing abscissa
    if p > poly[0].0 || p < poly[poly.len() - 1].0 {
        return None;
    }
    let idx = poly.partition_point(|(pp, _)| *pp > p);
    if idx == 0 {
        return Some(poly[0].1);
    }
    let (p1, q1) = poly[idx - 1];
    let (p2, q2) = poly[idx.min(poly.len() - 1)];
    if p1 == p2 {
        return Some(q1);
    }
    Some(q1 + (q2 - q1) * (p - p1) / (p2 - p1))
}

impl RegionOracle {
    pub fn new(kappa: Kappa, margin: f64) -> Self {
        let k = kappa.get();
        let lm = landmarks(kappa);
        let lines = transition_lines(kappa);
        // quartic below Q_0: parameter from 1 + 2/kappa outward
        let g_lo = 1.0 + 2.0 / k;
        let mut quartic = Vec::new();
        let n = 60_000;
        for i in 0..n {
            let g = g_lo + 6.0 * i as f64 / (n - 1) as f64;
            let cp = blue_quartic_point(kappa, g).expect("quartic point");
            quartic.push((cp.p, cp.q));
        }
        // green left branch spanning P_0 down past Q_0
        let gp_lo = (4.0 + k) / (4.0 * k) - 1e-9;
        let gp_hi = 1.0 + 2.0 / k + 4.0;
        let mut green_left = Vec::new();
        for i in 0..n {
            let gp = gp_lo + (gp_hi - gp_lo) * i as f64 / (n - 1) as f64;
            let cp = green_point(kappa, gp);
            green_left.push((cp.p, cp.q));
        }
        RegionOracle {
            kappa,
            quartic,
            green_left,
            p_prime0: lm.p_prime0,
            p0: lm.p0,
            d1_offset: lines.d1_offset,
            margin,
        }
    }

    /// Tip / Bulk / Linear / One by polyline interpolation; `None` when
    /// the point is within the margin of a boundary (where the polyline
    /// answer could differ from the exact one).
    pub fn classify(&self, p: f64, q: f64) -> Option<&'static str> {
        let m = self.margin;
        if (p - self.p_prime0).abs() < m || (p - self.p0).abs() < m {
            return None;
        }
        if p < self.p_prime0 {
            let qq = interp(&self.quartic, p)?;
            if (q - qq).abs() < m {
                return None;
            }
            return Some(if q > qq { "Tip" } else { "One" });
        }
        if p < self.p0 {
            let qq = interp(&self.green_left, p)?;
            if (q - qq).abs() < m {
                return None;
            }
            return Some(if q > qq { "Bulk" } else { "One" });
        }
        let d = q - p - self.d1_offset;
        if d.abs() < m {
            return None;
        }
        Some(if d > 0.0 { "Linear" } else { "One" })
    }
}

// ---------------------------------------------------------------------
// classic fixed-step RK4 reference for scalar real ODEs

pub fn rk4_reference(mut x: f64, t_end: f64, dt: f64, f: impl Fn(f64) -> f64) -> f64 {
    let steps = (t_end / dt).round() as usize;
    let h = t_end / steps as f64;
    for _ in 0..steps {
        let k1 = f(x);
        let k2 = f(x + 0.5 * h * k1);
        let k3 = f(x + 0.5 * h * k2);
        let k4 = f(x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    x
}
