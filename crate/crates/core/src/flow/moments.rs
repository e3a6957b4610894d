//! Moment estimation, spectrum slope fits and the red-parabola
//! validation suite.
//!
//! Sample index `j` of cell `c` draws from stream `(c << 32) | j`, and
//! per-sample results are merged by pairwise summation in index order, so
//! every estimate is a pure function of `(seed, parameters)`.

use super::{evolve_reverse_flow, DrivingStream, FlowError, FlowSample, SimConfig};
use crate::spectrum::{Kappa, MomentPoint};
use num_complex::Complex64;
use rayon::prelude::*;

/// Sum with pairwise splitting: associative enough to keep roundoff from
/// depending on chunking, deterministic because the order is fixed.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 16 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// `|z|^q |f'(z)|^p / |f(z)|^q` for one realization.
fn moment_value(sample: &FlowSample, pt: MomentPoint) -> f64 {
    let log_df = sample.renorm_log_deriv.re;
    let log_f = sample.renormalized.norm().ln();
    (pt.q * sample.z.norm().ln() + pt.p * log_df - pt.q * log_f).exp()
}

/// Monte-Carlo mean with standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub kappa: Kappa,
    pub pt: MomentPoint,
    pub z: Complex64,
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
    pub failed: usize,
}

fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    let mean = pairwise_sum(values) / n as f64;
    let devsq: Vec<f64> = values.iter().map(|x| (x - mean) * (x - mean)).collect();
    let var = pairwise_sum(&devsq) / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Estimate `E(|z|^q |f'|^p / |f|^q)` from `n` independent samples.
///
/// `cell` namespaces the random streams so that different estimates under
/// one seed stay independent. Per-sample failures are tolerated up to the
/// configured budget.
pub fn estimate_moment(
    kappa: Kappa,
    pt: MomentPoint,
    z: Complex64,
    n: usize,
    config: &SimConfig,
    seed: u64,
    cell: u64,
) -> Result<MomentEstimate, FlowError> {
    config.validate()?;
    if n < 100 {
        return Err(FlowError::InvalidConfig(format!(
            "need at least 100 samples, got {n}"
        )));
    }
    let results: Vec<Result<f64, FlowError>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut src = DrivingStream::new(seed, (cell << 32) | j as u64, config.dt);
            evolve_reverse_flow(z, &mut src, kappa, config).map(|s| moment_value(&s, pt))
        })
        .collect();
    let failed = results.iter().filter(|r| r.is_err()).count();
    if failed as f64 > config.failure_budget * n as f64 {
        return Err(FlowError::BudgetExceeded {
            failed,
            total: n,
            budget: config.failure_budget,
        });
    }
    let values: Vec<f64> = results.into_iter().flatten().collect();
    let (mean, stderr) = mean_stderr(&values);
    Ok(MomentEstimate {
        kappa,
        pt,
        z,
        mean,
        stderr,
        n: values.len(),
        failed,
    })
}

/// Least-squares fit of `log` circle means against `-log(1 - r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaFit {
    pub kappa: Kappa,
    pub pt: MomentPoint,
    pub radii: Vec<f64>,
    pub circle_means: Vec<f64>,
    pub circle_stderrs: Vec<f64>,
    pub slope: f64,
    pub slope_stderr: f64,
    pub intercept: f64,
    /// Whether the slope uncertainty is below the requested threshold.
    pub sufficient: bool,
}

/// Estimate the integral means growth exponent: for each radius the
/// circle integral is approximated by `m_angles`-point uniform
/// quadrature with `n_per_angle` samples at each angle, then the slope of
/// `log` mean against `-log(1 - r)` is fit by ordinary least squares.
#[allow(clippy::too_many_arguments)]
pub fn fit_beta(
    kappa: Kappa,
    pt: MomentPoint,
    radii: &[f64],
    m_angles: usize,
    n_per_angle: usize,
    config: &SimConfig,
    seed: u64,
    stderr_threshold: f64,
) -> Result<BetaFit, FlowError> {
    config.validate()?;
    if radii.len() < 4
        || radii.windows(2).any(|w| w[0] >= w[1])
        || radii.iter().any(|r| !(0.0 < *r && *r < 1.0))
    {
        return Err(FlowError::InvalidConfig(
            "need at least 4 strictly increasing radii inside (0, 1)".into(),
        ));
    }
    if m_angles < 1 || n_per_angle < 1 {
        return Err(FlowError::InvalidConfig(
            "need at least one angle and one sample per angle".into(),
        ));
    }
    let n_per_radius = m_angles * n_per_angle;
    let mut circle_means = Vec::with_capacity(radii.len());
    let mut circle_stderrs = Vec::with_capacity(radii.len());
    for (ri, &r) in radii.iter().enumerate() {
        let results: Vec<Result<f64, FlowError>> = (0..n_per_radius)
            .into_par_iter()
            .map(|j| {
                let angle_idx = j % m_angles;
                let theta = -std::f64::consts::PI
                    + 2.0 * std::f64::consts::PI * angle_idx as f64 / m_angles as f64;
                let z = Complex64::from_polar(r, theta);
                let stream = ((ri as u64) << 32) | j as u64;
                let mut src = DrivingStream::new(seed, stream, config.dt);
                evolve_reverse_flow(z, &mut src, kappa, config).map(|s| moment_value(&s, pt))
            })
            .collect();
        let failed = results.iter().filter(|r| r.is_err()).count();
        if failed as f64 > config.failure_budget * n_per_radius as f64 {
            return Err(FlowError::BudgetExceeded {
                failed,
                total: n_per_radius,
                budget: config.failure_budget,
            });
        }
        let values: Vec<f64> = results.into_iter().flatten().collect();
        let (mean, stderr) = mean_stderr(&values);
        circle_means.push(mean);
        circle_stderrs.push(stderr);
    }
    let xs: Vec<f64> = radii.iter().map(|r| -(1.0 - r).ln()).collect();
    let ys: Vec<f64> = circle_means.iter().map(|m| m.ln()).collect();
    let nf = xs.len() as f64;
    let xbar = pairwise_sum(&xs) / nf;
    let ybar = pairwise_sum(&ys) / nf;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - intercept - slope * x;
            e * e
        })
        .sum();
    let slope_stderr = (ssr / (nf - 2.0) / sxx).sqrt();
    Ok(BetaFit {
        kappa,
        pt,
        radii: radii.to_vec(),
        circle_means,
        circle_stderrs,
        slope,
        slope_stderr,
        intercept,
        sufficient: slope_stderr <= stderr_threshold,
    })
}

/// One comparison row of the red-parabola validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RedCheckRow {
    pub z: Complex64,
    pub exact: f64,
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RedParabolaReport {
    pub kappa: Kappa,
    pub gamma: f64,
    pub pt: MomentPoint,
    pub rows: Vec<RedCheckRow>,
    pub n_pass: usize,
}

/// Compare Monte-Carlo moments against the exact closed-form solution on
/// the red parabola,
/// `(1 - z zbar)^(-kappa gamma^2/2) (1-z)^gamma (1-zbar)^gamma`,
/// flagging every point off by more than four standard errors.
pub fn validate_red_parabola(
    kappa: Kappa,
    gamma: f64,
    zs: &[Complex64],
    n: usize,
    config: &SimConfig,
    seed: u64,
) -> Result<RedParabolaReport, FlowError> {
    let curve = crate::phase::red_point(kappa, gamma);
    let pt = MomentPoint {
        p: curve.p,
        q: curve.q,
    };
    let mut rows = Vec::with_capacity(zs.len());
    for (i, &z) in zs.iter().enumerate() {
        let est = estimate_moment(kappa, pt, z, n, config, seed, i as u64)?;
        let u = (1.0 - z).norm_sqr();
        let exact = (1.0 - z.norm_sqr()).powf(-0.5 * kappa.get() * gamma * gamma) * u.powf(gamma);
        let pass = (est.mean - exact).abs() <= 4.0 * est.stderr;
        rows.push(RedCheckRow {
            z,
            exact,
            mean: est.mean,
            stderr: est.stderr,
            n: est.n,
            pass,
        });
    }
    let n_pass = rows.iter().filter(|r| r.pass).count();
    Ok(RedParabolaReport {
        kappa,
        gamma,
        pt,
        rows,
        n_pass,
    })
}
