//! Finite-difference assembly of the operator in polar coordinates,
//! used as an independent cross-check of the closed-form action.
//!
//! ```text
//! kappa/2 G_tt - [2 r sin t / u] G_t + [r (r^2 - 1) / u] G_r + V G
//! V = -2p [1 - 2r cos t + r^2 cos 2t] / u^2 + 2q [1 - r cos t] / u
//!     + 2p - 2q,          u = r^2 - 2 r cos t + 1
//! ```
//!
//! Second-order central differences; the angular direction is periodic,
//! the radial residual is reported on interior rows only.

use super::OperatorError;
use crate::spectrum::{Kappa, MomentPoint};

/// Uniform polar mesh: `n_r` radii spanning `[r_lo, r_hi]` inclusive and
/// `n_theta` angles spanning `[-pi, pi)` periodically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarMesh {
    pub r_lo: f64,
    pub r_hi: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

impl PolarMesh {
    pub fn new(r_lo: f64, r_hi: f64, n_r: usize, n_theta: usize) -> Self {
        assert!(n_r >= 3 && n_theta >= 3);
        assert!(0.0 < r_lo && r_lo < r_hi && r_hi < 1.0);
        PolarMesh {
            r_lo,
            r_hi,
            n_r,
            n_theta,
        }
    }

    #[inline]
    pub fn dr(&self) -> f64 {
        (self.r_hi - self.r_lo) / (self.n_r - 1) as f64
    }

    #[inline]
    pub fn dtheta(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.n_theta as f64
    }

    #[inline]
    pub fn r(&self, i: usize) -> f64 {
        self.r_lo + self.dr() * i as f64
    }

    #[inline]
    pub fn theta(&self, j: usize) -> f64 {
        -std::f64::consts::PI + self.dtheta() * j as f64
    }

    /// Sample a function on the mesh, row-major in `r`.
    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n_r * self.n_theta);
        for i in 0..self.n_r {
            for j in 0..self.n_theta {
                out.push(f(self.r(i), self.theta(j)));
            }
        }
        out
    }
}

/// Zeroth-order coefficient of the operator.
pub fn potential(kappa: Kappa, pt: MomentPoint, r: f64, theta: f64) -> f64 {
    let _ = kappa;
    let (s, c) = theta.sin_cos();
    let u = r * r - 2.0 * r * c + 1.0;
    let cos2 = c * c - s * s;
    -2.0 * pt.p * (1.0 - 2.0 * r * c + r * r * cos2) / (u * u)
        + 2.0 * pt.q * (1.0 - r * c) / u
        + 2.0 * pt.p
        - 2.0 * pt.q
}

/// Residual grid on the interior radial rows.
#[derive(Debug, Clone)]
pub struct FdGrid {
    pub mesh: PolarMesh,
    /// Residuals for rows `1..n_r-1`, row-major; `values.len() ==
    /// (n_r - 2) * n_theta`.
    pub values: Vec<f64>,
}

impl FdGrid {
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Apply the operator stencil to a sampled field.
pub fn apply_fd(kappa: Kappa, pt: MomentPoint, mesh: &PolarMesh, field: &[f64]) -> FdGrid {
    assert_eq!(field.len(), mesh.n_r * mesh.n_theta);
    let k = kappa.get();
    let nt = mesh.n_theta;
    let dr = mesh.dr();
    let dt = mesh.dtheta();
    let mut values = Vec::with_capacity((mesh.n_r - 2) * nt);
    for i in 1..mesh.n_r - 1 {
        let r = mesh.r(i);
        for j in 0..nt {
            let theta = mesh.theta(j);
            let (s, c) = theta.sin_cos();
            let u = r * r - 2.0 * r * c + 1.0;
            let here = field[i * nt + j];
            let east = field[i * nt + (j + 1) % nt];
            let west = field[i * nt + (j + nt - 1) % nt];
            let north = field[(i + 1) * nt + j];
            let south = field[(i - 1) * nt + j];
            let g_tt = (east - 2.0 * here + west) / (dt * dt);
            let g_t = (east - west) / (2.0 * dt);
            let g_r = (north - south) / (2.0 * dr);
            let v = potential(kappa, pt, r, theta);
            values.push(
                0.5 * k * g_tt - 2.0 * r * s / u * g_t + r * (r * r - 1.0) / u * g_r + v * here,
            );
        }
    }
    FdGrid {
        mesh: *mesh,
        values,
    }
}

/// Apply the stencil at two resolutions and estimate the truncation error
/// by Richardson extrapolation (order 2); errors out when the estimate
/// exceeds `tol`.
pub fn check_resolution(
    kappa: Kappa,
    pt: MomentPoint,
    mesh: &PolarMesh,
    sampler: impl Fn(f64, f64) -> f64,
    tol: f64,
) -> Result<f64, OperatorError> {
    let coarse = apply_fd(kappa, pt, mesh, &mesh.sample(&sampler));
    let fine_mesh = PolarMesh::new(mesh.r_lo, mesh.r_hi, 2 * mesh.n_r - 1, 2 * mesh.n_theta);
    let fine = apply_fd(kappa, pt, &fine_mesh, &fine_mesh.sample(&sampler));
    // compare at shared nodes: coarse row i>0 maps to fine row 2i, coarse
    // angle j maps to fine angle 2j
    let mut worst = 0.0f64;
    for i in 1..mesh.n_r - 1 {
        for j in 0..mesh.n_theta {
            let cv = coarse.values[(i - 1) * mesh.n_theta + j];
            let fi = 2 * i;
            let fv = fine.values[(fi - 1) * fine_mesh.n_theta + 2 * j];
            worst = worst.max((cv - fv).abs() / 3.0);
        }
    }
    if worst > tol {
        return Err(OperatorError::MeshTooCoarse {
            estimate: worst,
            tol,
        });
    }
    Ok(worst)
}
