//! Deterministic Brownian driving streams.
//!
//! Each sample owns two ChaCha8 streams derived from `(seed, stream)`:
//! one for the base-grid increments, one for bridge refinements near the
//! driving singularity. Draw order inside a sample is a deterministic
//! function of the path itself, so a fixed `(seed, stream)` reproduces
//! the trajectory bit for bit on any thread layout.

use super::{FlowError, SimConfig};
use crate::spectrum::Kappa;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Source of Brownian increments for the stepper.
pub trait BrownianSource {
    /// Increment over one base step, variance `dt`.
    fn next_increment(&mut self) -> f64;
    /// Standard normal for a bridge midpoint.
    fn bridge_normal(&mut self) -> f64;
}

/// Production source: seeded, stream-addressed Gaussian draws.
#[derive(Debug, Clone)]
pub struct DrivingStream {
    sqrt_dt: f64,
    main: ChaCha8Rng,
    bridge: ChaCha8Rng,
}

impl DrivingStream {
    pub fn new(seed: u64, stream: u64, dt: f64) -> Self {
        let mut main = ChaCha8Rng::seed_from_u64(seed);
        main.set_stream(stream << 1);
        let mut bridge = ChaCha8Rng::seed_from_u64(seed);
        bridge.set_stream((stream << 1) | 1);
        DrivingStream {
            sqrt_dt: dt.sqrt(),
            main,
            bridge,
        }
    }
}

impl BrownianSource for DrivingStream {
    fn next_increment(&mut self) -> f64 {
        let g: f64 = StandardNormal.sample(&mut self.main);
        g * self.sqrt_dt
    }

    fn bridge_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.bridge)
    }
}

/// Zero driving: the flow degenerates to a deterministic ODE. Used by
/// the scheme-order checks.
#[derive(Debug, Clone, Copy, Default)]
pub struct FrozenDriving;

impl BrownianSource for FrozenDriving {
    fn next_increment(&mut self) -> f64 {
        0.0
    }

    fn bridge_normal(&mut self) -> f64 {
        0.0
    }
}

/// A realized driving path on the base grid.
#[derive(Debug, Clone)]
pub struct DrivingPath {
    pub kappa: Kappa,
    pub t: f64,
    pub dt: f64,
    pub seed: u64,
    pub stream: u64,
    /// Brownian increments, one per base step, variance `dt`.
    pub increments: Vec<f64>,
}

impl DrivingPath {
    /// Total Brownian displacement.
    pub fn b_final(&self) -> f64 {
        super::pairwise_sum(&self.increments)
    }
}

/// Realize the base-grid increments of the path for `(seed, stream)`.
pub fn sample_driving(
    kappa: Kappa,
    t: f64,
    dt: f64,
    seed: u64,
    stream: u64,
) -> Result<DrivingPath, FlowError> {
    let config = SimConfig {
        dt,
        t_cap: t,
        ..SimConfig::default()
    };
    config.validate()?;
    let steps = (t / dt).ceil() as usize;
    let mut source = DrivingStream::new(seed, stream, dt);
    let increments = (0..steps).map(|_| source.next_increment()).collect();
    Ok(DrivingPath {
        kappa,
        t,
        dt,
        seed,
        stream,
        increments,
    })
}
