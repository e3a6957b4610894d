//! Numerical laboratory for the generalized integral means spectrum of
//! whole-plane SLE.
//!
//! The crate is organized around five subsystems:
//!
//! - [`spectrum`]: the closed-form quadratics `A`, `C`, `beta` in the
//!   exponent `gamma`, their roots, the dual exponent map, the four
//!   spectrum functions and the landmark points of the phase diagram.
//! - [`phase`]: transition curves (red/green parabolas, blue quartic,
//!   transition lines), region classification in the `(p, q)` plane,
//!   validity status of the known results, proof zones and the m-fold
//!   transform.
//! - [`special`]: Gauss hypergeometric evaluation, the gamma function
//!   with pole handling, and the standard test-function profiles with
//!   endpoint regularity and positivity certificates.
//! - [`operator`]: numerical action of the moment differential operator
//!   on test functions, a finite-difference cross-check, sign
//!   verification on annuli, and the zone-wise sub-solution construction.
//! - [`flow`]: reverse radial Loewner flow Monte-Carlo: driving paths,
//!   adaptive integration, moment estimation, spectrum slope fits and
//!   validation against the exact closed-form moment on the red parabola.
//!
//! Everything exposed here is a pure function over immutable values and is
//! safe to call concurrently. Deterministic results are a design goal:
//! fixed seeds give bitwise-identical estimates regardless of the number
//! of worker threads.

pub mod csvfmt;
pub mod flow;
pub mod operator;
pub mod phase;
pub mod rational;
pub mod special;
pub mod spectrum;

pub use spectrum::{Kappa, MomentPoint};
