//! Numerical kernels: adaptive quadrature, improper integrals with a
//! Cauchy-criterion stop, oscillatory power-law tails via integration by
//! parts, sequence-limit detection, and log-log trend classification.

mod detect;
mod quad;
mod trend;

pub use detect::{detect_limit, DetectorParams, SeqOutcome};
pub use quad::{
    fourier_power_segment, fourier_power_tail, power_integral, quad_complex, quad_real,
    quad_to_infinity, quad_to_zero, QuadOutcome,
};
pub use trend::{classify_trend, Trend, TrendParams};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Default absolute tolerance for integral evaluation.
pub const DEFAULT_QUAD_TOL: f64 = 1e-9;

/// Default tolerance for algebraic identities.
pub const ALGEBRA_TOL: f64 = 1e-12;
