//! Computing with infinitely divisible distributions through their
//! Lévy–Khintchine triplets: characteristic exponents, drifts and means,
//! weak (principal-value) moments, the inversion transform and its duality
//! laws, stochastic-integral mapping kernels with range tests, and verdict
//! engines for the law of large numbers and small-time limits of Lévy
//! processes.
//!
//! Everything is immutable after construction and safe for concurrent
//! reads; the numerical detectors report `inconclusive` rather than guess.

pub mod error;
pub mod linalg;
pub mod numeric;

pub mod measure;
pub mod triplet;

pub mod spec_format;
pub mod inversion;
pub mod weak;

pub use error::{Error, Result};
pub use linalg::SymMatrix;
pub use measure::{
    GammaMeasure, LevyMeasureRepr, RadialComponent, RadialInterval, RadialKind, RadialMeasure,
    Ray, ScalarMoment, SphericalMeasure,
};
pub use spec_format::DistributionSpec;
pub use triplet::{DerivedLocation, LevyTriplet, LocationKind};
