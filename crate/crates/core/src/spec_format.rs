//! The JSON distribution-spec file format.
//!
//! ```json
//! {
//!   "dim": 1,
//!   "gaussian": [[0.0]],
//!   "gamma": [1.0],
//!   "levy": { "kind": "atoms", "atoms": [ { "x": [0.5], "mass": 2.0 } ] }
//! }
//! ```
//!
//! Levy kinds: `atoms`, `polar`, `radial`, `stable`, `density1d`. Unknown
//! kinds and unknown fields are rejected.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::measure::{LevyMeasureRepr, RadialMeasure, Ray, SphericalMeasure};
use crate::triplet::LevyTriplet;

/// Serde helper: `hi: null` in JSON means +∞.
pub mod maybe_inf {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_some(v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let opt = Option::<f64>::deserialize(d)?;
        Ok(opt.unwrap_or(f64::INFINITY))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionSpec {
    pub dim: usize,
    /// Row-major symmetric matrix; omitted means zero (no Gaussian part).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gaussian: Option<Vec<Vec<f64>>>,
    pub gamma: Vec<f64>,
    pub levy: LevySpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LevySpec {
    Atoms { atoms: Vec<AtomSpec> },
    Polar { spherical: SphericalMeasure, radial: RadialMeasure },
    Radial { rays: Vec<Ray> },
    Stable { alpha: f64, spherical: SphericalMeasure },
    #[serde(rename = "density1d")]
    Density1d {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        positive: Option<RadialMeasure>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        negative: Option<RadialMeasure>,
    },
}

impl DistributionSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }

    pub fn to_triplet(&self) -> Result<LevyTriplet> {
        if self.gamma.len() != self.dim {
            return Err(Error::Parse(format!(
                "gamma has {} entries but dim = {}",
                self.gamma.len(),
                self.dim
            )));
        }
        let gaussian = match &self.gaussian {
            None => SymMatrix::zeros(self.dim),
            Some(rows) => {
                if rows.len() != self.dim {
                    return Err(Error::Parse("gaussian matrix dimension mismatch".into()));
                }
                SymMatrix::from_rows(rows, 1e-12)?
            }
        };
        let levy = match &self.levy {
            LevySpec::Atoms { atoms } => LevyMeasureRepr::Atoms {
                atoms: atoms.iter().map(|a| (a.x.clone(), a.mass)).collect(),
            },
            LevySpec::Polar { spherical, radial } => LevyMeasureRepr::PolarProduct {
                spherical: spherical.clone(),
                radial: radial.clone(),
            },
            LevySpec::Radial { rays } => {
                LevyMeasureRepr::RadialDecomposition { rays: rays.clone() }
            }
            LevySpec::Stable { alpha, spherical } => LevyMeasureRepr::Stable {
                alpha: *alpha,
                spherical: spherical.clone(),
            },
            LevySpec::Density1d { positive, negative } => LevyMeasureRepr::ScalarDensity {
                positive: positive.clone(),
                negative: negative.clone(),
            },
        };
        LevyTriplet::new(gaussian, levy, self.gamma.clone())
    }

    pub fn from_triplet(mu: &LevyTriplet) -> Self {
        let gaussian = if mu.gaussian().is_zero() {
            None
        } else {
            Some(mu.gaussian().rows())
        };
        let levy = match mu.levy() {
            LevyMeasureRepr::Atoms { atoms } => LevySpec::Atoms {
                atoms: atoms
                    .iter()
                    .map(|(x, m)| AtomSpec { x: x.clone(), mass: *m })
                    .collect(),
            },
            LevyMeasureRepr::PolarProduct { spherical, radial } => LevySpec::Polar {
                spherical: spherical.clone(),
                radial: radial.clone(),
            },
            LevyMeasureRepr::RadialDecomposition { rays } => {
                LevySpec::Radial { rays: rays.clone() }
            }
            LevyMeasureRepr::Stable { alpha, spherical } => LevySpec::Stable {
                alpha: *alpha,
                spherical: spherical.clone(),
            },
            LevyMeasureRepr::ScalarDensity { positive, negative } => LevySpec::Density1d {
                positive: positive.clone(),
                negative: negative.clone(),
            },
        };
        DistributionSpec {
            dim: mu.dim(),
            gaussian,
            gamma: mu.location().to_vec(),
            levy,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub x: Vec<f64>,
    pub mass: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_reference_atom_spec() {
        let text = r#"{
            "dim": 1,
            "gamma": [1.0],
            "levy": { "kind": "atoms", "atoms": [ { "x": [0.5], "mass": 2.0 } ] }
        }"#;
        let spec = DistributionSpec::from_json(text).unwrap();
        let mu = spec.to_triplet().unwrap();
        assert_eq!(mu.location(), &[1.0]);
    }

    #[test]
    fn rejects_unknown_kind() {
        let text = r#"{
            "dim": 1,
            "gamma": [0.0],
            "levy": { "kind": "mystery" }
        }"#;
        assert!(DistributionSpec::from_json(text).is_err());
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = r#"{
            "dim": 1,
            "gamma": [0.0],
            "frobnicate": true,
            "levy": { "kind": "atoms", "atoms": [] }
        }"#;
        assert!(DistributionSpec::from_json(text).is_err());
    }

    #[test]
    fn round_trips_a_stable_spec() {
        let text = r#"{
            "dim": 1,
            "gamma": [0.0],
            "levy": { "kind": "stable", "alpha": 0.7,
                      "spherical": { "kind": "atoms", "atoms": [[[1.0], 2.0]] } }
        }"#;
        let spec = DistributionSpec::from_json(text).unwrap();
        let mu = spec.to_triplet().unwrap();
        let back = DistributionSpec::from_triplet(&mu);
        let reparsed = DistributionSpec::from_json(&back.to_json()).unwrap();
        let mu2 = reparsed.to_triplet().unwrap();
        assert!(mu.approx_eq(&mu2, 1e-15));
    }

    #[test]
    fn infinite_support_round_trips_through_null() {
        use crate::measure::RadialComponent;
        let spec = DistributionSpec::from_triplet(
            &LevyTriplet::without_gaussian(
                LevyMeasureRepr::ScalarDensity {
                    positive: Some(RadialMeasure::from_component(RadialComponent::power_exp(
                        1.0,
                        -1.0,
                        1.0,
                        0.0,
                        0.0,
                        f64::INFINITY,
                    ))),
                    negative: None,
                },
                vec![0.0],
            )
            .unwrap(),
        );
        let text = spec.to_json();
        let reparsed = DistributionSpec::from_json(&text).unwrap();
        let mu = reparsed.to_triplet().unwrap();
        assert_eq!(mu.dim(), 1);
    }
}
