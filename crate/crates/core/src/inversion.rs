//! The inversion μ ↦ μ′ on distributions without Gaussian part, and its
//! duality laws: weak mean ↔ weak drift exchange, the truncation identity,
//! and the dilation identity (T_b μ)′ = (T_{b⁻¹} μ′)^{b²}.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::measure::RadialInterval;
use crate::triplet::LevyTriplet;
use crate::weak::{weak_drift, weak_mean, WeakMomentResult, WeakStatus};

/// Pushes ν through x ↦ x/|x|² with weight |x|² and flips the location:
/// γ′ = −γ + ∫_{|x|=1} x ν(dx). Requires no Gaussian part.
pub fn invert(mu: &LevyTriplet) -> Result<LevyTriplet> {
    if !mu.is_id0() {
        return Err(Error::domain(
            "inversion is defined only without a Gaussian part",
        ));
    }
    let levy = mu.levy().invert();
    let correction = if mu.levy().is_trivial() {
        vec![0.0; mu.dim()]
    } else {
        mu.levy().sphere_mass_vector()
    };
    let location = linalg::add(&linalg::neg(mu.location()), &correction);
    LevyTriplet::without_gaussian(levy, location)
}

/// The original together with its inversion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InversionPair {
    pub original: LevyTriplet,
    pub inverted: LevyTriplet,
}

impl InversionPair {
    pub fn new(mu: &LevyTriplet) -> Result<Self> {
        Ok(InversionPair {
            original: mu.clone(),
            inverted: invert(mu)?,
        })
    }
}

/// Outcome of the weak-mean/weak-drift duality check on one distribution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeakDualReport {
    pub mean_side: WeakMomentResult,
    pub drift_side: WeakMomentResult,
    pub statuses_match: bool,
    pub absolute_match: bool,
    /// |γ′⁰ + m| when both exist.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_defect: Option<f64>,
    /// max over the ε-grid of the truncation-identity residual.
    pub truncation_defect: f64,
}

impl WeakDualReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.statuses_match
            && self.absolute_match
            && self.value_defect.map(|d| d <= tol).unwrap_or(true)
            && self.truncation_defect <= 1e-9
    }
}

/// Computes weak_mean(μ) and weak_drift(μ′) and checks that statuses,
/// absolute flags and values are exchanged (γ′⁰ = −m), together with the
/// truncation identity ∫_{ε<|x|≤1} x ν′ = ∫_{1≤|x|<1/ε} x ν.
pub fn weak_dual_check(mu: &LevyTriplet) -> Result<WeakDualReport> {
    let inv = invert(mu)?;
    let mean_side = weak_mean(mu)?;
    let drift_side = weak_drift(&inv)?;

    let statuses_match = mean_side.status == drift_side.status;
    let absolute_match = mean_side.absolute == drift_side.absolute;
    let value_defect = match (&mean_side.value, &drift_side.value) {
        (Some(m), Some(d)) if mean_side.status == WeakStatus::Exists => {
            Some(linalg::norm(&linalg::add(m, d)))
        }
        _ => None,
    };

    let mut truncation_defect: f64 = 0.0;
    if !mu.levy().is_trivial() {
        for k in 1..=10 {
            let eps = 2f64.powi(-k);
            let lhs = inv
                .levy()
                .vector_moment(1.0, RadialInterval::half_open(eps, 1.0))?;
            let rhs = mu
                .levy()
                .vector_moment(1.0, RadialInterval::closed_open(1.0, 1.0 / eps))?;
            truncation_defect = truncation_defect.max(linalg::max_abs_diff(&lhs, &rhs));
        }
    }

    Ok(WeakDualReport {
        mean_side,
        drift_side,
        statuses_match,
        absolute_match,
        value_defect,
        truncation_defect,
    })
}

/// Outcome of checking (T_b μ)′ = (T_{b⁻¹}(μ′))^{b²}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DilationInversionReport {
    pub triplets_match: bool,
    pub exponent_defect: f64,
}

pub fn dilation_inversion_identity(mu: &LevyTriplet, b: f64) -> Result<DilationInversionReport> {
    if !(b > 0.0) {
        return Err(Error::domain("dilation factor must be positive"));
    }
    let lhs = invert(&mu.dilate(b)?)?;
    let rhs = invert(mu)?.dilate(1.0 / b)?.convolution_power(b * b)?;

    let triplets_match = lhs.approx_eq(&rhs, 1e-10);
    let mut exponent_defect: f64 = 0.0;
    for z in z_grid(mu.dim()) {
        let a = lhs.char_exponent(&z)?;
        let c = rhs.char_exponent(&z)?;
        exponent_defect = exponent_defect.max((a - c).norm());
    }
    Ok(DilationInversionReport { triplets_match, exponent_defect })
}

fn z_grid(d: usize) -> Vec<Vec<f64>> {
    let mags = [0.3, 0.9, 1.6, 3.2];
    let mut out = Vec::new();
    for &m in &mags {
        for sign in [1.0, -1.0] {
            let mut z = vec![0.0; d];
            z[0] = sign * m;
            out.push(z);
            if d > 1 {
                let mut w = vec![m / (d as f64).sqrt(); d];
                w[d - 1] *= sign;
                out.push(w);
            }
        }
    }
    out
}
