//! Stochastic-integral mapping machinery: admissible kernels and their
//! conjugates, profile functions, exponent composition, definability
//! classification, monotonicity certificates, and range membership tests.

mod classify;
mod linfty;
mod mapexp;
mod monotone;
mod profile;
mod range;

pub use classify::{classify_definability, DefinabilityClass};
pub use linfty::{linfty_synthesize, r_infinity_membership, LInftyComponent, LInftyRepr};
pub use mapexp::{map_exponent, map_exponent_with, MapParams};
pub use monotone::{
    completely_monotone_check_grid, completely_monotone_check_shape, monotone_order_check_grid,
    monotone_order_check_shape, CheckOutcome, KnownShape,
};
pub use profile::{kernel_profile, ImproperEnd, KernelProfile};
pub use range::{range_membership, RangeFamily, RangeTier, RangeVerdict};

use std::fmt;
use std::sync::Arc;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::numeric::{quad_real, quad_to_infinity, quad_to_zero};

/// Base kernel families on their natural supports.
#[derive(Clone)]
pub enum KernelFamily {
    /// Γ(p)⁻¹ (1−u)^{p−1} u^{−α−1} on (0,1).
    PhiBar { p: f64, alpha: f64 },
    /// Γ(q)⁻¹ (−log u)^{q−1} u^{−α−1} on (0,1).
    LogPower { q: f64, alpha: f64 },
    /// u^{−α−1} e^{−u^β} on (0,∞).
    Psi { alpha: f64, beta: f64 },
    /// User-supplied positive density on (a, b).
    Custom {
        a: f64,
        b: f64,
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelFamily::PhiBar { p, alpha } => write!(f, "PhiBar(p={p}, alpha={alpha})"),
            KernelFamily::LogPower { q, alpha } => write!(f, "LogPower(q={q}, alpha={alpha})"),
            KernelFamily::Psi { alpha, beta } => write!(f, "Psi(alpha={alpha}, beta={beta})"),
            KernelFamily::Custom { a, b, .. } => write!(f, "Custom on ({a}, {b})"),
        }
    }
}

/// An admissible kernel, possibly conjugated: the conjugate evaluates
/// h*(u) = h(1/u) u⁻⁴ on (1/b_h, 1/a_h).
#[derive(Debug, Clone)]
pub struct MappingKernel {
    family: KernelFamily,
    conjugated: bool,
}

impl MappingKernel {
    pub fn new(family: KernelFamily) -> Result<Self> {
        let k = MappingKernel { family, conjugated: false };
        k.check_admissible()?;
        Ok(k)
    }

    pub fn phi_bar(p: f64, alpha: f64) -> Result<Self> {
        Self::new(KernelFamily::PhiBar { p, alpha })
    }

    pub fn log_power(q: f64, alpha: f64) -> Result<Self> {
        Self::new(KernelFamily::LogPower { q, alpha })
    }

    pub fn psi(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(KernelFamily::Psi { alpha, beta })
    }

    pub fn custom(a: f64, b: f64, eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>) -> Result<Self> {
        Self::new(KernelFamily::Custom { a, b, eval })
    }

    pub fn family(&self) -> &KernelFamily {
        &self.family
    }

    pub fn is_conjugated(&self) -> bool {
        self.conjugated
    }

    fn base_support(&self) -> (f64, f64) {
        match &self.family {
            KernelFamily::PhiBar { .. } | KernelFamily::LogPower { .. } => (0.0, 1.0),
            KernelFamily::Psi { .. } => (0.0, f64::INFINITY),
            KernelFamily::Custom { a, b, .. } => (*a, *b),
        }
    }

    /// (a_h, b_h) of the kernel as evaluated (conjugation included).
    pub fn support(&self) -> (f64, f64) {
        let (a, b) = self.base_support();
        if self.conjugated {
            (
                if b.is_finite() { 1.0 / b } else { 0.0 },
                if a > 0.0 { 1.0 / a } else { f64::INFINITY },
            )
        } else {
            (a, b)
        }
    }

    fn base_eval(&self, u: f64) -> f64 {
        match &self.family {
            KernelFamily::PhiBar { p, alpha } => {
                (1.0 - u).powf(p - 1.0) * u.powf(-alpha - 1.0) / gamma(*p)
            }
            KernelFamily::LogPower { q, alpha } => {
                (-u.ln()).powf(q - 1.0) * u.powf(-alpha - 1.0) / gamma(*q)
            }
            KernelFamily::Psi { alpha, beta } => u.powf(-alpha - 1.0) * (-u.powf(*beta)).exp(),
            KernelFamily::Custom { eval, .. } => eval(u),
        }
    }

    /// h(u) on the support; zero outside.
    pub fn eval(&self, u: f64) -> f64 {
        let (a, b) = self.support();
        if !(u > a && u < b) {
            return 0.0;
        }
        if self.conjugated {
            self.base_eval(1.0 / u) * u.powi(-4)
        } else {
            self.base_eval(u)
        }
    }

    /// The conjugate kernel; applying it twice restores the original.
    pub fn conjugate(&self) -> Self {
        MappingKernel {
            family: self.family.clone(),
            conjugated: !self.conjugated,
        }
    }

    /// Condition (C): positivity plus min(∫hu², ∫h) < ∞. Analytic for the
    /// named families, numeric for custom kernels.
    fn check_admissible(&self) -> Result<()> {
        match &self.family {
            KernelFamily::PhiBar { p, alpha } | KernelFamily::LogPower { q: p, alpha } => {
                if !(*p > 0.0) {
                    return Err(Error::domain("kernel order must be positive"));
                }
                if !(*alpha < 2.0) {
                    return Err(Error::domain("kernel index must satisfy alpha < 2"));
                }
                Ok(())
            }
            KernelFamily::Psi { alpha, beta } => {
                if !(*beta > 0.0) {
                    return Err(Error::domain("psi exponent must be positive"));
                }
                if !(*alpha < 2.0) {
                    return Err(Error::domain("kernel index must satisfy alpha < 2"));
                }
                Ok(())
            }
            KernelFamily::Custom { a, b, .. } => {
                if !(*a >= 0.0 && b > a) {
                    return Err(Error::domain("custom kernel support is empty"));
                }
                let sq = self.power_moment_value(2.0);
                let mass = self.power_moment_value(0.0);
                if sq.is_err() && mass.is_err() {
                    return Err(Error::domain(
                        "custom kernel fails Condition (C): neither ∫hu² nor ∫h is finite",
                    ));
                }
                Ok(())
            }
        }
    }

    /// Is ∫ u^s h(u) du finite? Analytic for named families (in either
    /// conjugation state, via the substitution w = 1/u).
    pub fn power_moment_is_finite(&self, s: f64) -> Option<bool> {
        // ∫ u^s h*(u) du = ∫ w^{2−s} h(w) dw
        let s_eff = if self.conjugated { 2.0 - s } else { s };
        match &self.family {
            KernelFamily::PhiBar { alpha, .. } | KernelFamily::LogPower { alpha, .. } => {
                // lower end u^{s−α−1}; upper end integrable for p > 0
                Some(s_eff > *alpha)
            }
            KernelFamily::Psi { alpha, .. } => Some(s_eff > *alpha),
            KernelFamily::Custom { .. } => None,
        }
    }

    /// ∫ u^s h(u) du by quadrature (finiteness decided first when known).
    pub fn power_moment(&self, s: f64) -> Result<f64> {
        if self.power_moment_is_finite(s) == Some(false) {
            return Err(Error::domain("requested kernel moment diverges"));
        }
        self.power_moment_value(s)
    }

    fn power_moment_value(&self, s: f64) -> Result<f64> {
        let (a, b) = self.support();
        let f = |u: f64| num_complex::Complex64::new(u.powf(s) * self.eval(u), 0.0);
        let mut total = 0.0;
        let knee = if b.is_finite() { 0.5 * (a + b) } else { a.max(1.0) * 2.0 };
        if a == 0.0 {
            total += quad_to_zero(f, knee, 1e-11)?.value.re;
        } else {
            total += quad_real(|u| u.powf(s) * self.eval(u), a, knee, 1e-11)?.value;
        }
        if b.is_finite() {
            // possible integrable singularity at b: approach geometrically
            let mut hi = b;
            let mut lo = 0.5 * (knee + b);
            let mut quiet = 0;
            for _ in 0..200 {
                let seg = quad_real(|u| u.powf(s) * self.eval(u), lo, hi.min(b - (b - lo) * 1e-12), 1e-11);
                // fall back to midpoint refinement on failure
                let v = seg?.value;
                total += v;
                if v.abs() < 1e-12 {
                    quiet += 1;
                    if quiet >= 3 {
                        break;
                    }
                } else {
                    quiet = 0;
                }
                hi = lo;
                lo = 0.5 * (lo + knee);
                if hi - knee < 1e-14 {
                    break;
                }
            }
        } else {
            total += quad_to_infinity(f, knee, 1e-11)?.value.re;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_of_phi_bar_one_zero() {
        // h = u^{-1} on (0,1) → h* = u^{-3} on (1,∞)
        let k = MappingKernel::phi_bar(1.0, 0.0).unwrap();
        let c = k.conjugate();
        assert_eq!(c.support(), (1.0, f64::INFINITY));
        for u in [1.5, 2.0, 7.0] {
            assert!((c.eval(u) - u.powi(-3)).abs() < 1e-15);
        }
    }

    #[test]
    fn conjugation_is_an_involution() {
        let k = MappingKernel::phi_bar(2.0, 0.5).unwrap();
        let back = k.conjugate().conjugate();
        for u in [0.1, 0.4, 0.9] {
            assert_eq!(k.eval(u), back.eval(u));
        }
    }

    #[test]
    fn double_conjugation_pointwise_via_algebra() {
        // force the algebraic route: evaluate h**(u) = h*(1/u)·u^{-4} manually
        let k = MappingKernel::phi_bar(1.0, 1.0).unwrap();
        let conj = k.conjugate();
        for u in [0.2, 0.5, 0.8] {
            let via_algebra = conj.eval(1.0 / u) * u.powi(-4);
            let rel = (via_algebra - k.eval(u)).abs() / k.eval(u);
            assert!(rel < 1e-12, "u={u}");
        }
        // Φ̄(1,1): h = u^{-2} on (0,1), h* = u^{-2} on (1,∞)
        for u in [1.5, 3.0] {
            assert!((conj.eval(u) - u.powi(-2)).abs() < 1e-15);
        }
    }

    #[test]
    fn kernel_moments_match_closed_forms() {
        // Φ̄(1,0): ∫ u h = 1, ∫ u² h = 1/2
        let k = MappingKernel::phi_bar(1.0, 0.0).unwrap();
        assert!((k.power_moment(1.0).unwrap() - 1.0).abs() < 1e-9);
        assert!((k.power_moment(2.0).unwrap() - 0.5).abs() < 1e-9);
        assert_eq!(k.power_moment_is_finite(0.0), Some(false));
        // conjugate: ∫ u^s h* du = ∫ w^{2−s} h dw
        let c = k.conjugate();
        assert!((c.power_moment(0.0).unwrap() - 0.5).abs() < 1e-9);
        assert_eq!(c.power_moment_is_finite(2.0), Some(false));
    }

    #[test]
    fn psi_kernel_admissible_and_integrable() {
        let k = MappingKernel::psi(1.0, 1.0).unwrap();
        // ∫_0^∞ u^{-2}e^{-u}·u² du = 1
        assert!((k.power_moment(2.0).unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(k.power_moment_is_finite(1.0), Some(false));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(MappingKernel::phi_bar(0.0, 0.0).is_err());
        assert!(MappingKernel::phi_bar(1.0, 2.5).is_err());
        assert!(MappingKernel::psi(1.0, -1.0).is_err());
    }
}
