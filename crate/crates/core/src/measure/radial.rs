//! Radial measures on (0, ∞): atoms plus named density families.
//!
//! The density families are closed under dilation r ↦ κr and under the
//! weight-r² inversion transform E ↦ ∫ 1_E(r⁻¹) r² ν̄(dr), which is what
//! keeps every representation in this crate closed under the operations
//! built on top of it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::exponent::{
    abs_sine_integral, damped_tail_exponent, fourier_power_upper, phase_m1, phase_m1_compensated,
    pure_power_tail_exponent, small_ball_exponent, stable_ray_exponent,
};

use crate::numeric::{power_integral, quad_complex, quad_real, quad_to_infinity, quad_to_zero};

/// Interval of radii with explicit endpoint inclusion; only atoms care
/// about the open/closed flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialInterval {
    pub lo: f64,
    pub hi: f64,
    pub include_lo: bool,
    pub include_hi: bool,
}

impl RadialInterval {
    /// (lo, hi]
    pub fn half_open(lo: f64, hi: f64) -> Self {
        RadialInterval { lo, hi, include_lo: false, include_hi: true }
    }

    /// (lo, ∞)
    pub fn tail(lo: f64) -> Self {
        RadialInterval { lo, hi: f64::INFINITY, include_lo: false, include_hi: false }
    }

    /// [lo, hi)
    pub fn closed_open(lo: f64, hi: f64) -> Self {
        RadialInterval { lo, hi, include_lo: true, include_hi: false }
    }

    pub fn contains(&self, r: f64) -> bool {
        (r > self.lo || (self.include_lo && r == self.lo))
            && (r < self.hi || (self.include_hi && r == self.hi))
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.include_lo && self.include_hi))
    }
}

/// A scalar radial moment: either a finite value or provably divergent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarMoment {
    Finite(f64),
    Divergent,
}

impl ScalarMoment {
    pub fn finite(self) -> Option<f64> {
        match self {
            ScalarMoment::Finite(v) => Some(v),
            ScalarMoment::Divergent => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ScalarMoment::Finite(_))
    }
}

/// Mixing measure on (0,2) for completely selfdecomposable radial parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaMeasure {
    /// Point masses (β_i, w_i).
    Atoms(Vec<(f64, f64)>),
    /// Density coef·e^{rate·β} on (lo, hi) ⊂ (0,2).
    Exponential { lo: f64, hi: f64, coef: f64, rate: f64 },
}

impl GammaMeasure {
    pub fn validate(&self) -> Result<()> {
        match self {
            GammaMeasure::Atoms(atoms) => {
                if atoms.is_empty() {
                    return Err(Error::domain("gamma measure needs at least one atom"));
                }
                for &(beta, w) in atoms {
                    if !(beta > 0.0 && beta < 2.0) {
                        return Err(Error::domain(format!(
                            "gamma atom index {beta} outside (0,2)"
                        )));
                    }
                    if w <= 0.0 {
                        return Err(Error::domain("gamma atom weight must be positive"));
                    }
                }
                Ok(())
            }
            GammaMeasure::Exponential { lo, hi, coef, .. } => {
                if !(*lo > 0.0 && *hi < 2.0 && lo < hi) {
                    return Err(Error::domain(
                        "gamma density support must sit strictly inside (0,2)",
                    ));
                }
                if *coef <= 0.0 {
                    return Err(Error::domain("gamma density coefficient must be positive"));
                }
                Ok(())
            }
        }
    }

    pub fn support_bounds(&self) -> (f64, f64) {
        match self {
            GammaMeasure::Atoms(atoms) => atoms.iter().fold(
                (f64::INFINITY, f64::NEG_INFINITY),
                |(lo, hi), &(b, _)| (lo.min(b), hi.max(b)),
            ),
            GammaMeasure::Exponential { lo, hi, .. } => (*lo, *hi),
        }
    }

    pub fn total_mass(&self) -> f64 {
        match self {
            GammaMeasure::Atoms(atoms) => atoms.iter().map(|&(_, w)| w).sum(),
            GammaMeasure::Exponential { lo, hi, coef, rate } => {
                if rate.abs() < 1e-300 {
                    coef * (hi - lo)
                } else {
                    coef * ((rate * hi).exp() - (rate * lo).exp()) / rate
                }
            }
        }
    }

    /// ∫ f(β) Γ(dβ); exact for atoms, adaptive for the density variant.
    pub fn integrate(&self, f: &dyn Fn(f64) -> f64) -> Result<f64> {
        match self {
            GammaMeasure::Atoms(atoms) => Ok(atoms.iter().map(|&(b, w)| w * f(b)).sum()),
            GammaMeasure::Exponential { lo, hi, coef, rate } => {
                let res = quad_real(|b| coef * (rate * b).exp() * f(b), *lo, *hi, 1e-11)?;
                Ok(res.value)
            }
        }
    }

    pub fn integrate_complex(&self, f: &dyn Fn(f64) -> Complex64) -> Result<Complex64> {
        match self {
            GammaMeasure::Atoms(atoms) => {
                Ok(atoms.iter().map(|&(b, w)| f(b) * w).sum())
            }
            GammaMeasure::Exponential { lo, hi, coef, rate } => {
                let res = quad_complex(|b| f(b) * coef * (rate * b).exp(), *lo, *hi, 1e-11)?;
                Ok(res.value)
            }
        }
    }

    /// β ↦ 2 − β (the inversion image of a stable mixture index).
    pub fn reflect(&self) -> Self {
        match self {
            GammaMeasure::Atoms(atoms) => {
                GammaMeasure::Atoms(atoms.iter().map(|&(b, w)| (2.0 - b, w)).collect())
            }
            GammaMeasure::Exponential { lo, hi, coef, rate } => GammaMeasure::Exponential {
                lo: 2.0 - hi,
                hi: 2.0 - lo,
                coef: coef * (2.0 * rate).exp(),
                rate: -rate,
            },
        }
    }

    /// Reweights by κ^β (the effect of dilation on a stable mixture).
    pub fn tilt(&self, kappa: f64) -> Self {
        match self {
            GammaMeasure::Atoms(atoms) => GammaMeasure::Atoms(
                atoms.iter().map(|&(b, w)| (b, w * kappa.powf(b))).collect(),
            ),
            GammaMeasure::Exponential { lo, hi, coef, rate } => GammaMeasure::Exponential {
                lo: *lo,
                hi: *hi,
                coef: *coef,
                rate: rate + kappa.ln(),
            },
        }
    }

    pub fn scale(&self, t: f64) -> Self {
        match self {
            GammaMeasure::Atoms(atoms) => {
                GammaMeasure::Atoms(atoms.iter().map(|&(b, w)| (b, w * t)).collect())
            }
            GammaMeasure::Exponential { lo, hi, coef, rate } => GammaMeasure::Exponential {
                lo: *lo,
                hi: *hi,
                coef: coef * t,
                rate: *rate,
            },
        }
    }
}

/// Density family of a radial component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialKind {
    /// r^power · e^{−decay·r − inv_decay/r}
    PowerExp { power: f64, decay: f64, inv_decay: f64 },
    /// r^power · (1 + amp·sin(freq·r)) or, with `arg_inverse`,
    /// r^power · (1 + amp·sin(freq/r))
    PowerSine { power: f64, freq: f64, amp: f64, arg_inverse: bool },
    /// ∫_(0,2) r^{−β−1} Γ(dβ); support is always all of (0,∞).
    StableMix { gamma: GammaMeasure },
}

/// One absolutely continuous component: coef · kind-density on (lo, hi).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialComponent {
    pub coef: f64,
    pub lo: f64,
    #[serde(with = "crate::spec_format::maybe_inf")]
    pub hi: f64,
    pub kind: RadialKind,
}

impl RadialComponent {
    pub fn power_exp(coef: f64, power: f64, decay: f64, inv_decay: f64, lo: f64, hi: f64) -> Self {
        RadialComponent {
            coef,
            lo,
            hi,
            kind: RadialKind::PowerExp { power, decay, inv_decay },
        }
    }

    pub fn power_law(coef: f64, power: f64, lo: f64, hi: f64) -> Self {
        Self::power_exp(coef, power, 0.0, 0.0, lo, hi)
    }

    pub fn stable(coef: f64, alpha: f64) -> Self {
        RadialComponent {
            coef,
            lo: 0.0,
            hi: f64::INFINITY,
            kind: RadialKind::StableMix {
                gamma: GammaMeasure::Atoms(vec![(alpha, 1.0)]),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.coef <= 0.0 {
            return Err(Error::domain("radial component coefficient must be positive"));
        }
        if !(self.lo >= 0.0 && self.hi > self.lo) {
            return Err(Error::domain("radial component support is empty"));
        }
        match &self.kind {
            RadialKind::PowerExp { decay, inv_decay, power } => {
                if *decay < 0.0 || *inv_decay < 0.0 {
                    return Err(Error::domain("decay rates must be nonnegative"));
                }
                if !power.is_finite() {
                    return Err(Error::domain("power must be finite"));
                }
                Ok(())
            }
            RadialKind::PowerSine { amp, freq, .. } => {
                if amp.abs() > 1.0 {
                    return Err(Error::domain("sine amplitude must satisfy |amp| <= 1"));
                }
                if *freq <= 0.0 {
                    return Err(Error::domain("sine frequency must be positive"));
                }
                Ok(())
            }
            RadialKind::StableMix { gamma } => {
                if self.lo != 0.0 || self.hi.is_finite() {
                    return Err(Error::domain("stable mixtures live on all of (0,∞)"));
                }
                gamma.validate()
            }
        }
    }

    pub fn density(&self, r: f64) -> f64 {
        if !(r > self.lo && r < self.hi && r > 0.0) {
            return 0.0;
        }
        self.coef * self.kind_density(r)
    }

    fn kind_density(&self, r: f64) -> f64 {
        match &self.kind {
            RadialKind::PowerExp { power, decay, inv_decay } => {
                r.powf(*power) * (-decay * r - inv_decay / r).exp()
            }
            RadialKind::PowerSine { power, freq, amp, arg_inverse } => {
                let arg = if *arg_inverse { freq / r } else { freq * r };
                r.powf(*power) * (1.0 + amp * arg.sin())
            }
            RadialKind::StableMix { gamma } => gamma
                .integrate(&|beta| r.powf(-beta - 1.0))
                .unwrap_or(f64::NAN),
        }
    }

    fn clipped(&self, iv: RadialInterval) -> Option<(f64, f64)> {
        let lo = self.lo.max(iv.lo);
        let hi = self.hi.min(iv.hi);
        if hi > lo {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Analytic finiteness of ∫ r^s over the clipped interval.
    fn moment_is_finite(&self, s: f64, lo: f64, hi: f64) -> bool {
        let zero_end_ok = lo > 0.0
            || match &self.kind {
                RadialKind::PowerExp { power, inv_decay, .. } => {
                    *inv_decay > 0.0 || s + power > -1.0
                }
                RadialKind::PowerSine { power, .. } => s + power > -1.0,
                RadialKind::StableMix { gamma } => gamma.support_bounds().1 < s,
            };
        let inf_end_ok = hi.is_finite()
            || match &self.kind {
                RadialKind::PowerExp { power, decay, .. } => *decay > 0.0 || s + power < -1.0,
                RadialKind::PowerSine { power, .. } => s + power < -1.0,
                RadialKind::StableMix { gamma } => gamma.support_bounds().0 > s,
            };
        zero_end_ok && inf_end_ok
    }

    /// ∫_{iv} r^s · density dr, with exact divergence detection.
    pub fn moment(&self, s: f64, iv: RadialInterval) -> Result<ScalarMoment> {
        let Some((lo, hi)) = self.clipped(iv) else {
            return Ok(ScalarMoment::Finite(0.0));
        };
        if !self.moment_is_finite(s, lo, hi) {
            return Ok(ScalarMoment::Divergent);
        }
        let v = match &self.kind {
            RadialKind::PowerExp { power, decay, inv_decay } => {
                self.coef * powerexp_moment(s + power, *decay, *inv_decay, lo, hi)?
            }
            RadialKind::PowerSine { power, freq, amp, arg_inverse } => {
                let q = s + power;
                let smooth = self.coef * power_integral(q, lo, hi);
                let wobble = self.coef * amp * sine_moment(q, *freq, *arg_inverse, lo, hi)?;
                smooth + wobble
            }
            RadialKind::StableMix { gamma } => {
                self.coef * gamma.integrate(&|beta| power_integral(s - beta - 1.0, lo, hi))?
            }
        };
        Ok(ScalarMoment::Finite(v))
    }

    /// ∫ (e^{iθr} − 1 − iθr·1_{r≤1}) · density dr over the support.
    pub fn exponent_integral(&self, theta: f64, tol: f64) -> Result<Complex64> {
        if theta == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        match &self.kind {
            RadialKind::StableMix { gamma } => {
                let v = gamma.integrate_complex(&|beta| stable_ray_exponent(beta, theta))?;
                Ok(v * self.coef)
            }
            RadialKind::PowerExp { power, decay, inv_decay } => {
                let dens = |r: f64| self.kind_density(r);
                let small = small_ball_exponent(&dens, theta, self.lo, self.hi, tol)? * self.coef;
                let tail = if self.hi <= 1.0 {
                    Complex64::new(0.0, 0.0)
                } else if *decay > 0.0 || self.hi.is_finite() {
                    damped_tail_exponent(&dens, theta, self.lo, self.hi, tol)? * self.coef
                } else if *inv_decay == 0.0 {
                    pure_power_tail_exponent(*power, theta, self.lo, self.hi, tol)? * self.coef
                } else {
                    // e^{-b/r} tail: expand around 1 beyond a knee radius
                    self.coef * inv_damped_tail(*power, *inv_decay, theta, self.lo.max(1.0), tol)?
                };
                Ok(small + tail)
            }
            RadialKind::PowerSine { power, freq, amp, arg_inverse } => {
                let plain = RadialComponent::power_law(self.coef, *power, self.lo, self.hi);
                let base = plain.exponent_integral(theta, tol)?;
                let wobble = if *arg_inverse {
                    sine_exponent_arg_inverse(*power, *freq, theta, self.lo, self.hi.min(1.0), tol)?
                } else {
                    sine_exponent_direct(*power, *freq, theta, self.lo, self.hi, tol)?
                };
                Ok(base + wobble * (self.coef * amp))
            }
        }
    }

    /// ∫ over (0, min(a, hi)) ∩ support of (e^{iθr} − 1 − iθr) · density dr:
    /// the fully compensated integrand truncated at radius `a` ≥ 1.
    pub fn compensated_exponent_truncated(&self, theta: f64, a: f64, tol: f64) -> Result<Complex64> {
        assert!(a >= 1.0);
        if theta == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let m = a.min(self.hi);
        if let RadialKind::StableMix { gamma } = &self.kind {
            // closed form for the whole of (0, m]
            let v = gamma.integrate_complex(&|beta| {
                let full = stable_ray_exponent(beta, theta);
                let beyond =
                    pure_power_tail_exponent(-1.0 - beta, theta, m, f64::INFINITY, tol * 0.2)
                        .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
                let lin = power_integral(-beta, 1.0, m);
                full - beyond - Complex64::new(0.0, theta * lin)
            })?;
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::numerical("stable truncated exponent failed", f64::NAN));
            }
            return Ok(v * self.coef);
        }
        let dens = |r: f64| self.kind_density(r);
        let small = small_ball_exponent(&dens, theta, self.lo, self.hi, tol)? * self.coef;
        if m <= 1.0 {
            return Ok(small);
        }
        let l = self.lo.max(1.0);
        let outer = match &self.kind {
            RadialKind::PowerExp { power, decay, inv_decay } => {
                if *decay > 0.0 {
                    // integrand dies with the density; cap the range where e^{-ar} matters
                    let cap = m.min(l.max(700.0 / decay));
                    quad_complex(
                        |r| phase_m1_compensated(theta * r) * dens(r),
                        l,
                        cap,
                        tol,
                    )?
                    .value
                } else if *inv_decay == 0.0 {
                    compensated_power_segment(*power, theta, l, m, tol)?
                } else {
                    // expand e^{-b/r} beyond max(l, 4b)
                    let knee = l.max(4.0 * inv_decay);
                    let mut v = Complex64::new(0.0, 0.0);
                    if knee > l {
                        v += quad_complex(
                            |r| phase_m1_compensated(theta * r) * dens(r),
                            l,
                            knee.min(m),
                            tol,
                        )?
                        .value;
                    }
                    if m > knee {
                        let mut coef = 1.0;
                        for k in 0..50 {
                            let pk = power - k as f64;
                            let term = compensated_power_segment(pk, theta, knee, m, tol)? * coef;
                            v += term;
                            coef *= -inv_decay / ((k + 1) as f64);
                            if term.norm() < tol * 0.01 && k > 1 {
                                break;
                            }
                        }
                    }
                    v
                }
            }
            RadialKind::PowerSine { power, freq, amp, arg_inverse } => {
                let base = compensated_power_segment(*power, theta, l, m, tol)?;
                let wobble = if *arg_inverse {
                    // sin(ω/r) beyond r = 1 oscillates slower and slower
                    quad_complex(
                        |r| {
                            phase_m1_compensated(theta * r)
                                * r.powf(*power)
                                * (freq / r).sin()
                        },
                        l,
                        m,
                        tol,
                    )?
                    .value
                } else {
                    // sin(ωr)(e^{iθr}−1) − iθ r^{p+1} sin(ωr), via product-to-sum
                    let mut v = Complex64::new(0.0, 0.0);
                    let halves = [
                        (theta + freq, Complex64::new(0.0, -0.5)),
                        (theta - freq, Complex64::new(0.0, 0.5)),
                        (*freq, Complex64::new(0.0, 0.5)),
                        (-*freq, Complex64::new(0.0, -0.5)),
                    ];
                    for (w, c) in halves {
                        v += c * crate::numeric::fourier_power_segment(*power, w, l, m, tol * 0.2)?;
                    }
                    let lin = crate::numeric::fourier_power_segment(*power + 1.0, *freq, l, m, tol * 0.2)?;
                    v -= Complex64::new(0.0, theta) * lin.im;
                    v
                };
                base + wobble * *amp
            }
            RadialKind::StableMix { .. } => unreachable!("handled above"),
        };
        Ok(small + outer * self.coef)
    }

    pub fn dilate(&self, kappa: f64) -> Self {
        match &self.kind {
            RadialKind::PowerExp { power, decay, inv_decay } => RadialComponent {
                coef: self.coef * kappa.powf(-power - 1.0),
                lo: self.lo * kappa,
                hi: self.hi * kappa,
                kind: RadialKind::PowerExp {
                    power: *power,
                    decay: decay / kappa,
                    inv_decay: inv_decay * kappa,
                },
            },
            RadialKind::PowerSine { power, freq, amp, arg_inverse } => RadialComponent {
                coef: self.coef * kappa.powf(-power - 1.0),
                lo: self.lo * kappa,
                hi: self.hi * kappa,
                kind: RadialKind::PowerSine {
                    power: *power,
                    freq: if *arg_inverse { freq * kappa } else { freq / kappa },
                    amp: *amp,
                    arg_inverse: *arg_inverse,
                },
            },
            RadialKind::StableMix { gamma } => RadialComponent {
                coef: self.coef,
                lo: 0.0,
                hi: f64::INFINITY,
                kind: RadialKind::StableMix { gamma: gamma.tilt(kappa) },
            },
        }
    }

    /// Image under E ↦ ∫ 1_E(r⁻¹) r² ν̄(dr): density u^{−4}·m(1/u).
    pub fn invert_sharp(&self) -> Self {
        let (lo, hi) = (
            if self.hi.is_finite() { 1.0 / self.hi } else { 0.0 },
            if self.lo > 0.0 { 1.0 / self.lo } else { f64::INFINITY },
        );
        match &self.kind {
            RadialKind::PowerExp { power, decay, inv_decay } => RadialComponent {
                coef: self.coef,
                lo,
                hi,
                kind: RadialKind::PowerExp {
                    power: -4.0 - power,
                    decay: *inv_decay,
                    inv_decay: *decay,
                },
            },
            RadialKind::PowerSine { power, freq, amp, arg_inverse } => RadialComponent {
                coef: self.coef,
                lo,
                hi,
                kind: RadialKind::PowerSine {
                    power: -4.0 - power,
                    freq: *freq,
                    amp: *amp,
                    arg_inverse: !arg_inverse,
                },
            },
            RadialKind::StableMix { gamma } => RadialComponent {
                coef: self.coef,
                lo: 0.0,
                hi: f64::INFINITY,
                kind: RadialKind::StableMix { gamma: gamma.reflect() },
            },
        }
    }

    pub fn scale_mass(&self, t: f64) -> Self {
        let mut out = self.clone();
        match &mut out.kind {
            RadialKind::StableMix { gamma } => *gamma = gamma.scale(t),
            _ => out.coef *= t,
        }
        out
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let close = |a: f64, b: f64| {
            (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
                || (a.is_infinite() && b.is_infinite() && a.signum() == b.signum())
        };
        if !close(self.coef, other.coef) || !close(self.lo, other.lo) || !close(self.hi, other.hi)
        {
            return false;
        }
        match (&self.kind, &other.kind) {
            (
                RadialKind::PowerExp { power: p1, decay: d1, inv_decay: i1 },
                RadialKind::PowerExp { power: p2, decay: d2, inv_decay: i2 },
            ) => close(*p1, *p2) && close(*d1, *d2) && close(*i1, *i2),
            (
                RadialKind::PowerSine { power: p1, freq: f1, amp: a1, arg_inverse: v1 },
                RadialKind::PowerSine { power: p2, freq: f2, amp: a2, arg_inverse: v2 },
            ) => close(*p1, *p2) && close(*f1, *f2) && close(*a1, *a2) && v1 == v2,
            (RadialKind::StableMix { gamma: g1 }, RadialKind::StableMix { gamma: g2 }) => {
                match (g1, g2) {
                    (GammaMeasure::Atoms(a1), GammaMeasure::Atoms(a2)) => {
                        a1.len() == a2.len()
                            && a1.iter().zip(a2).all(|(x, y)| close(x.0, y.0) && close(x.1, y.1))
                    }
                    (
                        GammaMeasure::Exponential { lo: l1, hi: h1, coef: c1, rate: r1 },
                        GammaMeasure::Exponential { lo: l2, hi: h2, coef: c2, rate: r2 },
                    ) => close(*l1, *l2) && close(*h1, *h2) && close(*c1, *c2) && close(*r1, *r2),
                    _ => false,
                }
            }
            _ => false,
        }
    }
}

/// ∫_l^m (e^{iθr} − 1 − iθr) r^p dr via Fourier segments and closed power
/// integrals; valid for any finite 1 ≤ l < m.
fn compensated_power_segment(p: f64, theta: f64, l: f64, m: f64, tol: f64) -> Result<Complex64> {
    let osc = crate::numeric::fourier_power_segment(p, theta, l, m, tol * 0.5)?;
    let plain = power_integral(p, l, m);
    let lin = power_integral(p + 1.0, l, m);
    Ok(osc - Complex64::new(plain, theta * lin))
}

/// ∫_lo^hi r^q e^{−a r − b/r} dr, finiteness already established.
fn powerexp_moment(q: f64, a: f64, b: f64, lo: f64, hi: f64) -> Result<f64> {
    if a == 0.0 && b == 0.0 {
        return Ok(power_integral(q, lo, hi));
    }
    let f = |r: f64| Complex64::new(r.powf(q) * (-a * r - b / r).exp(), 0.0);
    let mut total = 0.0;

    // zero end
    let knee_lo = if lo == 0.0 {
        let k = if hi.is_finite() { hi } else { 1.0 };
        total += quad_to_zero(f, k, 1e-12)?.value.re;
        k
    } else {
        lo
    };
    if hi.is_finite() {
        if hi > knee_lo {
            total += quad_real(|r| r.powf(q) * (-a * r - b / r).exp(), knee_lo, hi, 1e-12)?.value;
        }
        return Ok(total);
    }
    // infinite tail
    if a > 0.0 {
        total += quad_to_infinity(f, knee_lo, 1e-12)?.value.re;
        return Ok(total);
    }
    // a = 0, b > 0, q < -1: expand e^{-b/r} beyond a knee
    let knee = knee_lo.max(4.0 * b).max(1.0);
    if knee > knee_lo {
        total += quad_real(|r| r.powf(q) * (-b / r).exp(), knee_lo, knee, 1e-12)?.value;
    }
    let mut term = 1.0;
    for k in 0..60 {
        let p = q - k as f64;
        if p >= -1.0 {
            return Err(Error::numerical("powerexp tail expansion invalid", p));
        }
        let contribution = term * power_integral(p, knee, f64::INFINITY);
        total += contribution;
        term *= -b / ((k + 1) as f64);
        if contribution.abs() < 1e-14 && k > 2 {
            return Ok(total);
        }
    }
    Ok(total)
}

/// ∫_lo^hi r^q sin(arg) dr where arg = freq·r or freq/r.
fn sine_moment(q: f64, freq: f64, arg_inverse: bool, lo: f64, hi: f64) -> Result<f64> {
    if arg_inverse {
        // substitute u = 1/r
        let (a, b) = (
            if hi.is_finite() { 1.0 / hi } else { 0.0 },
            if lo > 0.0 { 1.0 / lo } else { f64::INFINITY },
        );
        return fourier_sine_over(-q - 2.0, freq, a, b);
    }
    fourier_sine_over(q, freq, lo, hi)
}

/// ∫_a^b u^q sin(ωu) du allowing a = 0 (integrand ~ ω u^{q+1}) and b = ∞
/// (requires q < 0 with IBP tails).
fn fourier_sine_over(q: f64, omega: f64, a: f64, b: f64) -> Result<f64> {
    let mut total = 0.0;
    let mut lo = a;
    if a == 0.0 {
        let k = b.min(1.0);
        total += quad_to_zero(
            |u| Complex64::new(u.powf(q) * (omega * u).sin(), 0.0),
            k,
            1e-12,
        )?
        .value
        .re;
        lo = k;
    }
    if b > lo {
        let v = if b.is_finite() {
            crate::numeric::fourier_power_segment(q, omega, lo, b, 1e-12)?
        } else {
            fourier_power_upper(q, omega, lo, 1e-12)?
        };
        total += v.im;
    }
    Ok(total)
}

/// Tail exponent piece for density r^p e^{−b/r} with no exponential decay:
/// expands e^{−b/r} beyond a knee and reuses pure-power Fourier tails.
fn inv_damped_tail(p: f64, b: f64, theta: f64, lo: f64, tol: f64) -> Result<Complex64> {
    let knee = lo.max(4.0 * b).max(8.0);
    let mut total = Complex64::new(0.0, 0.0);
    if knee > lo {
        total += quad_complex(
            |r| phase_m1(theta * r) * r.powf(p) * (-b / r).exp(),
            lo,
            knee,
            tol,
        )?
        .value;
    }
    let mut coef = 1.0;
    for k in 0..50 {
        let pk = p - k as f64;
        let osc = fourier_power_upper(pk, theta, knee, tol)?;
        let plain = power_integral(pk, knee, f64::INFINITY);
        let contribution = (osc - Complex64::new(plain, 0.0)) * coef;
        total += contribution;
        coef *= -b / ((k + 1) as f64);
        if contribution.norm() < tol * 0.01 && k > 1 {
            break;
        }
    }
    Ok(total)
}

/// Small-ball sine piece with the oscillation at zero:
/// ∫_(lo, hi∧1] (e^{iθr}−1−iθr) r^p sin(ω/r) dr.
fn sine_exponent_arg_inverse(
    p: f64,
    omega: f64,
    theta: f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<Complex64> {
    if hi <= lo {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // direct region: oscillation count of sin(ω/r) on [split, hi] stays modest
    let split = lo.max(1.0 / 32.0).min(hi);
    let mut total = Complex64::new(0.0, 0.0);
    if hi > split {
        total += quad_complex(
            |r| phase_m1_compensated(theta * r) * r.powf(p) * (omega / r).sin(),
            split,
            hi,
            tol,
        )?
        .value;
    }
    if split > lo {
        // u = 1/r: ∫ (e^{iθ/u}−1−iθ/u) u^{−p−2} sin(ωu) du over [1/split, 1/lo)
        let a = 1.0 / split;
        let b = if lo > 0.0 { 1.0 / lo } else { f64::INFINITY };
        let mut pow = Complex64::new(1.0, 0.0);
        let itheta = Complex64::new(0.0, theta);
        let mut factorial = 2.0;
        pow = pow * itheta * itheta;
        for k in 2..40 {
            let qk = -(k as f64) - p - 2.0;
            let seg = if b.is_finite() {
                crate::numeric::fourier_power_segment(qk, omega, a, b, tol * 0.01)?
            } else {
                fourier_power_upper(qk, omega, a, tol * 0.01)?
            };
            let term = pow / factorial * seg.im;
            total += term;
            pow *= itheta;
            factorial *= (k + 1) as f64;
            if term.norm() < tol * 1e-3 && k > 4 {
                break;
            }
        }
    }
    Ok(total)
}

/// Sine piece with the oscillation at infinity:
/// ∫ (e^{iθr}−1−iθr·1_{r≤1}) r^p sin(ωr) dr over (lo, hi).
fn sine_exponent_direct(
    p: f64,
    omega: f64,
    theta: f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    let h_small = hi.min(1.0);
    if h_small > lo {
        let f = |r: f64| phase_m1_compensated(theta * r) * r.powf(p) * (omega * r).sin();
        total += if lo > 0.0 {
            quad_complex(f, lo, h_small, tol)?.value
        } else {
            quad_to_zero(f, h_small, tol)?.value
        };
    }
    let l_tail = lo.max(1.0);
    if hi > l_tail {
        if hi.is_finite() {
            total += quad_complex(
                |r| phase_m1(theta * r) * r.powf(p) * (omega * r).sin(),
                l_tail,
                hi,
                tol,
            )?
            .value;
        } else {
            // product-to-sum: sin(ωr)(e^{iθr}−1) over the unbounded tail
            let halves = [
                (theta + omega, Complex64::new(0.0, -0.5)),
                (theta - omega, Complex64::new(0.0, 0.5)),
                (omega, Complex64::new(0.0, 0.5)),
                (-omega, Complex64::new(0.0, -0.5)),
            ];
            for (freq, w) in halves {
                let seg = fourier_power_upper(p, freq, l_tail, tol * 0.25)?;
                total += w * seg;
            }
        }
    }
    Ok(total)
}

/// Indicator partial of the absolute-convergence integrand for a two-ray
/// sine pair: ∫_a^b r^{q} |sin(ω/r)| dr via u = 1/r.
pub fn abs_sine_pair_partial(q: f64, omega: f64, a: f64, b: f64) -> Result<f64> {
    assert!(a > 0.0 && b > a);
    abs_sine_integral(-q - 2.0, omega, 1.0 / b, 1.0 / a, 1e-7)
}

/// Radial measure: point masses plus density components.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RadialMeasure {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atoms: Vec<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<RadialComponent>,
}

impl RadialMeasure {
    pub fn from_atoms(atoms: Vec<(f64, f64)>) -> Self {
        RadialMeasure { atoms, components: Vec::new() }
    }

    pub fn from_component(c: RadialComponent) -> Self {
        RadialMeasure { atoms: Vec::new(), components: vec![c] }
    }

    pub fn validate(&self) -> Result<()> {
        for &(r, m) in &self.atoms {
            if !(r > 0.0) {
                return Err(Error::domain("radial atom must have positive radius"));
            }
            if !(m > 0.0) {
                return Err(Error::domain("radial atom must have positive mass"));
            }
        }
        for c in &self.components {
            c.validate()?;
        }
        if self.atoms.is_empty() && self.components.is_empty() {
            return Err(Error::domain("radial measure is empty"));
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.components.is_empty()
    }

    /// Total density at r (atoms excluded).
    pub fn density(&self, r: f64) -> f64 {
        self.components.iter().map(|c| c.density(r)).sum()
    }

    pub fn moment(&self, s: f64, iv: RadialInterval) -> Result<ScalarMoment> {
        let mut total: f64 = self
            .atoms
            .iter()
            .filter(|&&(r, _)| iv.contains(r))
            .map(|&(r, m)| m * r.powf(s))
            .sum();
        for c in &self.components {
            match c.moment(s, iv)? {
                ScalarMoment::Finite(v) => total += v,
                ScalarMoment::Divergent => return Ok(ScalarMoment::Divergent),
            }
        }
        Ok(ScalarMoment::Finite(total))
    }

    pub fn exponent_integral(&self, theta: f64, tol: f64) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for &(r, m) in &self.atoms {
            let x = theta * r;
            total += if r <= 1.0 {
                phase_m1_compensated(x) * m
            } else {
                phase_m1(x) * m
            };
        }
        for c in &self.components {
            total += c.exponent_integral(theta, tol)?;
        }
        Ok(total)
    }

    /// Fully compensated exponent integrand truncated at radius `a`.
    pub fn compensated_exponent_truncated(&self, theta: f64, a: f64, tol: f64) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for &(r, m) in &self.atoms {
            if r <= a {
                total += phase_m1_compensated(theta * r) * m;
            }
        }
        for c in &self.components {
            total += c.compensated_exponent_truncated(theta, a, tol)?;
        }
        Ok(total)
    }

    pub fn dilate(&self, kappa: f64) -> Self {
        RadialMeasure {
            atoms: self.atoms.iter().map(|&(r, m)| (r * kappa, m)).collect(),
            components: self.components.iter().map(|c| c.dilate(kappa)).collect(),
        }
    }

    pub fn invert_sharp(&self) -> Self {
        RadialMeasure {
            atoms: self.atoms.iter().map(|&(r, m)| (1.0 / r, m * r * r)).collect(),
            components: self.components.iter().map(|c| c.invert_sharp()).collect(),
        }
    }

    pub fn scale_mass(&self, t: f64) -> Self {
        RadialMeasure {
            atoms: self.atoms.iter().map(|&(r, m)| (r, m * t)).collect(),
            components: self.components.iter().map(|c| c.scale_mass(t)).collect(),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.atoms.len() != other.atoms.len()
            || self.components.len() != other.components.len()
        {
            return false;
        }
        let mut a1 = self.atoms.clone();
        let mut a2 = other.atoms.clone();
        a1.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        a2.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let close = |a: f64, b: f64| (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()));
        if !a1
            .iter()
            .zip(&a2)
            .all(|(x, y)| close(x.0, y.0) && close(x.1, y.1))
        {
            return false;
        }
        self.components
            .iter()
            .zip(&other.components)
            .all(|(c1, c2)| c1.approx_eq(c2, tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_open(lo: f64, hi: f64) -> RadialInterval {
        RadialInterval::half_open(lo, hi)
    }

    #[test]
    fn atom_moments_respect_interval_endpoints() {
        let m = RadialMeasure::from_atoms(vec![(1.0, 3.0), (2.0, 1.0)]);
        let inside = m.moment(1.0, half_open(0.5, 1.0)).unwrap();
        assert_eq!(inside, ScalarMoment::Finite(3.0));
        let excluded = m.moment(1.0, RadialInterval::closed_open(1.0, 2.0)).unwrap();
        assert_eq!(excluded, ScalarMoment::Finite(3.0));
        let tail = m.moment(0.0, RadialInterval::tail(1.0)).unwrap();
        assert_eq!(tail, ScalarMoment::Finite(1.0));
    }

    #[test]
    fn gamma_subordinator_first_moment_below_one() {
        // ∫_0^1 r · r^{-1} e^{-r} dr = 1 − e^{-1}
        let c = RadialComponent::power_exp(1.0, -1.0, 1.0, 0.0, 0.0, f64::INFINITY);
        let v = c.moment(1.0, half_open(0.0, 1.0)).unwrap().finite().unwrap();
        assert!((v - (1.0 - (-1f64).exp())).abs() < 1e-10);
    }

    #[test]
    fn cauchy_density_diverges_where_it_should() {
        let c = RadialComponent::stable(1.0 / std::f64::consts::PI, 1.0);
        assert_eq!(
            c.moment(1.0, half_open(0.0, 1.0)).unwrap(),
            ScalarMoment::Divergent
        );
        assert_eq!(
            c.moment(1.0, RadialInterval::tail(1.0)).unwrap(),
            ScalarMoment::Divergent
        );
        // tail mass is 1/(π t)
        let tail = c.moment(0.0, RadialInterval::tail(2.0)).unwrap().finite().unwrap();
        assert!((tail - 0.5 / std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn stable_mix_matches_plain_power_law() {
        let mixed = RadialComponent::stable(2.0, 0.5);
        let plain = RadialComponent::power_law(2.0, -1.5, 0.0, f64::INFINITY);
        for iv in [half_open(0.25, 1.0), half_open(1.0, 8.0), RadialInterval::tail(1.0)] {
            let a = mixed.moment(1.0, iv).unwrap();
            let b = plain.moment(1.0, iv).unwrap();
            match (a, b) {
                (ScalarMoment::Finite(x), ScalarMoment::Finite(y)) => {
                    assert!((x - y).abs() < 1e-10)
                }
                (x, y) => assert_eq!(x, y),
            }
        }
    }

    #[test]
    fn dilation_preserves_mass_and_scales_radii() {
        let c = RadialComponent::power_exp(1.0, -1.0, 1.0, 0.0, 0.0, f64::INFINITY);
        let d = c.dilate(2.0);
        // pushforward preserves total mass of any window: ∫_{(a,b]} ν = ∫_{(2a,2b]} T_2 ν
        let orig = c.moment(0.0, half_open(0.5, 1.5)).unwrap().finite().unwrap();
        let moved = d.moment(0.0, half_open(1.0, 3.0)).unwrap().finite().unwrap();
        assert!((orig - moved).abs() < 1e-10);
    }

    #[test]
    fn sharp_inversion_is_an_involution_on_components() {
        let c = RadialComponent::power_exp(0.7, -1.3, 0.4, 0.2, 0.25, 4.0);
        let back = c.invert_sharp().invert_sharp();
        assert!(c.approx_eq(&back, 1e-14));
        let s = RadialComponent::stable(1.0, 0.7);
        let sb = s.invert_sharp();
        match &sb.kind {
            RadialKind::StableMix { gamma: GammaMeasure::Atoms(a) } => {
                assert!((a[0].0 - 1.3).abs() < 1e-15)
            }
            _ => panic!("unexpected kind"),
        }
        assert!(s.approx_eq(&sb.invert_sharp(), 1e-14));
    }

    #[test]
    fn sharp_inversion_pushes_mass_correctly() {
        // ν̄♯((1/b, 1/a]) = ∫_{[a, b)} r² ν̄(dr), checked on the gamma density
        let c = RadialComponent::power_exp(1.0, -1.0, 1.0, 0.0, 0.0, f64::INFINITY);
        let sharp = c.invert_sharp();
        let lhs = sharp.moment(0.0, half_open(0.5, 2.0)).unwrap().finite().unwrap();
        let rhs = c.moment(2.0, half_open(0.5, 2.0)).unwrap().finite().unwrap();
        assert!((lhs - rhs).abs() < 1e-9, "lhs={lhs} rhs={rhs}");
    }

    #[test]
    fn sine_component_moment_matches_quadrature() {
        let c = RadialComponent {
            coef: 1.0,
            lo: 0.0,
            hi: 1.0,
            kind: RadialKind::PowerSine { power: -2.0, freq: 20.0, amp: 0.9, arg_inverse: true },
        };
        let got = c.moment(1.0, half_open(0.25, 1.0)).unwrap().finite().unwrap();
        let brute = quad_real(
            |r| r.powf(-1.0) * (1.0 + 0.9 * (20.0 / r).sin()),
            0.25,
            1.0,
            1e-12,
        )
        .unwrap()
        .value;
        assert!((got - brute).abs() < 1e-9, "got={got} brute={brute}");
    }

    #[test]
    fn oscillating_small_moments_converge_conditionally() {
        // ∫_ε^1 r^{-1} sin(ω/r) dr = ∫_1^{1/ε} sin(ωu)/u du → π/2 − Si(ω)
        let c = RadialComponent {
            coef: 1.0,
            lo: 0.0,
            hi: 1.0,
            kind: RadialKind::PowerSine { power: -2.0, freq: 8.0, amp: 1.0, arg_inverse: true },
        };
        let deep = c.moment(1.0, half_open(2f64.powi(-30), 1.0)).unwrap().finite().unwrap();
        let deeper = c.moment(1.0, half_open(2f64.powi(-40), 1.0)).unwrap().finite().unwrap();
        // smooth part is log-divergent-free here: power -2 + s 1 = -1... the
        // plain piece ∫ r^{-1} dr does diverge, so compare the sine pieces only
        let smooth_deep = power_integral(-1.0, 2f64.powi(-30), 1.0);
        let smooth_deeper = power_integral(-1.0, 2f64.powi(-40), 1.0);
        let osc_deep = deep - smooth_deep;
        let osc_deeper = deeper - smooth_deeper;
        assert!((osc_deep - osc_deeper).abs() < 1e-6, "{osc_deep} vs {osc_deeper}");
    }
}
