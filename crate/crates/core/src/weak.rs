//! Weak means and weak drifts: principal-value location functionals
//! obtained as limits of truncated first-moment integrals, together with
//! their absolute variants, the polar-product equivalences, and the
//! strict-1-stability test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::measure::{
    LambdaFamily, LevyMeasureRepr, RadialInterval, RadialKind, Ray, ScalarMoment,
    SphericalMeasure,
};
use crate::measure::radial::abs_sine_pair_partial;
use crate::numeric::{detect_limit, DetectorParams, SeqOutcome};
use crate::triplet::LevyTriplet;

/// Which principal-value functional a result refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeakKind {
    WeakMean,
    WeakDrift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeakStatus {
    Exists,
    Diverges,
    Inconclusive,
}

/// Outcome of a weak-moment computation, with the truncation trace kept
/// for reporting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeakMomentResult {
    pub kind: WeakKind,
    pub status: WeakStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Vec<f64>>,
    /// true / false, or None when the absolute check is numerically
    /// inconclusive.
    pub absolute: Option<bool>,
    /// (truncation level, partial integral) pairs.
    pub trace: Vec<(f64, Vec<f64>)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct WeakParams {
    pub detector: DetectorParams,
    /// Verify an existing weak mean against the mean-compensated form of
    /// the exponent on a z-grid.
    pub verify_exponent: bool,
    pub exponent_tol: f64,
}

impl Default for WeakParams {
    fn default() -> Self {
        WeakParams {
            detector: DetectorParams::default(),
            verify_exponent: true,
            exponent_tol: 1e-6,
        }
    }
}

/// ∫_{1<|x|≤a} x ν(dx).
pub fn tail_moment(nu: &LevyMeasureRepr, a: f64) -> Result<Vec<f64>> {
    if !(a > 1.0) {
        return Err(Error::domain("tail moment requires a > 1"));
    }
    nu.vector_moment(1.0, RadialInterval::half_open(1.0, a))
}

/// ∫_{ε<|x|≤1} x ν(dx).
pub fn small_moment(nu: &LevyMeasureRepr, eps: f64) -> Result<Vec<f64>> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain("small moment requires ε in (0,1)"));
    }
    nu.vector_moment(1.0, RadialInterval::half_open(eps, 1.0))
}

fn shell(kind: WeakKind, k: usize) -> RadialInterval {
    match kind {
        WeakKind::WeakMean => RadialInterval::half_open(2f64.powi(k as i32), 2f64.powi(k as i32 + 1)),
        WeakKind::WeakDrift => {
            RadialInterval::half_open(2f64.powi(-(k as i32) - 1), 2f64.powi(-(k as i32)))
        }
    }
}

fn level_of(kind: WeakKind, k: usize) -> f64 {
    match kind {
        WeakKind::WeakMean => 2f64.powi(k as i32 + 1),
        WeakKind::WeakDrift => 2f64.powi(-(k as i32) - 1),
    }
}

/// Shared machinery: detect the limit of the truncated vector integrals.
fn weak_limit(mu: &LevyTriplet, kind: WeakKind, params: &WeakParams) -> Result<WeakMomentResult> {
    let nu = mu.levy();
    let d = mu.dim();
    let absolute = match kind {
        WeakKind::WeakMean => weak_mean_absolute(nu)?,
        WeakKind::WeakDrift => weak_drift_absolute(nu)?,
    };

    let mut notes = Vec::new();

    // Fast path: the relevant first moment is finite, so the truncated
    // integrals converge absolutely to an exactly computable value.
    let region = match kind {
        WeakKind::WeakMean => RadialInterval::tail(1.0),
        WeakKind::WeakDrift => RadialInterval::half_open(0.0, 1.0),
    };
    let analytic_total = if mu.levy().is_trivial() {
        Some(vec![0.0; d])
    } else if let ScalarMoment::Finite(_) = nu.moment(1.0, region)? {
        Some(nu.vector_moment(1.0, region)?)
    } else if nu.is_symmetric() {
        notes.push("symmetric measure: truncated integrals vanish identically".into());
        Some(vec![0.0; d])
    } else {
        None
    };

    let mut trace = Vec::new();
    let outcome = if let Some(total) = &analytic_total {
        // record a short trace for the report
        let mut partial = vec![0.0; d];
        for k in 0..8 {
            let inc = mu.vector_moment(1.0, shell(kind, k))?;
            linalg::axpy(&mut partial, 1.0, &inc);
            trace.push((level_of(kind, k), partial.clone()));
        }
        SeqOutcome::Converged { value: total.clone(), partials: vec![] }
    } else {
        let out = detect_limit(|k| mu.vector_moment(1.0, shell(kind, k)), &params.detector)?;
        let partials = match &out {
            SeqOutcome::Converged { partials, .. }
            | SeqOutcome::Diverged { partials }
            | SeqOutcome::Inconclusive { partials } => partials.clone(),
        };
        for (k, p) in partials.iter().enumerate() {
            trace.push((level_of(kind, k), p.clone()));
        }
        out
    };

    let (status, value) = match outcome {
        SeqOutcome::Converged { value: limit, .. } => {
            let v = match kind {
                WeakKind::WeakMean => linalg::add(mu.location(), &limit),
                WeakKind::WeakDrift => linalg::sub(mu.location(), &limit),
            };
            (WeakStatus::Exists, Some(v))
        }
        SeqOutcome::Diverged { .. } => (WeakStatus::Diverges, None),
        SeqOutcome::Inconclusive { .. } => {
            if absolute == Some(true) {
                notes.push(
                    "absolute convergence certified analytically but the limit value \
                     did not settle numerically"
                        .into(),
                );
            }
            (WeakStatus::Inconclusive, None)
        }
    };

    // Tie the weak-mean value to the mean-compensated form of the exponent.
    if params.verify_exponent
        && kind == WeakKind::WeakMean
        && status == WeakStatus::Exists
        && !mu.levy().is_trivial()
    {
        let m = value.as_ref().unwrap();
        let cutoff = 2f64.powi(30);
        let zs = exponent_check_grid(d);
        let mut worst: f64 = 0.0;
        for z in &zs {
            let lhs = nu.compensated_exponent_truncated(z, cutoff, 1e-9)?
                + num_complex::Complex64::new(0.0, linalg::dot(m, z))
                + num_complex::Complex64::new(
                    -0.5 * mu.gaussian().quadratic_form(z),
                    0.0,
                );
            let rhs = mu.char_exponent_tol(z, 1e-9)?;
            // residual tail of the compensated integrand beyond the cutoff
            let slack = match nu.moment(0.0, RadialInterval::tail(cutoff))? {
                ScalarMoment::Finite(t) => 2.0 * t,
                ScalarMoment::Divergent => f64::INFINITY,
            };
            worst = worst.max(((lhs - rhs).norm() - slack).max(0.0));
        }
        if worst > params.exponent_tol {
            return Err(Error::numerical(
                "weak mean fails the mean-compensated exponent identity",
                worst,
            ));
        }
        notes.push(format!(
            "mean-compensated exponent identity verified on {} z-points (residual {:.2e})",
            zs.len(),
            worst
        ));
    }

    Ok(WeakMomentResult { kind, status, value, absolute, trace, notes })
}

fn exponent_check_grid(d: usize) -> Vec<Vec<f64>> {
    let magnitudes = [0.25, 0.5, 1.0, 1.75, 2.5, 4.0, 5.5, 8.0];
    let mut out = Vec::with_capacity(16);
    for (i, &m) in magnitudes.iter().enumerate() {
        for sign in [1.0, -1.0] {
            let mut z = vec![0.0; d];
            // sweep the axis for d = 1, mix directions otherwise
            if d == 1 {
                z[0] = sign * m;
            } else {
                for (j, slot) in z.iter_mut().enumerate() {
                    let angle = 0.7 * (i as f64 + 1.0) + 1.3 * j as f64;
                    *slot = sign * m * angle.cos();
                }
                let n = linalg::norm(&z);
                if n > 0.0 {
                    for slot in z.iter_mut() {
                        *slot *= m / n;
                    }
                }
            }
            out.push(z);
        }
    }
    out
}

/// Weak mean of μ: limit of γ + ∫_{1<|x|≤a} x ν(dx) as a → ∞.
pub fn weak_mean(mu: &LevyTriplet) -> Result<WeakMomentResult> {
    weak_mean_with(mu, &WeakParams::default())
}

pub fn weak_mean_with(mu: &LevyTriplet, params: &WeakParams) -> Result<WeakMomentResult> {
    weak_limit(mu, WeakKind::WeakMean, params)
}

/// Weak drift of μ: limit of γ − ∫_{ε<|x|≤1} x ν(dx) as ε ↓ 0.
pub fn weak_drift(mu: &LevyTriplet) -> Result<WeakMomentResult> {
    weak_drift_with(mu, &WeakParams::default())
}

pub fn weak_drift_with(mu: &LevyTriplet, params: &WeakParams) -> Result<WeakMomentResult> {
    weak_limit(mu, WeakKind::WeakDrift, params)
}

/// ∫_(1,∞) r ν̄(dr) |∫_S ξ λ_r(dξ)| < ∞ — the absolute weak-mean test.
pub fn weak_mean_absolute(nu: &LevyMeasureRepr) -> Result<Option<bool>> {
    absolute_condition(nu, WeakKind::WeakMean)
}

/// ∫_(0,1] r ν̄(dr) |∫_S ξ λ_r(dξ)| < ∞ — the absolute weak-drift test.
pub fn weak_drift_absolute(nu: &LevyMeasureRepr) -> Result<Option<bool>> {
    absolute_condition(nu, WeakKind::WeakDrift)
}

fn absolute_condition(nu: &LevyMeasureRepr, kind: WeakKind) -> Result<Option<bool>> {
    if nu.is_trivial() {
        return Ok(Some(true));
    }
    let region = match kind {
        WeakKind::WeakMean => RadialInterval::tail(1.0),
        WeakKind::WeakDrift => RadialInterval::half_open(0.0, 1.0),
    };
    // Finite first moment on the region dominates the absolute integrand.
    if let ScalarMoment::Finite(_) = nu.moment(1.0, region)? {
        return Ok(Some(true));
    }
    let dec = nu.spherical_decomposition()?;
    match &dec.lambda {
        LambdaFamily::Constant(lam) => {
            let imbalance = linalg::norm(&lam.vector_integral());
            if imbalance <= 1e-15 * lam.total() {
                return Ok(Some(true));
            }
            // product type: the integral factorizes
            match dec.radial.moment(1.0, region)? {
                ScalarMoment::Finite(_) => Ok(Some(true)),
                ScalarMoment::Divergent => Ok(Some(false)),
            }
        }
        LambdaFamily::AtRadii(_) => Ok(Some(true)), // finite sums are always finite
        LambdaFamily::RayWeighted(rays) => ray_absolute_condition(rays, region, kind),
    }
}

fn ray_absolute_condition(
    rays: &[Ray],
    region: RadialInterval,
    kind: WeakKind,
) -> Result<Option<bool>> {
    // exact ±ξ cancellation
    let mut unmatched: Vec<&Ray> = rays.iter().collect();
    let mut cancelled = true;
    'outer: while let Some(ray) = unmatched.pop() {
        let neg = linalg::neg(&ray.direction);
        for i in 0..unmatched.len() {
            if linalg::max_abs_diff(&unmatched[i].direction, &neg) < 1e-14
                && (unmatched[i].weight - ray.weight).abs() < 1e-14
                && unmatched[i].radial.approx_eq(&ray.radial, 1e-14)
            {
                unmatched.swap_remove(i);
                continue 'outer;
            }
        }
        cancelled = false;
        break;
    }
    if cancelled {
        return Ok(Some(true));
    }

    // opposed sine pair: |net density| = const · r^p |sin(ω r^{∓1})|
    if let Some(verdict) = sine_pair_verdict(rays, region, kind)? {
        return Ok(Some(verdict));
    }

    // generic numeric probe on dyadic shells
    let increments = |k: usize| -> Result<Vec<f64>> {
        let iv = shell(kind, k);
        let mut total = 0.0;
        let samples = 33;
        // crude panel rule on |Σ w_i m_i(r) ξ_i| — adequate for smooth densities
        for j in 0..samples {
            let t = (j as f64 + 0.5) / samples as f64;
            let r = iv.lo + (iv.hi - iv.lo) * t;
            let mut v = vec![0.0; rays[0].direction.len()];
            for ray in rays {
                linalg::axpy(&mut v, ray.weight * ray.radial.density(r), &ray.direction);
            }
            total += r * linalg::norm(&v) * (iv.hi - iv.lo) / samples as f64;
        }
        Ok(vec![total])
    };
    match detect_limit(increments, &DetectorParams::default())? {
        SeqOutcome::Converged { .. } => Ok(Some(true)),
        SeqOutcome::Diverged { .. } => Ok(Some(false)),
        SeqOutcome::Inconclusive { .. } => Ok(None),
    }
}

/// Detects the two-ray construction ±ξ with densities c·r^p(1 ± amp·sin)
/// and decides the absolute integral analytically / semi-analytically.
fn sine_pair_verdict(
    rays: &[Ray],
    region: RadialInterval,
    kind: WeakKind,
) -> Result<Option<bool>> {
    if rays.len() != 2 {
        return Ok(None);
    }
    let (a, b) = (&rays[0], &rays[1]);
    if linalg::max_abs_diff(&a.direction, &linalg::neg(&b.direction)) > 1e-14 {
        return Ok(None);
    }
    if !(a.radial.atoms.is_empty()
        && b.radial.atoms.is_empty()
        && a.radial.components.len() == 1
        && b.radial.components.len() == 1)
    {
        return Ok(None);
    }
    let (ca, cb) = (&a.radial.components[0], &b.radial.components[0]);
    match (&ca.kind, &cb.kind) {
        (
            RadialKind::PowerSine { power: p1, freq: f1, amp: a1, arg_inverse: v1 },
            RadialKind::PowerSine { power: p2, freq: f2, amp: a2, arg_inverse: v2 },
        ) if p1 == p2
            && f1 == f2
            && v1 == v2
            && (a.weight * ca.coef - b.weight * cb.coef).abs() < 1e-14
            && ca.lo == cb.lo
            && ca.hi == cb.hi =>
        {
            let net_amp = (a1 - a2).abs() * a.weight * ca.coef;
            if net_amp == 0.0 {
                return Ok(Some(true));
            }
            // ∫ r^{p+1} |sin| dr over the region ∩ support: compare with the
            // envelope power integral, which has the same convergence.
            let lo = region.lo.max(ca.lo);
            let hi = region.hi.min(ca.hi);
            if hi <= lo {
                return Ok(Some(true));
            }
            let env_finite = match kind {
                WeakKind::WeakDrift => *p1 + 1.0 > -1.0 || lo > 0.0,
                WeakKind::WeakMean => *p1 + 1.0 < -1.0 || hi.is_finite(),
            };
            Ok(Some(env_finite))
        }
        _ => Ok(None),
    }
}

/// The five equivalent conditions for polar-product measures with
/// non-integrable small jumps.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolarEquivalenceReport {
    /// (i) weak drift exists.
    pub weak_drift_exists: Option<bool>,
    /// (ii) the truncated small-jump integrals tend to zero.
    pub small_moment_vanishes: Option<bool>,
    /// (iii) weak drift exists absolutely.
    pub weak_drift_absolute: Option<bool>,
    /// (iv) conjunction of (ii) and (iii).
    pub vanishes_absolutely: Option<bool>,
    /// (v) ∫_S ξ λ(dξ) = 0.
    pub spherical_balance: Option<bool>,
    /// The common truth value when all five agree and are determined.
    pub shared: Option<bool>,
}

pub fn polar_equivalence_report(mu: &LevyTriplet) -> Result<PolarEquivalenceReport> {
    let (spherical, _radial) = match mu.levy() {
        LevyMeasureRepr::PolarProduct { spherical, radial } => (spherical.clone(), radial.clone()),
        LevyMeasureRepr::Stable { alpha, spherical } => (
            spherical.clone(),
            crate::measure::RadialMeasure::from_component(
                crate::measure::RadialComponent::stable(1.0, *alpha),
            ),
        ),
        _ => {
            return Err(Error::domain(
                "polar equivalence requires a polar-product measure",
            ))
        }
    };
    match mu.levy().moment(1.0, RadialInterval::half_open(0.0, 1.0))? {
        ScalarMoment::Finite(_) => {
            return Err(Error::domain(
                "polar equivalence requires ∫_{|x|≤1}|x|ν(dx) = ∞",
            ))
        }
        ScalarMoment::Divergent => {}
    }

    let wd = weak_drift(mu)?;
    let weak_drift_exists = match wd.status {
        WeakStatus::Exists => Some(true),
        WeakStatus::Diverges => Some(false),
        WeakStatus::Inconclusive => None,
    };
    // (ii) asks about the limit of the truncated integrals themselves
    let small_moment_vanishes = match wd.status {
        WeakStatus::Exists => {
            let limit = linalg::sub(mu.location(), &wd.value.clone().unwrap());
            Some(linalg::norm(&limit) <= 1e-9)
        }
        WeakStatus::Diverges => Some(false),
        WeakStatus::Inconclusive => None,
    };
    let wd_abs = weak_drift_absolute(mu.levy())?;
    let vanishes_absolutely = match (small_moment_vanishes, wd_abs) {
        (Some(a), Some(b)) => Some(a && b),
        _ => None,
    };
    let spherical_balance = Some(linalg::norm(&spherical.vector_integral()) <= 1e-12);

    let all = [
        weak_drift_exists,
        small_moment_vanishes,
        wd_abs,
        vanishes_absolutely,
        spherical_balance,
    ];
    let shared = if all.iter().all(|v| v.is_some()) {
        let first = all[0].unwrap();
        if all.iter().all(|v| v.unwrap() == first) {
            Some(first)
        } else {
            None
        }
    } else {
        None
    };

    Ok(PolarEquivalenceReport {
        weak_drift_exists,
        small_moment_vanishes,
        weak_drift_absolute: wd_abs,
        vanishes_absolutely,
        spherical_balance,
        shared,
    })
}

/// Strict 1-stability: ∫_S ξ λ(dξ) = 0 for a nontrivial 1-stable law.
pub fn strict_one_stability_check(mu: &LevyTriplet) -> Result<bool> {
    match mu.levy() {
        LevyMeasureRepr::Stable { alpha, spherical } => {
            if (alpha - 1.0).abs() > 1e-12 {
                return Err(Error::domain("strict 1-stability test requires α = 1"));
            }
            if spherical.total() <= 0.0 {
                return Err(Error::domain("trivial stable law"));
            }
            Ok(balance_vanishes(spherical))
        }
        _ => Err(Error::domain("strict 1-stability test requires a stable representation")),
    }
}

fn balance_vanishes(spherical: &SphericalMeasure) -> bool {
    linalg::norm(&spherical.vector_integral()) <= 1e-12
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{RadialComponent, RadialMeasure};

    fn cauchy() -> LevyTriplet {
        LevyTriplet::without_gaussian(LevyMeasureRepr::symmetric_cauchy(), vec![0.0]).unwrap()
    }

    fn one_sided_tail() -> LevyTriplet {
        // density r^{-2} on (1,∞), ray +1
        LevyTriplet::without_gaussian(
            LevyMeasureRepr::ScalarDensity {
                positive: Some(RadialMeasure::from_component(RadialComponent::power_law(
                    1.0,
                    -2.0,
                    1.0,
                    f64::INFINITY,
                ))),
                negative: None,
            },
            vec![0.0],
        )
        .unwrap()
    }

    fn one_sided_small() -> LevyTriplet {
        LevyTriplet::without_gaussian(
            LevyMeasureRepr::ScalarDensity {
                positive: Some(RadialMeasure::from_component(RadialComponent::power_law(
                    1.0,
                    -2.0,
                    0.0,
                    1.0,
                ))),
                negative: None,
            },
            vec![0.0],
        )
        .unwrap()
    }

    #[test]
    fn tail_and_small_moment_examples() {
        let atom = LevyMeasureRepr::atoms(vec![(vec![2.0], 0.5)]);
        assert_eq!(tail_moment(&atom, 3.0).unwrap(), vec![1.0]);

        let small_atom = LevyMeasureRepr::atoms(vec![(vec![0.5], 2.0)]);
        assert_eq!(small_moment(&small_atom, 0.1).unwrap(), vec![1.0]);

        let sym = LevyMeasureRepr::atoms(vec![(vec![2.0], 1.0), (vec![-2.0], 1.0)]);
        assert_eq!(tail_moment(&sym, 8.0).unwrap(), vec![0.0]);

        // one-sided r^{-2} on r > 1: ∫_1^a r^{-1} dr = ln a
        let t = one_sided_tail();
        let v = tail_moment(t.levy(), 7.0).unwrap();
        assert!((v[0] - 7f64.ln()).abs() < 1e-12);

        // one-sided r^{-2} on (0,1): ∫_ε^1 r^{-1} dr = ln(1/ε)
        let s = one_sided_small();
        let v = small_moment(s.levy(), 0.125).unwrap();
        assert!((v[0] - 8f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn weak_mean_of_symmetric_cauchy() {
        let r = weak_mean(&cauchy()).unwrap();
        assert_eq!(r.status, WeakStatus::Exists);
        assert!(linalg::norm(&r.value.unwrap()) < 1e-12);
        assert_eq!(r.absolute, Some(true));
    }

    #[test]
    fn weak_mean_matches_mean_when_it_exists() {
        let mu = LevyTriplet::without_gaussian(
            LevyMeasureRepr::atoms(vec![(vec![2.0], 0.5)]),
            vec![-1.0],
        )
        .unwrap();
        let r = weak_mean(&mu).unwrap();
        assert_eq!(r.status, WeakStatus::Exists);
        assert!(linalg::norm(&r.value.unwrap()) < 1e-12);
        assert_eq!(r.absolute, Some(true));
    }

    #[test]
    fn weak_mean_diverges_for_one_sided_tail() {
        let r = weak_mean(&one_sided_tail()).unwrap();
        assert_eq!(r.status, WeakStatus::Diverges);
        assert_eq!(r.absolute, Some(false));
    }

    #[test]
    fn weak_drift_reduces_to_drift_for_finite_measures() {
        let mu = LevyTriplet::without_gaussian(
            LevyMeasureRepr::atoms(vec![(vec![0.5], 2.0)]),
            vec![1.0],
        )
        .unwrap();
        let r = weak_drift(&mu).unwrap();
        assert_eq!(r.status, WeakStatus::Exists);
        assert!(linalg::norm(&r.value.unwrap()) < 1e-12);
        let drift = mu.drift_of().unwrap();
        assert!(drift.defined);
    }

    #[test]
    fn weak_drift_of_symmetric_cauchy_is_zero_absolutely() {
        let r = weak_drift(&cauchy()).unwrap();
        assert_eq!(r.status, WeakStatus::Exists);
        assert!(linalg::norm(&r.value.unwrap()) < 1e-12);
        assert_eq!(r.absolute, Some(true));
    }

    #[test]
    fn weak_drift_diverges_for_one_sided_small_density() {
        let r = weak_drift(&one_sided_small()).unwrap();
        assert_eq!(r.status, WeakStatus::Diverges);
        assert_eq!(r.absolute, Some(false));
    }

    #[test]
    fn oscillating_pair_exists_non_absolutely() {
        // rays ±1 with densities r^{-2}(1 ± sin(8/r)) on (0,1)
        let comp = |amp: f64| {
            RadialMeasure::from_component(RadialComponent {
                coef: 1.0,
                lo: 0.0,
                hi: 1.0,
                kind: RadialKind::PowerSine {
                    power: -2.0,
                    freq: 8.0,
                    amp,
                    arg_inverse: true,
                },
            })
        };
        let mu = LevyTriplet::without_gaussian(
            LevyMeasureRepr::ScalarDensity { positive: Some(comp(1.0)), negative: Some(comp(-1.0)) },
            vec![0.0],
        )
        .unwrap();
        let r = weak_drift(&mu).unwrap();
        assert_eq!(r.status, WeakStatus::Exists, "notes: {:?}", r.notes);
        assert_eq!(r.absolute, Some(false));
        // limit of the truncated integrals is 2(π/2 − Si(8)); the drift is its
        // negative. Frozen from the sine-integral identity:
        // π/2 − Si(8) = −0.00339049491204543...
        let v = r.value.unwrap();
        let expected = 0.006_780_989_824_090_866;
        assert!((v[0] - expected).abs() < 1e-6, "drift {} vs {expected}", v[0]);
    }

    #[test]
    fn polar_equivalence_balanced_and_unbalanced() {
        // λ = ½(δ_+ + δ_-), ν̄ = r^{-2} dr on (0,1]  → all five true
        let radial = RadialMeasure::from_component(RadialComponent::power_law(1.0, -2.0, 0.0, 1.0));
        let balanced = LevyTriplet::without_gaussian(
            LevyMeasureRepr::PolarProduct {
                spherical: SphericalMeasure::symmetric_pair(1.0),
                radial: radial.clone(),
            },
            vec![0.0],
        )
        .unwrap();
        let rep = polar_equivalence_report(&balanced).unwrap();
        assert_eq!(rep.shared, Some(true), "{rep:?}");

        let skew = LevyTriplet::without_gaussian(
            LevyMeasureRepr::PolarProduct {
                spherical: SphericalMeasure::point(vec![1.0], 1.0),
                radial,
            },
            vec![0.0],
        )
        .unwrap();
        let rep = polar_equivalence_report(&skew).unwrap();
        assert_eq!(rep.shared, Some(false), "{rep:?}");

        // d = 2, uniform λ on the circle
        let uniform = LevyTriplet::without_gaussian(
            LevyMeasureRepr::PolarProduct {
                spherical: SphericalMeasure::Uniform { dim: 2, total: 1.0 },
                radial: RadialMeasure::from_component(RadialComponent::power_law(
                    1.0, -2.0, 0.0, 1.0,
                )),
            },
            vec![0.0, 0.0],
        )
        .unwrap();
        let rep = polar_equivalence_report(&uniform).unwrap();
        assert_eq!(rep.shared, Some(true));
    }

    #[test]
    fn polar_equivalence_rejects_integrable_small_jumps() {
        let mu = LevyTriplet::without_gaussian(
            LevyMeasureRepr::PolarProduct {
                spherical: SphericalMeasure::point(vec![1.0], 1.0),
                radial: RadialMeasure::from_component(RadialComponent::power_law(
                    1.0, -0.5, 0.0, 1.0,
                )),
            },
            vec![0.0],
        )
        .unwrap();
        assert!(polar_equivalence_report(&mu).is_err());
    }

    #[test]
    fn strict_one_stability_examples() {
        let sym = cauchy();
        assert!(strict_one_stability_check(&sym).unwrap());

        let skew = LevyTriplet::without_gaussian(
            LevyMeasureRepr::Stable {
                alpha: 1.0,
                spherical: SphericalMeasure::point(vec![1.0], 1.0),
            },
            vec![0.0],
        )
        .unwrap();
        assert!(!strict_one_stability_check(&skew).unwrap());

        // three atoms at 120° spacing in d = 2
        let atoms: Vec<(Vec<f64>, f64)> = (0..3)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                (vec![a.cos(), a.sin()], 1.0)
            })
            .collect();
        let three = LevyTriplet::without_gaussian(
            LevyMeasureRepr::Stable { alpha: 1.0, spherical: SphericalMeasure::atoms(atoms) },
            vec![0.0, 0.0],
        )
        .unwrap();
        assert!(strict_one_stability_check(&three).unwrap());

        let wrong_alpha = LevyTriplet::without_gaussian(
            LevyMeasureRepr::Stable {
                alpha: 1.5,
                spherical: SphericalMeasure::symmetric_pair(1.0),
            },
            vec![0.0],
        )
        .unwrap();
        assert!(strict_one_stability_check(&wrong_alpha).is_err());
    }

    #[test]
    fn stable_one_check_agrees_with_polar_report() {
        for (spherical, expected) in [
            (SphericalMeasure::symmetric_pair(1.0), true),
            (SphericalMeasure::point(vec![1.0], 1.0), false),
        ] {
            let mu = LevyTriplet::without_gaussian(
                LevyMeasureRepr::Stable { alpha: 1.0, spherical },
                vec![0.0],
            )
            .unwrap();
            assert_eq!(strict_one_stability_check(&mu).unwrap(), expected);
            let rep = polar_equivalence_report(&mu).unwrap();
            assert_eq!(rep.shared, Some(expected));
        }
    }
}
