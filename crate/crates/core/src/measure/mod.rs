//! Lévy-measure representations and the operations shared by every layer
//! above: scalar/vector radial moments, characteristic-exponent jump
//! integrals, dilation, the inversion transform, and spherical
//! decompositions.

pub mod exponent;
pub mod radial;
pub mod spherical;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
pub use radial::{
    GammaMeasure, RadialComponent, RadialInterval, RadialKind, RadialMeasure, ScalarMoment,
};
pub use spherical::SphericalMeasure;

/// One ray of a direction-first decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub direction: Vec<f64>,
    pub weight: f64,
    pub radial: RadialMeasure,
}

/// Tagged Lévy-measure representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LevyMeasureRepr {
    /// Finitely many point masses off the origin.
    Atoms { atoms: Vec<(Vec<f64>, f64)> },
    /// Product form λ(dξ) ⊗ ν̄(dr).
    PolarProduct { spherical: SphericalMeasure, radial: RadialMeasure },
    /// Finitely many rays with per-ray radial measures.
    RadialDecomposition { rays: Vec<Ray> },
    /// α-stable: radial density r^{−1−α} against a spherical measure.
    Stable { alpha: f64, spherical: SphericalMeasure },
    /// d = 1 density on ℝ∖{0}, one radial measure per half line.
    ScalarDensity {
        positive: Option<RadialMeasure>,
        negative: Option<RadialMeasure>,
    },
}

/// Atoms with |x| within 4 ulps of 1 are treated as sitting on the unit
/// sphere: they are fixed points of the inversion and feed its location
/// correction exactly.
fn on_unit_sphere(norm_sq: f64) -> bool {
    (norm_sq - 1.0).abs() <= 4.0 * f64::EPSILON
}

impl LevyMeasureRepr {
    pub fn atoms(atoms: Vec<(Vec<f64>, f64)>) -> Self {
        LevyMeasureRepr::Atoms { atoms }
    }

    /// Standard symmetric Cauchy measure in d = 1: density |x|^{−2}/π.
    pub fn symmetric_cauchy() -> Self {
        LevyMeasureRepr::Stable {
            alpha: 1.0,
            spherical: SphericalMeasure::symmetric_pair(2.0 / std::f64::consts::PI),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            LevyMeasureRepr::Atoms { atoms } => atoms.first().map(|a| a.0.len()).unwrap_or(1),
            LevyMeasureRepr::PolarProduct { spherical, .. } => spherical.dim(),
            LevyMeasureRepr::RadialDecomposition { rays } => {
                rays.first().map(|r| r.direction.len()).unwrap_or(1)
            }
            LevyMeasureRepr::Stable { spherical, .. } => spherical.dim(),
            LevyMeasureRepr::ScalarDensity { .. } => 1,
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            LevyMeasureRepr::Atoms { atoms } => atoms.is_empty(),
            _ => false,
        }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.dim() != dim && !self.is_trivial() {
            return Err(Error::domain("levy measure dimension mismatch"));
        }
        match self {
            LevyMeasureRepr::Atoms { atoms } => {
                for (x, m) in atoms {
                    if x.len() != dim {
                        return Err(Error::domain("atom dimension mismatch"));
                    }
                    if linalg::norm_sq(x) == 0.0 {
                        return Err(Error::domain("levy measure must not charge the origin"));
                    }
                    if *m <= 0.0 {
                        return Err(Error::domain("atom mass must be positive"));
                    }
                }
            }
            LevyMeasureRepr::PolarProduct { spherical, radial } => {
                spherical.validate()?;
                radial.validate()?;
            }
            LevyMeasureRepr::RadialDecomposition { rays } => {
                if rays.is_empty() {
                    return Err(Error::domain("radial decomposition needs at least one ray"));
                }
                for ray in rays {
                    if (linalg::norm(&ray.direction) - 1.0).abs() > 1e-12 {
                        return Err(Error::domain("ray direction must be a unit vector"));
                    }
                    if ray.weight <= 0.0 {
                        return Err(Error::domain("ray weight must be positive"));
                    }
                    ray.radial.validate()?;
                }
            }
            LevyMeasureRepr::Stable { alpha, spherical } => {
                if !(*alpha > 0.0 && *alpha < 2.0) {
                    return Err(Error::domain("stable index must lie in (0,2)"));
                }
                spherical.validate()?;
            }
            LevyMeasureRepr::ScalarDensity { positive, negative } => {
                if positive.is_none() && negative.is_none() {
                    return Err(Error::domain("scalar density needs at least one half line"));
                }
                if let Some(p) = positive {
                    p.validate()?;
                }
                if let Some(n) = negative {
                    n.validate()?;
                }
            }
        }
        // Lévy integrability: ∫ (|x|² ∧ 1) ν(dx) < ∞.
        let small = self.moment(2.0, RadialInterval::half_open(0.0, 1.0))?;
        let tail = self.moment(0.0, RadialInterval::tail(1.0))?;
        if !small.is_finite() || !tail.is_finite() {
            return Err(Error::domain(
                "levy integrability fails: ∫(|x|²∧1)ν(dx) must be finite",
            ));
        }
        Ok(())
    }

    /// Finite-ray view: (direction, weight, radial measure). `None` when the
    /// spherical part is continuous.
    pub fn rays(&self) -> Option<Vec<Ray>> {
        match self {
            LevyMeasureRepr::Atoms { atoms } => {
                let mut rays: Vec<Ray> = Vec::new();
                for (x, m) in atoms {
                    let r = linalg::norm(x);
                    let dir = linalg::scale(x, 1.0 / r);
                    match rays.iter_mut().find(|ray| {
                        linalg::max_abs_diff(&ray.direction, &dir) < 1e-14
                    }) {
                        Some(ray) => ray.radial.atoms.push((r, *m)),
                        None => rays.push(Ray {
                            direction: dir,
                            weight: 1.0,
                            radial: RadialMeasure::from_atoms(vec![(r, *m)]),
                        }),
                    }
                }
                Some(rays)
            }
            LevyMeasureRepr::PolarProduct { spherical, radial } => match spherical {
                SphericalMeasure::Atoms { atoms } => Some(
                    atoms
                        .iter()
                        .map(|(xi, m)| Ray {
                            direction: xi.clone(),
                            weight: *m,
                            radial: radial.clone(),
                        })
                        .collect(),
                ),
                SphericalMeasure::Uniform { dim: 1, total } => Some(
                    [vec![1.0], vec![-1.0]]
                        .into_iter()
                        .map(|direction| Ray {
                            direction,
                            weight: total / 2.0,
                            radial: radial.clone(),
                        })
                        .collect(),
                ),
                SphericalMeasure::Uniform { .. } => None,
            },
            LevyMeasureRepr::RadialDecomposition { rays } => Some(rays.clone()),
            LevyMeasureRepr::Stable { alpha, spherical } => {
                let stable_radial =
                    RadialMeasure::from_component(RadialComponent::stable(1.0, *alpha));
                LevyMeasureRepr::PolarProduct {
                    spherical: spherical.clone(),
                    radial: stable_radial,
                }
                .rays()
            }
            LevyMeasureRepr::ScalarDensity { positive, negative } => {
                let mut rays = Vec::new();
                if let Some(p) = positive {
                    rays.push(Ray { direction: vec![1.0], weight: 1.0, radial: p.clone() });
                }
                if let Some(n) = negative {
                    rays.push(Ray { direction: vec![-1.0], weight: 1.0, radial: n.clone() });
                }
                Some(rays)
            }
        }
    }

    /// The polar-type view for continuous spherical parts: quadrature nodes
    /// plus the common radial measure.
    fn sphere_rule(&self) -> Option<(Vec<(Vec<f64>, f64)>, RadialMeasure)> {
        match self {
            LevyMeasureRepr::PolarProduct { spherical, radial } => {
                Some((spherical.nodes(), radial.clone()))
            }
            LevyMeasureRepr::Stable { alpha, spherical } => Some((
                spherical.nodes(),
                RadialMeasure::from_component(RadialComponent::stable(1.0, *alpha)),
            )),
            _ => None,
        }
    }

    /// ∫ over {r ∈ iv} of |x|^s ν(dx); exact divergence detection.
    pub fn moment(&self, s: f64, iv: RadialInterval) -> Result<ScalarMoment> {
        match self.rays() {
            Some(rays) => {
                let mut total = 0.0;
                for ray in &rays {
                    match ray.radial.moment(s, iv)? {
                        ScalarMoment::Finite(v) => total += ray.weight * v,
                        ScalarMoment::Divergent => return Ok(ScalarMoment::Divergent),
                    }
                }
                Ok(ScalarMoment::Finite(total))
            }
            None => {
                let (_, radial) = self.sphere_rule().expect("continuous case is polar");
                let lambda_total = match self {
                    LevyMeasureRepr::PolarProduct { spherical, .. } => spherical.total(),
                    LevyMeasureRepr::Stable { spherical, .. } => spherical.total(),
                    _ => unreachable!(),
                };
                match radial.moment(s, iv)? {
                    ScalarMoment::Finite(v) => Ok(ScalarMoment::Finite(lambda_total * v)),
                    ScalarMoment::Divergent => Ok(ScalarMoment::Divergent),
                }
            }
        }
    }

    /// ∫ over {r ∈ iv} of |x|^{s-1} x ν(dx); requires the scalar moment to be
    /// finite on bounded intervals (callers use detectors for limits).
    pub fn vector_moment(&self, s: f64, iv: RadialInterval) -> Result<Vec<f64>> {
        let d = self.dim();
        match self.rays() {
            Some(rays) => {
                let mut out = vec![0.0; d];
                for ray in &rays {
                    match ray.radial.moment(s, iv)? {
                        ScalarMoment::Finite(v) => {
                            linalg::axpy(&mut out, ray.weight * v, &ray.direction)
                        }
                        ScalarMoment::Divergent => {
                            return Err(Error::numerical(
                                "vector moment requested on a divergent component",
                                f64::INFINITY,
                            ))
                        }
                    }
                }
                Ok(out)
            }
            // uniform spherical part: the directional integral vanishes
            None => Ok(vec![0.0; d]),
        }
    }

    /// ∫ (e^{i⟨z,x⟩} − 1 − i⟨z,x⟩ 1_{|x|≤1}) ν(dx).
    pub fn exponent_jump_part(&self, z: &[f64], tol: f64) -> Result<Complex64> {
        match self {
            LevyMeasureRepr::Atoms { atoms } => {
                let mut total = Complex64::new(0.0, 0.0);
                for (x, m) in atoms {
                    let t = linalg::dot(z, x);
                    total += if linalg::norm_sq(x) <= 1.0 + 4.0 * f64::EPSILON {
                        exponent::phase_m1_compensated(t) * *m
                    } else {
                        exponent::phase_m1(t) * *m
                    };
                }
                Ok(total)
            }
            _ => match self.rays() {
                Some(rays) => {
                    let mut total = Complex64::new(0.0, 0.0);
                    for ray in &rays {
                        let theta = linalg::dot(z, &ray.direction);
                        total += ray.radial.exponent_integral(theta, tol)? * ray.weight;
                    }
                    Ok(total)
                }
                None => {
                    let (nodes, radial) = self.sphere_rule().unwrap();
                    let mut total = Complex64::new(0.0, 0.0);
                    for (xi, w) in &nodes {
                        let theta = linalg::dot(z, xi);
                        total += radial.exponent_integral(theta, tol)? * *w;
                    }
                    Ok(total)
                }
            },
        }
    }

    /// ∫_{|x| ≤ a} (e^{i⟨z,x⟩} − 1 − i⟨z,x⟩) ν(dx): the fully compensated
    /// exponent integrand truncated at radius a (the building block of the
    /// mean-compensated representation of the exponent).
    pub fn compensated_exponent_truncated(
        &self,
        z: &[f64],
        a: f64,
        tol: f64,
    ) -> Result<Complex64> {
        match self {
            LevyMeasureRepr::Atoms { atoms } => {
                let mut total = Complex64::new(0.0, 0.0);
                for (x, m) in atoms {
                    if linalg::norm(x) <= a {
                        total += exponent::phase_m1_compensated(linalg::dot(z, x)) * *m;
                    }
                }
                Ok(total)
            }
            _ => match self.rays() {
                Some(rays) => {
                    let mut total = Complex64::new(0.0, 0.0);
                    for ray in &rays {
                        let theta = linalg::dot(z, &ray.direction);
                        total +=
                            ray.radial.compensated_exponent_truncated(theta, a, tol)? * ray.weight;
                    }
                    Ok(total)
                }
                None => {
                    let (nodes, radial) = self.sphere_rule().unwrap();
                    let mut total = Complex64::new(0.0, 0.0);
                    for (xi, w) in &nodes {
                        let theta = linalg::dot(z, xi);
                        total += radial.compensated_exponent_truncated(theta, a, tol)? * *w;
                    }
                    Ok(total)
                }
            },
        }
    }

    /// Mass exactly on the unit sphere, weighted by direction:
    /// ∫_{|x|=1} x ν(dx). Nonzero only for atomic radius-1 mass.
    pub fn sphere_mass_vector(&self) -> Vec<f64> {
        let d = self.dim();
        let mut out = vec![0.0; d];
        match self {
            LevyMeasureRepr::Atoms { atoms } => {
                for (x, m) in atoms {
                    if on_unit_sphere(linalg::norm_sq(x)) {
                        linalg::axpy(&mut out, *m, x);
                    }
                }
            }
            LevyMeasureRepr::PolarProduct { spherical, radial } => {
                let mass_at_one: f64 = radial
                    .atoms
                    .iter()
                    .filter(|&&(r, _)| on_unit_sphere(r * r))
                    .map(|&(_, m)| m)
                    .sum();
                if mass_at_one > 0.0 {
                    linalg::axpy(&mut out, mass_at_one, &spherical.vector_integral());
                }
            }
            LevyMeasureRepr::RadialDecomposition { rays } => {
                for ray in rays {
                    let mass_at_one: f64 = ray
                        .radial
                        .atoms
                        .iter()
                        .filter(|&&(r, _)| on_unit_sphere(r * r))
                        .map(|&(_, m)| m)
                        .sum();
                    if mass_at_one > 0.0 {
                        linalg::axpy(&mut out, ray.weight * mass_at_one, &ray.direction);
                    }
                }
            }
            LevyMeasureRepr::ScalarDensity { positive, negative } => {
                if let Some(p) = positive {
                    for &(r, m) in &p.atoms {
                        if on_unit_sphere(r * r) {
                            out[0] += m;
                        }
                    }
                }
                if let Some(n) = negative {
                    for &(r, m) in &n.atoms {
                        if on_unit_sphere(r * r) {
                            out[0] -= m;
                        }
                    }
                }
            }
            LevyMeasureRepr::Stable { .. } => {}
        }
        out
    }

    /// Pushforward under x ↦ bx.
    pub fn dilate(&self, b: f64) -> Self {
        match self {
            LevyMeasureRepr::Atoms { atoms } => LevyMeasureRepr::Atoms {
                atoms: atoms.iter().map(|(x, m)| (linalg::scale(x, b), *m)).collect(),
            },
            LevyMeasureRepr::PolarProduct { spherical, radial } => LevyMeasureRepr::PolarProduct {
                spherical: spherical.clone(),
                radial: radial.dilate(b),
            },
            LevyMeasureRepr::RadialDecomposition { rays } => LevyMeasureRepr::RadialDecomposition {
                rays: rays
                    .iter()
                    .map(|ray| Ray {
                        direction: ray.direction.clone(),
                        weight: ray.weight,
                        radial: ray.radial.dilate(b),
                    })
                    .collect(),
            },
            LevyMeasureRepr::Stable { alpha, spherical } => LevyMeasureRepr::Stable {
                alpha: *alpha,
                spherical: spherical.scale_mass(b.powf(*alpha)),
            },
            LevyMeasureRepr::ScalarDensity { positive, negative } => {
                LevyMeasureRepr::ScalarDensity {
                    positive: positive.as_ref().map(|p| p.dilate(b)),
                    negative: negative.as_ref().map(|n| n.dilate(b)),
                }
            }
        }
    }

    /// Image under x ↦ x/|x|² with density weight |x|².
    pub fn invert(&self) -> Self {
        match self {
            LevyMeasureRepr::Atoms { atoms } => LevyMeasureRepr::Atoms {
                atoms: atoms
                    .iter()
                    .map(|(x, m)| {
                        let n2 = linalg::norm_sq(x);
                        if on_unit_sphere(n2) {
                            (x.clone(), *m)
                        } else {
                            (linalg::scale(x, 1.0 / n2), m * n2)
                        }
                    })
                    .collect(),
            },
            LevyMeasureRepr::PolarProduct { spherical, radial } => LevyMeasureRepr::PolarProduct {
                spherical: spherical.clone(),
                radial: radial.invert_sharp(),
            },
            LevyMeasureRepr::RadialDecomposition { rays } => LevyMeasureRepr::RadialDecomposition {
                rays: rays
                    .iter()
                    .map(|ray| Ray {
                        direction: ray.direction.clone(),
                        weight: ray.weight,
                        radial: ray.radial.invert_sharp(),
                    })
                    .collect(),
            },
            LevyMeasureRepr::Stable { alpha, spherical } => LevyMeasureRepr::Stable {
                alpha: 2.0 - alpha,
                spherical: spherical.clone(),
            },
            LevyMeasureRepr::ScalarDensity { positive, negative } => {
                LevyMeasureRepr::ScalarDensity {
                    positive: positive.as_ref().map(|p| p.invert_sharp()),
                    negative: negative.as_ref().map(|n| n.invert_sharp()),
                }
            }
        }
    }

    pub fn scale_mass(&self, t: f64) -> Self {
        match self {
            LevyMeasureRepr::Atoms { atoms } => LevyMeasureRepr::Atoms {
                atoms: atoms.iter().map(|(x, m)| (x.clone(), m * t)).collect(),
            },
            LevyMeasureRepr::PolarProduct { spherical, radial } => LevyMeasureRepr::PolarProduct {
                spherical: spherical.clone(),
                radial: radial.scale_mass(t),
            },
            LevyMeasureRepr::RadialDecomposition { rays } => LevyMeasureRepr::RadialDecomposition {
                rays: rays
                    .iter()
                    .map(|ray| Ray {
                        direction: ray.direction.clone(),
                        weight: ray.weight,
                        radial: ray.radial.scale_mass(t),
                    })
                    .collect(),
            },
            LevyMeasureRepr::Stable { alpha, spherical } => LevyMeasureRepr::Stable {
                alpha: *alpha,
                spherical: spherical.scale_mass(t),
            },
            LevyMeasureRepr::ScalarDensity { positive, negative } => {
                LevyMeasureRepr::ScalarDensity {
                    positive: positive.as_ref().map(|p| p.scale_mass(t)),
                    negative: negative.as_ref().map(|n| n.scale_mass(t)),
                }
            }
        }
    }

    /// Structural symmetry under x ↦ −x.
    pub fn is_symmetric(&self) -> bool {
        match self {
            LevyMeasureRepr::Atoms { atoms } => {
                let mut unmatched: Vec<(Vec<f64>, f64)> = atoms.clone();
                while let Some((x, m)) = unmatched.pop() {
                    let neg = linalg::neg(&x);
                    match unmatched.iter().position(|(y, w)| {
                        linalg::max_abs_diff(y, &neg) < 1e-14 && (w - m).abs() < 1e-14
                    }) {
                        Some(idx) => {
                            unmatched.swap_remove(idx);
                        }
                        None => return false,
                    }
                }
                true
            }
            LevyMeasureRepr::PolarProduct { spherical, .. } => spherical.is_symmetric(),
            LevyMeasureRepr::Stable { spherical, .. } => spherical.is_symmetric(),
            LevyMeasureRepr::RadialDecomposition { rays } => {
                let mut unmatched: Vec<&Ray> = rays.iter().collect();
                while let Some(ray) = unmatched.pop() {
                    let neg = linalg::neg(&ray.direction);
                    match unmatched.iter().position(|other| {
                        linalg::max_abs_diff(&other.direction, &neg) < 1e-14
                            && (other.weight - ray.weight).abs() < 1e-14
                            && other.radial.approx_eq(&ray.radial, 1e-14)
                    }) {
                        Some(idx) => {
                            unmatched.swap_remove(idx);
                        }
                        None => return false,
                    }
                }
                true
            }
            LevyMeasureRepr::ScalarDensity { positive, negative } => match (positive, negative) {
                (Some(p), Some(n)) => p.approx_eq(n, 1e-14),
                (None, None) => true,
                _ => false,
            },
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (LevyMeasureRepr::Atoms { atoms: a }, LevyMeasureRepr::Atoms { atoms: b }) => {
                if a.len() != b.len() {
                    return false;
                }
                let mut remaining: Vec<_> = b.clone();
                for (x, m) in a {
                    match remaining.iter().position(|(y, w)| {
                        linalg::max_abs_diff(x, y) <= tol * (1.0 + linalg::norm(x))
                            && (w - m).abs() <= tol * (1.0 + m)
                    }) {
                        Some(i) => {
                            remaining.swap_remove(i);
                        }
                        None => return false,
                    }
                }
                true
            }
            (
                LevyMeasureRepr::PolarProduct { spherical: s1, radial: r1 },
                LevyMeasureRepr::PolarProduct { spherical: s2, radial: r2 },
            ) => s1.approx_eq(s2, tol) && r1.approx_eq(r2, tol),
            (
                LevyMeasureRepr::Stable { alpha: a1, spherical: s1 },
                LevyMeasureRepr::Stable { alpha: a2, spherical: s2 },
            ) => (a1 - a2).abs() <= tol && s1.approx_eq(s2, tol),
            (
                LevyMeasureRepr::RadialDecomposition { rays: r1 },
                LevyMeasureRepr::RadialDecomposition { rays: r2 },
            ) => {
                r1.len() == r2.len()
                    && r1.iter().zip(r2).all(|(a, b)| {
                        linalg::max_abs_diff(&a.direction, &b.direction) <= tol
                            && (a.weight - b.weight).abs() <= tol * (1.0 + a.weight)
                            && a.radial.approx_eq(&b.radial, tol)
                    })
            }
            (
                LevyMeasureRepr::ScalarDensity { positive: p1, negative: n1 },
                LevyMeasureRepr::ScalarDensity { positive: p2, negative: n2 },
            ) => {
                let halves = |a: &Option<RadialMeasure>, b: &Option<RadialMeasure>| match (a, b) {
                    (Some(x), Some(y)) => x.approx_eq(y, tol),
                    (None, None) => true,
                    _ => false,
                };
                halves(p1, p2) && halves(n1, n2)
            }
            _ => false,
        }
    }

    /// Spherical (radius-first) decomposition (ν̄(dr), λ_r(dξ)).
    pub fn spherical_decomposition(&self) -> Result<SphericalDecomposition> {
        match self {
            LevyMeasureRepr::Atoms { atoms } => {
                let mut by_radius: Vec<(f64, Vec<(Vec<f64>, f64)>)> = Vec::new();
                for (x, m) in atoms {
                    let r = linalg::norm(x);
                    let dir = linalg::scale(x, 1.0 / r);
                    match by_radius.iter_mut().find(|(rr, _)| *rr == r) {
                        Some((_, dirs)) => dirs.push((dir, *m)),
                        None => by_radius.push((r, vec![(dir, *m)])),
                    }
                }
                by_radius.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                let mut radial_atoms = Vec::new();
                let mut lambda = Vec::new();
                for (r, dirs) in by_radius {
                    let total: f64 = dirs.iter().map(|d| d.1).sum();
                    radial_atoms.push((r, total));
                    lambda.push((
                        r,
                        SphericalMeasure::atoms(
                            dirs.into_iter().map(|(d, m)| (d, m / total)).collect(),
                        ),
                    ));
                }
                Ok(SphericalDecomposition {
                    radial: RadialMeasure::from_atoms(radial_atoms),
                    lambda: LambdaFamily::AtRadii(lambda),
                })
            }
            LevyMeasureRepr::PolarProduct { spherical, radial } => Ok(SphericalDecomposition {
                radial: radial.clone(),
                lambda: LambdaFamily::Constant(spherical.clone()),
            }),
            LevyMeasureRepr::Stable { alpha, spherical } => Ok(SphericalDecomposition {
                radial: RadialMeasure::from_component(RadialComponent::stable(1.0, *alpha)),
                lambda: LambdaFamily::Constant(spherical.clone()),
            }),
            LevyMeasureRepr::RadialDecomposition { rays } => {
                let mut combined = RadialMeasure::default();
                for ray in rays {
                    for &(r, m) in &ray.radial.atoms {
                        combined.atoms.push((r, ray.weight * m));
                    }
                    for c in &ray.radial.components {
                        combined.components.push(c.scale_mass(ray.weight));
                    }
                }
                Ok(SphericalDecomposition {
                    radial: combined,
                    lambda: LambdaFamily::RayWeighted(rays.clone()),
                })
            }
            LevyMeasureRepr::ScalarDensity { .. } => {
                let rays = self.rays().expect("scalar density always has rays");
                LevyMeasureRepr::RadialDecomposition { rays }.spherical_decomposition()
            }
        }
    }
}

/// Radius-first decomposition: ν(B) = ∫ ν̄(dr) ∫ 1_B(rξ) λ_r(dξ).
///
/// The normalization is one concrete choice: for atomic measures ν̄ carries
/// the total mass per radius and λ_r is a probability measure; product-type
/// representations are passed through unchanged.
#[derive(Debug, Clone)]
pub struct SphericalDecomposition {
    pub radial: RadialMeasure,
    pub lambda: LambdaFamily,
}

#[derive(Debug, Clone)]
pub enum LambdaFamily {
    /// λ_r independent of r.
    Constant(SphericalMeasure),
    /// Defined at the finitely many radii carrying mass.
    AtRadii(Vec<(f64, SphericalMeasure)>),
    /// λ_r mixes the ray directions with density-proportional weights.
    RayWeighted(Vec<Ray>),
}

impl SphericalDecomposition {
    /// λ_r as a spherical measure; radii without mass yield `None`.
    pub fn lambda_at(&self, r: f64) -> Option<SphericalMeasure> {
        match &self.lambda {
            LambdaFamily::Constant(m) => Some(m.clone()),
            LambdaFamily::AtRadii(list) => {
                list.iter().find(|(rr, _)| *rr == r).map(|(_, m)| m.clone())
            }
            LambdaFamily::RayWeighted(rays) => {
                let total: f64 = rays
                    .iter()
                    .map(|ray| ray.weight * ray.radial.density(r))
                    .sum();
                if total <= 0.0 {
                    return None;
                }
                Some(SphericalMeasure::atoms(
                    rays.iter()
                        .filter(|ray| ray.radial.density(r) > 0.0)
                        .map(|ray| {
                            (
                                ray.direction.clone(),
                                ray.weight * ray.radial.density(r) / total,
                            )
                        })
                        .collect(),
                ))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_group_into_rays_and_decompose() {
        let nu = LevyMeasureRepr::atoms(vec![(vec![0.5], 2.0)]);
        let dec = nu.spherical_decomposition().unwrap();
        assert_eq!(dec.radial.atoms, vec![(0.5, 2.0)]);
        let lam = dec.lambda_at(0.5).unwrap();
        assert!(lam.approx_eq(&SphericalMeasure::point(vec![1.0], 1.0), 1e-15));
    }

    #[test]
    fn cauchy_decomposition_splits_density() {
        let nu = LevyMeasureRepr::symmetric_cauchy();
        let dec = nu.spherical_decomposition().unwrap();
        // ν̄ has density r^{-2} (coefficient 1) against λ = ½(δ_+ + δ_-) scaled by 2/π
        let lam = dec.lambda_at(0.7).unwrap();
        assert!((lam.total() - 2.0 / std::f64::consts::PI).abs() < 1e-15);
        assert!(lam.is_symmetric());
    }

    #[test]
    fn inversion_moves_mass_by_change_of_variables() {
        // ν'(|x| > 1/a) = ∫_{|x| < a} |x|² ν(dx) for the gamma subordinator
        let nu = LevyMeasureRepr::ScalarDensity {
            positive: Some(RadialMeasure::from_component(RadialComponent::power_exp(
                1.0,
                -1.0,
                1.0,
                0.0,
                0.0,
                f64::INFINITY,
            ))),
            negative: None,
        };
        let inv = nu.invert();
        for a in [0.5, 1.0, 2.0, 5.0] {
            let lhs = inv
                .moment(0.0, RadialInterval::tail(1.0 / a))
                .unwrap()
                .finite()
                .unwrap();
            let rhs = nu
                .moment(2.0, RadialInterval::half_open(0.0, a))
                .unwrap()
                .finite()
                .unwrap();
            assert!((lhs - rhs).abs() < 1e-8, "a={a}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn stable_inversion_flips_index() {
        let nu = LevyMeasureRepr::Stable {
            alpha: 0.7,
            spherical: SphericalMeasure::point(vec![1.0], 1.0),
        };
        match nu.invert() {
            LevyMeasureRepr::Stable { alpha, .. } => assert_eq!(alpha, 1.3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sphere_atoms_feed_the_correction_and_stay_fixed() {
        let nu = LevyMeasureRepr::atoms(vec![(vec![-1.0], 3.0), (vec![0.5], 2.0)]);
        let v = nu.sphere_mass_vector();
        assert_eq!(v, vec![-3.0]);
        let inv = nu.invert();
        match &inv {
            LevyMeasureRepr::Atoms { atoms } => {
                assert!(atoms.iter().any(|(x, m)| x[0] == -1.0 && *m == 3.0));
                assert!(atoms.iter().any(|(x, m)| x[0] == 2.0 && *m == 0.5));
            }
            _ => unreachable!(),
        }
    }
}
