//! Lévy–Khintchine triplets and the operations defined directly on them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, SymMatrix};
use crate::measure::{LevyMeasureRepr, RadialInterval};
use crate::numeric::DEFAULT_QUAD_TOL;

/// Infinitely divisible distribution given by (gaussian, levy, location)
/// with the small-jump compensation cut at |x| ≤ 1.
///
/// Values are immutable after construction; every operation returns a new
/// triplet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevyTriplet {
    dim: usize,
    gaussian: SymMatrix,
    levy: LevyMeasureRepr,
    location: Vec<f64>,
}

/// Which location functional a derived value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocationKind {
    Drift,
    Mean,
    Sharp,
}

/// A drift/mean/sharp location: defined = false means the corresponding
/// integrability condition fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedLocation {
    pub kind: LocationKind,
    pub defined: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Vec<f64>>,
}

impl DerivedLocation {
    fn defined(kind: LocationKind, value: Vec<f64>) -> Self {
        DerivedLocation { kind, defined: true, value: Some(value) }
    }

    fn undefined(kind: LocationKind) -> Self {
        DerivedLocation { kind, defined: false, value: None }
    }
}

impl LevyTriplet {
    pub fn new(gaussian: SymMatrix, levy: LevyMeasureRepr, location: Vec<f64>) -> Result<Self> {
        let dim = location.len();
        if dim == 0 {
            return Err(Error::domain("dimension must be at least 1"));
        }
        if gaussian.dim() != dim {
            return Err(Error::domain("gaussian matrix dimension mismatch"));
        }
        if gaussian.min_eigenvalue() < -1e-12 {
            return Err(Error::domain(
                "gaussian covariance must be nonnegative definite",
            ));
        }
        levy.validate(dim)?;
        Ok(LevyTriplet { dim, gaussian, levy, location })
    }

    /// Purely deterministic triplet: X_t = γt.
    pub fn pure_drift(location: Vec<f64>) -> Self {
        let dim = location.len();
        LevyTriplet {
            dim,
            gaussian: SymMatrix::zeros(dim),
            levy: LevyMeasureRepr::Atoms { atoms: Vec::new() },
            location,
        }
    }

    /// Triplet without Gaussian part (the ID₀ constructor).
    pub fn without_gaussian(levy: LevyMeasureRepr, location: Vec<f64>) -> Result<Self> {
        Self::new(SymMatrix::zeros(location.len()), levy, location)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gaussian(&self) -> &SymMatrix {
        &self.gaussian
    }

    pub fn levy(&self) -> &LevyMeasureRepr {
        &self.levy
    }

    pub fn location(&self) -> &[f64] {
        &self.location
    }

    pub fn is_id0(&self) -> bool {
        self.gaussian.is_zero()
    }

    fn zero_vec(&self) -> Vec<f64> {
        vec![0.0; self.dim]
    }

    /// ∫ |x|^{s-1} x ν(dx) over the radius window, dimension-safe for the
    /// trivial measure.
    pub fn vector_moment(&self, s: f64, iv: RadialInterval) -> Result<Vec<f64>> {
        if self.levy.is_trivial() {
            return Ok(self.zero_vec());
        }
        self.levy.vector_moment(s, iv)
    }

    /// log μ̂(z) with the |x| ≤ 1 truncation.
    pub fn char_exponent(&self, z: &[f64]) -> Result<Complex64> {
        self.char_exponent_tol(z, DEFAULT_QUAD_TOL)
    }

    pub fn char_exponent_tol(&self, z: &[f64], tol: f64) -> Result<Complex64> {
        if z.len() != self.dim {
            return Err(Error::domain("argument dimension mismatch"));
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("argument must be finite"));
        }
        let gaussian = -0.5 * self.gaussian.quadratic_form(z);
        let jumps = if self.levy.is_trivial() {
            Complex64::new(0.0, 0.0)
        } else {
            self.levy.exponent_jump_part(z, tol)?
        };
        let shift = linalg::dot(&self.location, z);
        Ok(Complex64::new(gaussian, shift) + jumps)
    }

    /// γ⁰ = γ − ∫_{|x|≤1} x ν(dx), defined iff ∫_{|x|≤1} |x| ν(dx) < ∞.
    pub fn drift_of(&self) -> Result<DerivedLocation> {
        if self.levy.is_trivial() {
            return Ok(DerivedLocation::defined(LocationKind::Drift, self.location.clone()));
        }
        let ball = RadialInterval::half_open(0.0, 1.0);
        match self.levy.moment(1.0, ball)? {
            crate::measure::ScalarMoment::Divergent => {
                Ok(DerivedLocation::undefined(LocationKind::Drift))
            }
            crate::measure::ScalarMoment::Finite(_) => {
                let small = self.levy.vector_moment(1.0, ball)?;
                Ok(DerivedLocation::defined(
                    LocationKind::Drift,
                    linalg::sub(&self.location, &small),
                ))
            }
        }
    }

    /// m = γ + ∫_{|x|>1} x ν(dx), defined iff ∫_{|x|>1} |x| ν(dx) < ∞.
    pub fn mean_of(&self) -> Result<DerivedLocation> {
        if self.levy.is_trivial() {
            return Ok(DerivedLocation::defined(LocationKind::Mean, self.location.clone()));
        }
        let tail = RadialInterval::tail(1.0);
        match self.levy.moment(1.0, tail)? {
            crate::measure::ScalarMoment::Divergent => {
                Ok(DerivedLocation::undefined(LocationKind::Mean))
            }
            crate::measure::ScalarMoment::Finite(_) => {
                let outer = self.levy.vector_moment(1.0, tail)?;
                Ok(DerivedLocation::defined(
                    LocationKind::Mean,
                    linalg::add(&self.location, &outer),
                ))
            }
        }
    }

    /// γ + ∫_{|x|>1} |x|⁻¹ x ν(dx); always defined.
    pub fn sharp_location(&self) -> Result<Vec<f64>> {
        if self.levy.is_trivial() {
            return Ok(self.location.clone());
        }
        let outer = self.levy.vector_moment(0.0, RadialInterval::tail(1.0))?;
        Ok(linalg::add(&self.location, &outer))
    }

    /// Dilation T_b: the law of bX.
    pub fn dilate(&self, b: f64) -> Result<Self> {
        if !(b > 0.0) {
            return Err(Error::domain("dilation factor must be positive"));
        }
        if b == 1.0 {
            return Ok(self.clone());
        }
        let gaussian = self.gaussian.scaled(b * b);
        let levy = self.levy.dilate(b);
        // γ_{T_b μ} = bγ + b ∫ x (1_{|bx|≤1} − 1_{|x|≤1}) ν(dx)
        let correction = if self.levy.is_trivial() {
            self.zero_vec()
        } else if b < 1.0 {
            self.levy
                .vector_moment(1.0, RadialInterval::half_open(1.0, 1.0 / b))?
        } else {
            linalg::neg(
                &self
                    .levy
                    .vector_moment(1.0, RadialInterval::half_open(1.0 / b, 1.0))?,
            )
        };
        let location = linalg::scale(&linalg::add(&self.location, &correction), b);
        Ok(LevyTriplet { dim: self.dim, gaussian, levy, location })
    }

    /// μ^t: the distribution of X_t for the Lévy process of μ.
    pub fn convolution_power(&self, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::domain("convolution power must be positive"));
        }
        Ok(LevyTriplet {
            dim: self.dim,
            gaussian: self.gaussian.scaled(t),
            levy: self.levy.scale_mass(t),
            location: linalg::scale(&self.location, t),
        })
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim
            && linalg::max_abs_diff(&self.location, &other.location) <= tol
            && self
                .gaussian
                .rows()
                .iter()
                .zip(other.gaussian.rows())
                .all(|(a, b)| linalg::max_abs_diff(a, &b) <= tol)
            && (self.levy.approx_eq(&other.levy, tol)
                || (self.levy.is_trivial() && other.levy.is_trivial()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{RadialComponent, RadialMeasure, SphericalMeasure};

    fn atom_triplet(atoms: Vec<(Vec<f64>, f64)>, gamma: Vec<f64>) -> LevyTriplet {
        LevyTriplet::without_gaussian(LevyMeasureRepr::atoms(atoms), gamma).unwrap()
    }

    #[test]
    fn exponent_at_zero_vanishes() {
        let mu = atom_triplet(vec![(vec![0.5], 2.0)], vec![1.0]);
        let v = mu.char_exponent(&[0.0]).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn gaussian_exponent_matches_closed_form() {
        let mu = LevyTriplet::new(
            SymMatrix::scalar(4.0),
            LevyMeasureRepr::Atoms { atoms: vec![] },
            vec![0.0],
        )
        .unwrap();
        let v = mu.char_exponent(&[1.0]).unwrap();
        assert!((v - Complex64::new(-2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn compound_atom_exponent_hand_value() {
        // 2(e^{iπ/2} − 1 − iπ/2) + iπ = −2 + 2i
        let mu = atom_triplet(vec![(vec![0.5], 2.0)], vec![1.0]);
        let v = mu.char_exponent(&[std::f64::consts::PI]).unwrap();
        assert!((v - Complex64::new(-2.0, 2.0)).norm() < 1e-14, "{v}");
    }

    #[test]
    fn symmetric_cauchy_exponent_is_minus_abs() {
        let mu =
            LevyTriplet::without_gaussian(LevyMeasureRepr::symmetric_cauchy(), vec![0.0]).unwrap();
        for z in [0.3, 1.0, 2.5, -4.0] {
            let v = mu.char_exponent(&[z]).unwrap();
            assert!((v - Complex64::new(-z.abs(), 0.0)).norm() < 1e-10, "z={z}: {v}");
        }
    }

    #[test]
    fn drift_examples() {
        let mu = atom_triplet(vec![(vec![0.5], 2.0)], vec![1.0]);
        let d = mu.drift_of().unwrap();
        assert!(d.defined);
        assert!((d.value.unwrap()[0]).abs() < 1e-15);

        // gamma subordinator with γ = 1 − e^{-1} has drift 0
        let gsub = LevyTriplet::without_gaussian(
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
            vec![1.0 - (-1f64).exp()],
        )
        .unwrap();
        let d = gsub.drift_of().unwrap();
        assert!(d.defined);
        assert!(d.value.unwrap()[0].abs() < 1e-10);

        let cauchy =
            LevyTriplet::without_gaussian(LevyMeasureRepr::symmetric_cauchy(), vec![0.0]).unwrap();
        assert!(!cauchy.drift_of().unwrap().defined);
    }

    #[test]
    fn mean_examples() {
        let mu = atom_triplet(vec![(vec![2.0], 0.5)], vec![-1.0]);
        let m = mu.mean_of().unwrap();
        assert_eq!(m.value.unwrap(), vec![0.0]);

        let small = atom_triplet(vec![(vec![0.5], 2.0)], vec![1.0]);
        assert_eq!(small.mean_of().unwrap().value.unwrap(), vec![1.0]);

        let cauchy =
            LevyTriplet::without_gaussian(LevyMeasureRepr::symmetric_cauchy(), vec![0.0]).unwrap();
        assert!(!cauchy.mean_of().unwrap().defined);
    }

    #[test]
    fn sharp_location_examples() {
        let mu = atom_triplet(vec![(vec![2.0], 0.5)], vec![-1.0]);
        assert_eq!(mu.sharp_location().unwrap(), vec![-0.5]);

        let inside = atom_triplet(vec![(vec![0.5], 2.0)], vec![1.0]);
        assert_eq!(inside.sharp_location().unwrap(), vec![1.0]);

        let sym = LevyTriplet::without_gaussian(
            LevyMeasureRepr::atoms(vec![(vec![2.0], 1.0), (vec![-2.0], 1.0)]),
            vec![0.7],
        )
        .unwrap();
        assert_eq!(sym.sharp_location().unwrap(), vec![0.7]);
    }

    #[test]
    fn dilate_matches_exponent_scaling() {
        let mu = atom_triplet(vec![(vec![0.5], 2.0), (vec![3.0], 0.25)], vec![1.0]);
        for b in [0.5, 1.0, 2.0, 3.0] {
            let tb = mu.dilate(b).unwrap();
            for z in [0.3, 1.1, -2.2] {
                let lhs = tb.char_exponent(&[z]).unwrap();
                let rhs = mu.char_exponent(&[b * z]).unwrap();
                assert!((lhs - rhs).norm() < 1e-12, "b={b} z={z}");
            }
        }
    }

    #[test]
    fn dilate_example_from_atom() {
        let mu = atom_triplet(vec![(vec![0.5], 2.0)], vec![1.0]);
        let tb = mu.dilate(0.5).unwrap();
        assert_eq!(tb.location(), &[0.5]);
        match tb.levy() {
            LevyMeasureRepr::Atoms { atoms } => assert_eq!(atoms[0], (vec![0.25], 2.0)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn dilate_round_trip_recovers_triplet() {
        let mu = atom_triplet(vec![(vec![0.5], 2.0), (vec![-1.7], 0.4)], vec![0.3]);
        let back = mu.dilate(3.0).unwrap().dilate(1.0 / 3.0).unwrap();
        assert!(mu.approx_eq(&back, 1e-10));
    }

    #[test]
    fn convolution_power_scales_exponent() {
        let mu = atom_triplet(vec![(vec![0.5], 2.0)], vec![1.0]);
        let t = 3.5;
        let mt = mu.convolution_power(t).unwrap();
        for z in [0.4, 1.0, 2.0] {
            let lhs = mt.char_exponent(&[z]).unwrap();
            let rhs = mu.char_exponent(&[z]).unwrap() * t;
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn conjugate_symmetry_of_exponent() {
        let mu = LevyTriplet::new(
            SymMatrix::scalar(0.5),
            LevyMeasureRepr::PolarProduct {
                spherical: SphericalMeasure::point(vec![1.0], 1.5),
                radial: RadialMeasure::from_component(RadialComponent::power_exp(
                    1.0,
                    -0.5,
                    2.0,
                    0.0,
                    0.0,
                    f64::INFINITY,
                )),
            },
            vec![0.25],
        )
        .unwrap();
        for z in [0.5, 1.7, 3.0] {
            let a = mu.char_exponent(&[z]).unwrap();
            let b = mu.char_exponent(&[-z]).unwrap();
            assert!((a - b.conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn rejects_indefinite_gaussian() {
        let g = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]], 1e-9).unwrap();
        let err = LevyTriplet::new(
            g,
            LevyMeasureRepr::Atoms { atoms: vec![] },
            vec![0.0, 0.0],
        );
        assert!(err.is_err());
    }

    #[test]
    fn rejects_non_levy_measure() {
        // density r^{-3} near zero fails ∫ r² ν̄(dr) < ∞
        let bad = LevyMeasureRepr::ScalarDensity {
            positive: Some(RadialMeasure::from_component(RadialComponent::power_law(
                1.0, -3.0, 0.0, 1.0,
            ))),
            negative: None,
        };
        assert!(LevyTriplet::without_gaussian(bad, vec![0.0]).is_err());
    }
}
