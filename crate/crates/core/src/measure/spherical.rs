//! Finite measures on the unit sphere S^{d-1}.
//!
//! Atomic spherical parts work in any dimension; the uniform (rotation
//! invariant) part is supported for d ∈ {1, 2, 3} with fixed-order product
//! rules for integration.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SphericalMeasure {
    /// Point masses at unit vectors.
    Atoms { atoms: Vec<(Vec<f64>, f64)> },
    /// Rotation-invariant measure of the given total mass.
    Uniform { dim: usize, total: f64 },
}

impl SphericalMeasure {
    pub fn atoms(atoms: Vec<(Vec<f64>, f64)>) -> Self {
        SphericalMeasure::Atoms { atoms }
    }

    /// Two equal atoms at ±1 with total mass `total` (d = 1 helper).
    pub fn symmetric_pair(total: f64) -> Self {
        SphericalMeasure::Atoms {
            atoms: vec![(vec![1.0], total / 2.0), (vec![-1.0], total / 2.0)],
        }
    }

    pub fn point(dir: Vec<f64>, mass: f64) -> Self {
        SphericalMeasure::Atoms { atoms: vec![(dir, mass)] }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SphericalMeasure::Atoms { atoms } => {
                if atoms.is_empty() {
                    return Err(Error::domain("spherical measure needs at least one atom"));
                }
                let dim = atoms[0].0.len();
                for (xi, m) in atoms {
                    if xi.len() != dim {
                        return Err(Error::domain("spherical atoms have mixed dimensions"));
                    }
                    if (linalg::norm(xi) - 1.0).abs() > UNIT_TOL {
                        return Err(Error::domain(format!(
                            "spherical atom is not a unit vector (|ξ| = {})",
                            linalg::norm(xi)
                        )));
                    }
                    if *m <= 0.0 {
                        return Err(Error::domain("spherical atom mass must be positive"));
                    }
                }
                Ok(())
            }
            SphericalMeasure::Uniform { dim, total } => {
                if !(1..=3).contains(dim) {
                    return Err(Error::unsupported(
                        "uniform spherical parts are limited to d in {1,2,3}",
                    ));
                }
                if *total <= 0.0 {
                    return Err(Error::domain("spherical mass must be positive"));
                }
                Ok(())
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SphericalMeasure::Atoms { atoms } => atoms.first().map(|a| a.0.len()).unwrap_or(0),
            SphericalMeasure::Uniform { dim, .. } => *dim,
        }
    }

    pub fn total(&self) -> f64 {
        match self {
            SphericalMeasure::Atoms { atoms } => atoms.iter().map(|a| a.1).sum(),
            SphericalMeasure::Uniform { total, .. } => *total,
        }
    }

    /// ∫_S ξ λ(dξ), exact for both variants.
    pub fn vector_integral(&self) -> Vec<f64> {
        match self {
            SphericalMeasure::Atoms { atoms } => {
                let mut v = vec![0.0; self.dim()];
                for (xi, m) in atoms {
                    linalg::axpy(&mut v, *m, xi);
                }
                v
            }
            SphericalMeasure::Uniform { dim, .. } => vec![0.0; *dim],
        }
    }

    /// Integration nodes (direction, weight) for ∫_S f(ξ) λ(dξ).
    ///
    /// Exact for atoms; fixed-order product rules for the uniform part
    /// (trapezoid on S¹, Gauss–Legendre × trapezoid on S²).
    pub fn nodes(&self) -> Vec<(Vec<f64>, f64)> {
        match self {
            SphericalMeasure::Atoms { atoms } => atoms.clone(),
            SphericalMeasure::Uniform { dim: 1, total } => {
                vec![(vec![1.0], total / 2.0), (vec![-1.0], total / 2.0)]
            }
            SphericalMeasure::Uniform { dim: 2, total } => {
                let n = 64;
                (0..n)
                    .map(|k| {
                        let phi = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
                        (vec![phi.cos(), phi.sin()], total / n as f64)
                    })
                    .collect()
            }
            SphericalMeasure::Uniform { dim: 3, total } => {
                let (gl_nodes, gl_weights) = gauss_legendre_24();
                let n_phi = 48;
                let mut out = Vec::with_capacity(gl_nodes.len() * n_phi);
                for (ct, wt) in gl_nodes.iter().zip(&gl_weights) {
                    let st = (1.0 - ct * ct).sqrt();
                    for k in 0..n_phi {
                        let phi = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n_phi as f64;
                        // uniform measure on S²: weight wt/2 × 1/n_phi of total
                        out.push((
                            vec![st * phi.cos(), st * phi.sin(), *ct],
                            total * wt / 2.0 / n_phi as f64,
                        ));
                    }
                }
                out
            }
            SphericalMeasure::Uniform { .. } => unreachable!("validated dimension"),
        }
    }

    pub fn integrate_complex(&self, f: &dyn Fn(&[f64]) -> Complex64) -> Complex64 {
        self.nodes()
            .iter()
            .map(|(xi, w)| f(xi) * *w)
            .sum()
    }

    /// Structural symmetry under ξ ↦ −ξ.
    pub fn is_symmetric(&self) -> bool {
        match self {
            SphericalMeasure::Uniform { .. } => true,
            SphericalMeasure::Atoms { atoms } => {
                let mut unmatched: Vec<(Vec<f64>, f64)> = atoms.clone();
                while let Some((xi, m)) = unmatched.pop() {
                    let neg = linalg::neg(&xi);
                    match unmatched.iter().position(|(eta, w)| {
                        linalg::max_abs_diff(eta, &neg) < UNIT_TOL && (w - m).abs() < UNIT_TOL
                    }) {
                        Some(idx) => {
                            unmatched.swap_remove(idx);
                        }
                        None => return false,
                    }
                }
                true
            }
        }
    }

    pub fn negate_directions(&self) -> Self {
        match self {
            SphericalMeasure::Atoms { atoms } => SphericalMeasure::Atoms {
                atoms: atoms.iter().map(|(xi, m)| (linalg::neg(xi), *m)).collect(),
            },
            u => u.clone(),
        }
    }

    pub fn scale_mass(&self, t: f64) -> Self {
        match self {
            SphericalMeasure::Atoms { atoms } => SphericalMeasure::Atoms {
                atoms: atoms.iter().map(|(xi, m)| (xi.clone(), m * t)).collect(),
            },
            SphericalMeasure::Uniform { dim, total } => {
                SphericalMeasure::Uniform { dim: *dim, total: total * t }
            }
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (SphericalMeasure::Uniform { dim: d1, total: t1 },
             SphericalMeasure::Uniform { dim: d2, total: t2 }) => {
                d1 == d2 && (t1 - t2).abs() <= tol * (1.0 + t1.abs())
            }
            (SphericalMeasure::Atoms { atoms: a1 }, SphericalMeasure::Atoms { atoms: a2 }) => {
                if a1.len() != a2.len() {
                    return false;
                }
                let mut remaining: Vec<_> = a2.clone();
                for (xi, m) in a1 {
                    match remaining.iter().position(|(eta, w)| {
                        linalg::max_abs_diff(eta, xi) < tol && (w - m).abs() < tol * (1.0 + m)
                    }) {
                        Some(idx) => {
                            remaining.swap_remove(idx);
                        }
                        None => return false,
                    }
                }
                true
            }
            _ => false,
        }
    }
}

/// 24-point Gauss–Legendre nodes/weights on [-1, 1], computed by Newton
/// iteration on the Legendre recurrence at first use.
fn gauss_legendre_24() -> (Vec<f64>, Vec<f64>) {
    let n = 24usize;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
