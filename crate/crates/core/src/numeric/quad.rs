//! Adaptive Gauss–Kronrod quadrature and improper-integral helpers.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// 15-point Kronrod abscissae on [-1, 1] (positive half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_26,
    0.0,
];

/// Weights of the 7-point Gauss rule embedded in the Kronrod rule.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// Weights of the 15-point Kronrod rule.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Value type usable by the generic quadrature driver.
pub trait QuadValue: Copy {
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, c: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, c: f64) -> Self {
        self * c
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, c: f64) -> Self {
        self * c
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome<T> {
    pub value: T,
    pub err: f64,
    pub evals: usize,
}

/// One Gauss–Kronrod 15 panel. Returns (kronrod, |kronrod - gauss|).
fn gk15<T: QuadValue>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_gauss = f_center.scale(WG[3]);
    let mut res_kronrod = f_center.scale(WGK[7]);

    for j in 0..3 {
        let idx = 2 * j + 1;
        let x = half * XGK[idx];
        let fsum = f(center - x).add(f(center + x));
        res_gauss = res_gauss.add(fsum.scale(WG[j]));
        res_kronrod = res_kronrod.add(fsum.scale(WGK[idx]));
    }
    for j in 0..4 {
        let idx = 2 * j;
        let x = half * XGK[idx];
        let fsum = f(center - x).add(f(center + x));
        res_kronrod = res_kronrod.add(fsum.scale(WGK[idx]));
    }

    let err = res_kronrod.sub(res_gauss).magnitude() * half.abs();
    (res_kronrod.scale(half), err)
}

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
}

/// Globally adaptive: repeatedly bisect the panel with the largest error
/// estimate until the summed estimate meets `tol`, the panels stall at
/// machine precision, or the budget runs out.
fn adaptive<T: QuadValue>(
    f: &mut impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    tol: f64,
    evals: &mut usize,
) -> Result<(T, f64)> {
    let (value, err) = gk15(f, a, b);
    *evals += 15;
    let mut panels = vec![Panel { a, b, value, err }];
    let mut total_err = err;

    while total_err > tol {
        if *evals > 2_000_000 || panels.len() > 60_000 {
            return Err(Error::numerical(
                "quadrature evaluation budget exhausted",
                total_err,
            ));
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let p = &panels[worst];
        // stop once the dominant panel cannot be improved in f64
        if p.err <= 4.0 * f64::EPSILON * (p.value.magnitude() + 1e-300)
            || (p.b - p.a) < 1e-15 * (p.a.abs() + p.b.abs())
        {
            break;
        }
        let (pa, pb, perr) = (p.a, p.b, p.err);
        let mid = 0.5 * (pa + pb);
        let (lv, le) = gk15(f, pa, mid);
        let (rv, re) = gk15(f, mid, pb);
        *evals += 30;
        panels[worst] = Panel { a: pa, b: mid, value: lv, err: le };
        panels.push(Panel { a: mid, b: pb, value: rv, err: re });
        total_err += le + re - perr;
    }

    let mut sum = panels[0].value;
    for p in &panels[1..] {
        sum = sum.add(p.value);
    }
    total_err = panels.iter().map(|p| p.err).sum();
    Ok((sum, total_err))
}

pub fn quad_real(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<QuadOutcome<f64>> {
    let mut evals = 0;
    let (value, err) = adaptive(&mut f, a, b, tol, &mut evals)?;
    Ok(QuadOutcome { value, err, evals })
}

pub fn quad_complex(
    mut f: impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadOutcome<Complex64>> {
    let mut evals = 0;
    let (value, err) = adaptive(&mut f, a, b, tol, &mut evals)?;
    Ok(QuadOutcome { value, err, evals })
}

/// ∫_a^∞ f, via doubling segments and a Cauchy stop: three consecutive
/// segments below tol/4 terminate the sum. `a` must be positive.
pub fn quad_to_infinity(
    mut f: impl FnMut(f64) -> Complex64,
    a: f64,
    tol: f64,
) -> Result<QuadOutcome<Complex64>> {
    assert!(a > 0.0, "quad_to_infinity needs a positive left endpoint");
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut evals = 0;
    let mut lo = a;
    let mut quiet = 0;
    for _ in 0..960 {
        let hi = 2.0 * lo;
        let seg = quad_complex(&mut f, lo, hi, tol / 8.0)?;
        total += seg.value;
        err += seg.err;
        evals += seg.evals;
        if seg.value.norm() < tol / 4.0 {
            quiet += 1;
            if quiet >= 3 {
                return Ok(QuadOutcome { value: total, err: err + tol / 4.0, evals });
            }
        } else {
            quiet = 0;
        }
        if total.norm() > 1e12 {
            return Err(Error::numerical("improper upper integral appears divergent", total.norm()));
        }
        lo = hi;
    }
    Err(Error::numerical(
        "improper upper integral did not settle within segment budget",
        total.norm(),
    ))
}

/// ∫_(0,b] f with the singular/improper end at zero, by halving segments.
pub fn quad_to_zero(
    mut f: impl FnMut(f64) -> Complex64,
    b: f64,
    tol: f64,
) -> Result<QuadOutcome<Complex64>> {
    assert!(b > 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut evals = 0;
    let mut hi = b;
    let mut quiet = 0;
    for _ in 0..900 {
        let lo = 0.5 * hi;
        let seg = quad_complex(&mut f, lo, hi, tol / 8.0)?;
        total += seg.value;
        err += seg.err;
        evals += seg.evals;
        if seg.value.norm() < tol / 4.0 {
            quiet += 1;
            if quiet >= 3 {
                return Ok(QuadOutcome { value: total, err: err + tol / 4.0, evals });
            }
        } else {
            quiet = 0;
        }
        if total.norm() > 1e12 {
            return Err(Error::numerical("improper lower integral appears divergent", total.norm()));
        }
        hi = lo;
    }
    Err(Error::numerical(
        "improper lower integral did not settle within segment budget",
        total.norm(),
    ))
}

/// ∫_R^∞ r^p e^{iωr} dr by repeated integration by parts.
///
/// Valid for p < 0 and |ω| R comfortably larger than |p|; the caller is
/// expected to pick R accordingly. The alternating series terminates once
/// the bound on the remainder drops below `tol`.
pub fn fourier_power_tail(p: f64, omega: f64, r: f64, tol: f64) -> Result<Complex64> {
    assert!(omega != 0.0 && r > 0.0);
    if omega.abs() * r < p.abs() + 40.0 {
        return Err(Error::numerical(
            "fourier tail: oscillation scale too coarse at this radius",
            omega.abs() * r,
        ));
    }
    let i_omega = Complex64::new(0.0, omega);
    let phase = Complex64::new(0.0, omega * r).exp();
    let mut coef = Complex64::new(1.0, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    let mut best = f64::INFINITY;
    for k in 0..96 {
        let pk = p - k as f64;
        let term = -coef * phase * r.powf(pk) / i_omega;
        total += term;
        coef = coef * Complex64::new(-pk, 0.0) / i_omega;
        // Next-term magnitude bounds the remainder; the series is asymptotic,
        // so stop before the terms turn around.
        let bound = coef.norm() * r.powf(pk - 1.0);
        if bound < tol {
            return Ok(total);
        }
        if bound > best {
            return Err(Error::numerical(
                "fourier tail series bottomed out above tolerance",
                best,
            ));
        }
        best = bound;
    }
    Err(Error::numerical("fourier tail series did not converge", best))
}

/// ∫_a^b r^p e^{iωr} dr with b possibly infinite (then p < 0 is required
/// for convergence). Direct quadrature runs only below the knee radius
/// where IBP is not yet valid; past it the antiderivative expansion takes
/// over, so arbitrarily many oscillations cost nothing.
pub fn fourier_power_segment(p: f64, omega: f64, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    assert!(a > 0.0 && b > a);
    if omega == 0.0 {
        return Ok(Complex64::new(power_integral(p, a, b), 0.0));
    }
    let knee = ((p.abs() + 45.0) / omega.abs()).max(a);
    let direct_end = knee.min(b);
    let mut total = Complex64::new(0.0, 0.0);
    if direct_end > a * (1.0 + 1e-15) {
        // at most ~(|p|+10)/π cycles here
        total += quad_complex(
            |r| Complex64::new(0.0, omega * r).exp() * r.powf(p),
            a,
            direct_end,
            tol / 2.0,
        )?
        .value;
    }
    if b > direct_end {
        total += fourier_power_tail(p, omega, direct_end, tol / 4.0)?;
        if b.is_finite() {
            total -= fourier_power_tail(p, omega, b, tol / 4.0)?;
        }
    }
    Ok(total)
}

/// ∫_a^b r^p dr with the log case at p = -1; b may be infinite when p < -1.
pub fn power_integral(p: f64, a: f64, b: f64) -> f64 {
    if (p + 1.0).abs() < 1e-14 {
        (b / a).ln()
    } else if b.is_infinite() {
        -a.powf(p + 1.0) / (p + 1.0)
    } else {
        (b.powf(p + 1.0) - a.powf(p + 1.0)) / (p + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gk_matches_closed_forms() {
        let r = quad_real(|x| x.exp(), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - (1f64.exp() - 1.0)).abs() < 1e-12);
        let c = quad_complex(|x| Complex64::new(0.0, x).exp(), 0.0, PI, 1e-12).unwrap();
        assert!((c.value - Complex64::new(0.0, 2.0)).norm() < 1e-11);
    }

    #[test]
    fn improper_tail_of_exponential() {
        let r = quad_to_infinity(|x| Complex64::new((-x).exp(), 0.0), 1.0, 1e-11).unwrap();
        assert!((r.value.re - (-1f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn improper_zero_end_of_sqrt_singularity() {
        let r = quad_to_zero(|x| Complex64::new(x.powf(-0.5), 0.0), 1.0, 1e-11).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-9);
    }

    #[test]
    fn fourier_tail_difference_matches_brute_force() {
        // F(a) − F(b) must equal the directly computed ∫_a^b r^{-2} e^{iωr} dr.
        let p = -2.0;
        let omega = 7.0;
        let (a, b) = (40.0, 160.0);
        let diff = fourier_power_tail(p, omega, a, 1e-13).unwrap()
            - fourier_power_tail(p, omega, b, 1e-13).unwrap();
        let brute = quad_complex(
            |r| Complex64::new(0.0, omega * r).exp() * r.powf(p),
            a,
            b,
            1e-13,
        )
        .unwrap()
        .value;
        assert!((diff - brute).norm() < 1e-11, "diff={diff} brute={brute}");
    }

    #[test]
    fn power_integral_log_case() {
        assert!((power_integral(-1.0, 0.5, 2.0) - 4f64.ln()).abs() < 1e-15);
        assert!((power_integral(-2.0, 2.0, f64::INFINITY) - 0.5).abs() < 1e-15);
    }
}
