//! Limit detection for truncated-integral sequences.
//!
//! The detectors never coerce a value: a sequence either settles (Cauchy
//! within tolerance over a window, with decaying increments), visibly
//! diverges (persistent same-direction or growing increments), or the
//! outcome is reported as inconclusive.

use crate::error::Result;
use crate::linalg;

#[derive(Debug, Clone, Copy)]
pub struct DetectorParams {
    /// Successive partials must differ by less than this over the window.
    pub cauchy_tol: f64,
    /// Number of consecutive quiet increments required.
    pub window: usize,
    /// Hard cap on the number of grid refinements.
    pub max_steps: usize,
    /// Increments persistently above this magnitude signal divergence.
    pub divergence_floor: f64,
}

impl Default for DetectorParams {
    fn default() -> Self {
        DetectorParams {
            cauchy_tol: 1e-8,
            window: 4,
            max_steps: 48,
            divergence_floor: 1e-6,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SeqOutcome {
    Converged { value: Vec<f64>, partials: Vec<Vec<f64>> },
    Diverged { partials: Vec<Vec<f64>> },
    Inconclusive { partials: Vec<Vec<f64>> },
}

fn aitken_extrapolate(partials: &[Vec<f64>]) -> Vec<f64> {
    let n = partials.len();
    let last = &partials[n - 1];
    if n < 3 {
        return last.clone();
    }
    let d1 = linalg::sub(last, &partials[n - 2]);
    let d0 = linalg::sub(&partials[n - 2], &partials[n - 3]);
    let mut out = last.clone();
    for i in 0..out.len() {
        let dd = d1[i] - d0[i];
        if dd.abs() > 0.1 * d1[i].abs() && dd.abs() > 0.0 {
            let corr = -d1[i] * d1[i] / dd;
            if corr.abs() <= 10.0 * d1[i].abs() {
                out[i] += corr;
            }
        }
    }
    out
}

/// Feeds increments `increment(k)` for k = 0, 1, ... into a running sum and
/// classifies the partial-sum sequence.
pub fn detect_limit(
    mut increment: impl FnMut(usize) -> Result<Vec<f64>>,
    params: &DetectorParams,
) -> Result<SeqOutcome> {
    let mut partials: Vec<Vec<f64>> = Vec::new();
    let mut sum: Option<Vec<f64>> = None;
    let mut inc_norms: Vec<f64> = Vec::new();
    let mut inc_signs: Vec<f64> = Vec::new();

    for k in 0..params.max_steps {
        let inc = increment(k)?;
        let norm = inc.iter().map(|v| v.abs()).fold(0.0, f64::max);
        // dominant-component sign, used to distinguish drift from oscillation
        let sign = inc
            .iter()
            .cloned()
            .max_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
            .map(|v| v.signum())
            .unwrap_or(0.0);
        match sum.as_mut() {
            None => sum = Some(inc),
            Some(s) => linalg::axpy(s, 1.0, &inc),
        }
        partials.push(sum.clone().unwrap());
        inc_norms.push(norm);
        inc_signs.push(sign);

        let w = params.window;
        if inc_norms.len() >= w {
            let tail = &inc_norms[inc_norms.len() - w..];
            let quiet = tail.iter().all(|&v| v < params.cauchy_tol);
            let decaying =
                tail[w - 1] <= 0.75 * tail[0].max(params.cauchy_tol * 1e-3) || tail[w - 1] == 0.0;
            if quiet && decaying {
                return Ok(SeqOutcome::Converged {
                    value: aitken_extrapolate(&partials),
                    partials,
                });
            }
        }

        // Divergence: six consecutive non-vanishing same-direction increments
        // whose magnitudes are not decaying, or strictly growing increments.
        if inc_norms.len() >= 6 && k >= 8 {
            let tail = &inc_norms[inc_norms.len() - 6..];
            let signs = &inc_signs[inc_signs.len() - 6..];
            let above = tail.iter().all(|&v| v > params.divergence_floor);
            let same_dir = signs.iter().all(|&s| s == signs[0] && s != 0.0);
            let not_decaying = tail[5] > 0.5 * tail[0];
            let growing = tail.windows(2).all(|p| p[1] > p[0] * 1.05)
                && tail[5] > 100.0 * params.cauchy_tol;
            if (above && same_dir && not_decaying) || growing {
                return Ok(SeqOutcome::Diverged { partials });
            }
        }
    }

    Ok(SeqOutcome::Inconclusive { partials })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series_converges() {
        let out = detect_limit(|k| Ok(vec![0.5f64.powi(k as i32)]), &DetectorParams::default())
            .unwrap();
        match out {
            SeqOutcome::Converged { value, .. } => assert!((value[0] - 2.0).abs() < 1e-7),
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn harmonic_like_series_diverges() {
        // constant increments: the log-divergence pattern of one-sided r^{-2}
        let out = detect_limit(|_| Ok(vec![0.693]), &DetectorParams::default()).unwrap();
        assert!(matches!(out, SeqOutcome::Diverged { .. }));
    }

    #[test]
    fn bounded_oscillation_is_inconclusive() {
        let out = detect_limit(
            |k| Ok(vec![if k % 2 == 0 { 1.0 } else { -1.0 }]),
            &DetectorParams::default(),
        )
        .unwrap();
        assert!(matches!(out, SeqOutcome::Inconclusive { .. }));
    }

    #[test]
    fn alternating_decaying_series_converges() {
        // Σ (-1)^k 2^{-k} = 2/3
        let out = detect_limit(
            |k| Ok(vec![if k % 2 == 0 { 1.0 } else { -1.0 } * 0.5f64.powi(k as i32)]),
            &DetectorParams::default(),
        )
        .unwrap();
        match out {
            SeqOutcome::Converged { value, .. } => assert!((value[0] - 2.0 / 3.0).abs() < 1e-7),
            other => panic!("expected convergence, got {other:?}"),
        }
    }
}
