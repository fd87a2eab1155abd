//! Log-log trend classification for condition curves.

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    TendsToZero,
    BoundedAway,
    Inconclusive,
}

#[derive(Debug, Clone, Copy)]
pub struct TrendParams {
    /// Slope (against the limit-direction abscissa) below which the curve is
    /// classified as tending to zero.
    pub zero_slope: f64,
    /// |slope| below this together with values above `floor` means bounded away.
    pub flat_slope: f64,
    /// Values below this are treated as numerically zero.
    pub floor: f64,
}

impl Default for TrendParams {
    fn default() -> Self {
        TrendParams {
            zero_slope: -0.1,
            flat_slope: 0.05,
            floor: 1e-6,
        }
    }
}

/// Least-squares slope of ln(values) against `xs` over the trailing half.
///
/// `xs` must increase toward the limit (use ln t for t → ∞ and ln(1/ε) for
/// ε ↓ 0). Returns the classification and the fitted slope when defined.
pub fn classify_trend(xs: &[f64], values: &[f64], params: &TrendParams) -> (Trend, Option<f64>) {
    assert_eq!(xs.len(), values.len());
    let n = values.len();
    if n < 4 {
        return (Trend::Inconclusive, None);
    }
    let start = n / 2;
    let tail: Vec<(f64, f64)> = xs[start..]
        .iter()
        .cloned()
        .zip(values[start..].iter().cloned())
        .collect();

    let max_tail = tail.iter().map(|&(_, v)| v).fold(0.0, f64::max);
    if max_tail <= 1e-300 {
        return (Trend::TendsToZero, None);
    }
    // Exact zeros past some point with nonincreasing values also count.
    if tail.last().unwrap().1 == 0.0 && values.windows(2).all(|w| w[1] <= w[0] + 1e-300) {
        return (Trend::TendsToZero, None);
    }

    let pts: Vec<(f64, f64)> = tail
        .iter()
        .filter(|&&(_, v)| v > 1e-300)
        .map(|&(x, v)| (x, v.ln()))
        .collect();
    if pts.len() < 3 {
        return (Trend::Inconclusive, None);
    }
    let m = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = m * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return (Trend::Inconclusive, None);
    }
    let slope = (m * sxy - sx * sy) / denom;

    let decreasing = tail.last().unwrap().1 < tail.first().unwrap().1;
    if slope < params.zero_slope && decreasing {
        (Trend::TendsToZero, Some(slope))
    } else if slope.abs() <= params.flat_slope && max_tail > params.floor {
        (Trend::BoundedAway, Some(slope))
    } else {
        (Trend::Inconclusive, Some(slope))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_decay_classified_with_exponent() {
        let xs: Vec<f64> = (0..16).map(|k| (k as f64) * 2f64.ln()).collect();
        let vals: Vec<f64> = xs.iter().map(|x| (-0.5 * x).exp()).collect();
        let (trend, slope) = classify_trend(&xs, &vals, &TrendParams::default());
        assert_eq!(trend, Trend::TendsToZero);
        assert!((slope.unwrap() + 0.5).abs() < 1e-9);
    }

    #[test]
    fn constant_curve_is_bounded_away() {
        let xs: Vec<f64> = (0..16).map(|k| k as f64).collect();
        let vals = vec![0.6366; 16];
        let (trend, _) = classify_trend(&xs, &vals, &TrendParams::default());
        assert_eq!(trend, Trend::BoundedAway);
    }

    #[test]
    fn exact_zeros_tend_to_zero() {
        let xs: Vec<f64> = (0..10).map(|k| k as f64).collect();
        let mut vals = vec![2.0, 1.0, 0.4];
        vals.extend(vec![0.0; 7]);
        let (trend, _) = classify_trend(&xs, &vals, &TrendParams::default());
        assert_eq!(trend, Trend::TendsToZero);
    }
}
