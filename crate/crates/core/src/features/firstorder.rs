//! First-order (intensity histogram and moment) features.

use crate::error::Result;
use crate::imaging::{discretize, RoiMask, Volume};
use crate::scalar::{sort_ascending, xlog2, Real};

/// Feature names, lexicographic. Values come back in the same order.
pub const NAMES: [&str; 18] = [
    "energy",
    "entropy",
    "interquartile_range",
    "kurtosis",
    "maximum",
    "mean",
    "mean_absolute_deviation",
    "median",
    "minimum",
    "p10",
    "p90",
    "range",
    "robust_mean_absolute_deviation",
    "root_mean_squared",
    "skewness",
    "total_energy",
    "uniformity",
    "variance",
];

/// Computes the 18 first-order features over the ROI.
///
/// Entropy (log2) and uniformity are taken over the fixed-bin-count
/// histogram; percentiles interpolate linearly between order statistics;
/// variance, skewness and kurtosis are population moments, with skewness and
/// kurtosis falling back to 0 on zero variance. Kurtosis is non-excess.
pub fn first_order<R: Real>(
    volume: &Volume<R>,
    mask: &RoiMask,
    bin_count: u32,
) -> Result<Vec<(&'static str, R)>> {
    mask.check_aligned(volume)?;
    let droi = discretize(volume, mask, bin_count)?;
    let values = mask.extract_values(volume);
    Ok(from_parts(
        &values,
        R::c(volume.voxel_volume()),
        &droi.levels,
        bin_count,
    ))
}

/// Same computation when the caller already holds the ROI values and levels.
pub(crate) fn from_parts<R: Real>(
    values: &[R],
    voxel_volume: R,
    levels: &[u32],
    bin_count: u32,
) -> Vec<(&'static str, R)> {
    let n = R::of_usize(values.len());
    let mut sorted = values.to_vec();
    sort_ascending(&mut sorted);
    let minimum = sorted[0];
    let maximum = sorted[sorted.len() - 1];

    let mean = values.iter().copied().sum::<R>() / n;
    let energy = values.iter().map(|&v| v * v).sum::<R>();
    let rms = (energy / n).sqrt();

    let mut m2 = R::zero();
    let mut m3 = R::zero();
    let mut m4 = R::zero();
    let mut mad = R::zero();
    for &v in values {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
        mad += d.abs();
    }
    m2 = m2 / n;
    m3 = m3 / n;
    m4 = m4 / n;
    mad = mad / n;
    let (skewness, kurtosis) = if m2 > R::zero() {
        (m3 / (m2 * m2.sqrt()), m4 / (m2 * m2))
    } else {
        (R::zero(), R::zero())
    };

    let p10 = percentile(&sorted, 0.10);
    let p25 = percentile(&sorted, 0.25);
    let median = percentile(&sorted, 0.50);
    let p75 = percentile(&sorted, 0.75);
    let p90 = percentile(&sorted, 0.90);

    // robust MAD: mean absolute deviation of the values inside [p10, p90]
    let trimmed: Vec<R> = sorted
        .iter()
        .copied()
        .filter(|&v| v >= p10 && v <= p90)
        .collect();
    let rmad = if trimmed.is_empty() {
        R::zero()
    } else {
        let tn = R::of_usize(trimmed.len());
        let tmean = trimmed.iter().copied().sum::<R>() / tn;
        trimmed.iter().map(|&v| (v - tmean).abs()).sum::<R>() / tn
    };

    let mut hist = vec![0u64; bin_count as usize];
    for &l in levels {
        hist[(l - 1) as usize] += 1;
    }
    let mut entropy = R::zero();
    let mut uniformity = R::zero();
    for &count in &hist {
        if count > 0 {
            let p = R::from_u64(count).unwrap() / n;
            entropy -= xlog2(p);
            uniformity += p * p;
        }
    }

    vec![
        ("energy", energy),
        ("entropy", entropy),
        ("interquartile_range", p75 - p25),
        ("kurtosis", kurtosis),
        ("maximum", maximum),
        ("mean", mean),
        ("mean_absolute_deviation", mad),
        ("median", median),
        ("minimum", minimum),
        ("p10", p10),
        ("p90", p90),
        ("range", maximum - minimum),
        ("robust_mean_absolute_deviation", rmad),
        ("root_mean_squared", rms),
        ("skewness", skewness),
        ("total_energy", voxel_volume * energy),
        ("uniformity", uniformity),
        ("variance", m2),
    ]
}

/// Linear interpolation between order statistics at rank q*(n-1).
fn percentile<R: Real>(sorted: &[R], q: f64) -> R {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let rank = q * (n - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = R::c(rank - lo as f64);
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}
