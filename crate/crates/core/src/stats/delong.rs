//! Paired DeLong test for correlated AUCs.

use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stats::roc::roc_analysis;

#[derive(Debug, Clone, PartialEq)]
pub struct DeLongResult<R: Real> {
    pub auc_a: R,
    pub auc_b: R,
    /// `auc_a - auc_b`.
    pub difference: R,
    /// Variance of the difference from the structural components.
    pub variance: R,
    pub z: R,
    /// Two-sided p-value from the standard normal.
    pub p: R,
}

fn sample_variance<R: Real>(values: &[R]) -> R {
    let n = R::of_usize(values.len());
    let mean = values.iter().copied().sum::<R>() / n;
    values
        .iter()
        .map(|&v| (v - mean) * (v - mean))
        .sum::<R>()
        / (n - R::one())
}

/// Compares two score vectors over the same patients.
///
/// `var = var(V10a - V10b)/m + var(V01a - V01b)/n` with sample variances;
/// ties enter with weight one half, matching the AUC estimator. Identical or
/// rank-identical score vectors have zero variance and are reported as a
/// degenerate comparison rather than a division by zero.
pub fn delong_paired<R: Real>(
    scores_a: &[f64],
    scores_b: &[f64],
    labels: &[u8],
) -> Result<DeLongResult<R>> {
    if scores_a.len() != scores_b.len() || scores_a.len() != labels.len() {
        return Err(Error::InvalidParam {
            what: "paired comparison needs equal-length score and label vectors".into(),
        });
    }
    if scores_a == scores_b {
        return Err(Error::DegenerateComparison);
    }
    let roc_a = roc_analysis::<R>(scores_a, labels)?;
    let roc_b = roc_analysis::<R>(scores_b, labels)?;
    if scores_a.len() < 3 || roc_a.v10.len() < 2 || roc_a.v01.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: roc_a.v10.len().min(roc_a.v01.len()),
        });
    }

    let d10: Vec<R> = roc_a
        .v10
        .iter()
        .zip(&roc_b.v10)
        .map(|(&a, &b)| a - b)
        .collect();
    let d01: Vec<R> = roc_a
        .v01
        .iter()
        .zip(&roc_b.v01)
        .map(|(&a, &b)| a - b)
        .collect();
    let m = R::of_usize(d10.len());
    let n = R::of_usize(d01.len());
    let variance = sample_variance(&d10) / m + sample_variance(&d01) / n;

    let difference = roc_a.auc - roc_b.auc;
    if variance <= R::zero() {
        return Err(Error::DegenerateComparison);
    }
    let z = difference / variance.sqrt();
    let p = R::c(erfc(z.as_f64().abs() / std::f64::consts::SQRT_2));

    Ok(DeLongResult {
        auc_a: roc_a.auc,
        auc_b: roc_b.auc,
        difference,
        variance,
        z,
        p,
    })
}
