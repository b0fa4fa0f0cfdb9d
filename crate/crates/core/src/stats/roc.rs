//! ROC curves, AUC, and the DeLong structural components.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// ROC points, area, and per-observation DeLong components.
#[derive(Debug, Clone, PartialEq)]
pub struct RocAnalysis<R: Real> {
    /// (FPR, TPR), starting (0,0) and ending (1,1), monotone.
    pub points: Vec<(R, R)>,
    pub auc: R,
    /// Structural component per positive: mean of psi against all negatives.
    pub v10: Vec<R>,
    /// Structural component per negative: mean of psi against all positives.
    pub v01: Vec<R>,
}

fn check_labels(scores: &[f64], labels: &[u8]) -> Result<(usize, usize)> {
    if scores.len() != labels.len() {
        return Err(Error::InvalidParam {
            what: "scores and labels differ in length".into(),
        });
    }
    let pos = labels.iter().filter(|&&l| l == 1).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::SingleClass);
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(Error::NonFinite {
            what: "scores".into(),
        });
    }
    Ok((pos, neg))
}

/// Exact integer pair counts: (2*wins + ties, 2*m*n).
///
/// `wins` counts positive-negative pairs where the positive scores strictly
/// higher; tied pairs count half. Counting in integers makes the estimator's
/// complement symmetry exact: negating scores maps the numerator `a` to
/// `d - a` with the same denominator `d`.
fn pair_counts(scores: &[f64], labels: &[u8]) -> (u64, u64) {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).expect("finite scores"));
    let pos_total: u64 = labels.iter().filter(|&&l| l == 1).count() as u64;
    let neg_total = labels.len() as u64 - pos_total;

    let mut wins = 0u64; // positive above negative
    let mut tie_pairs = 0u64;
    let mut neg_below = 0u64;
    let mut i = 0usize;
    while i < order.len() {
        let mut j = i;
        let mut pos_here = 0u64;
        let mut neg_here = 0u64;
        while j < order.len() && scores[order[j]] == scores[order[i]] {
            if labels[order[j]] == 1 {
                pos_here += 1;
            } else {
                neg_here += 1;
            }
            j += 1;
        }
        wins += pos_here * neg_below;
        tie_pairs += pos_here * neg_here;
        neg_below += neg_here;
        i = j;
    }
    (2 * wins + tie_pairs, 2 * pos_total * neg_total)
}

/// Mann-Whitney AUC with tie correction.
///
/// The value is a single correctly-rounded quotient arranged so that
/// `auc(s) + auc(-s) == 1` holds exactly in floating point.
pub fn auc<R: Real>(scores: &[f64], labels: &[u8]) -> Result<R> {
    check_labels(scores, labels)?;
    let (num, den) = pair_counts(scores, labels);
    let low = num.min(den - num);
    let q = R::from_u64(low).unwrap() / R::from_u64(den).unwrap();
    Ok(if 2 * num <= den { q } else { R::one() - q })
}

/// Midranks (average rank of ties, 1-based) of `values`.
fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite"));
    let mut ranks = vec![0.0f64; values.len()];
    let mut i = 0usize;
    while i < values.len() {
        let mut j = i;
        while j < values.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let mid = (i + 1 + j) as f64 / 2.0; // average of ranks i+1 ..= j
        for &k in &order[i..j] {
            ranks[k] = mid;
        }
        i = j;
    }
    ranks
}

/// Full ROC analysis: curve points, AUC, and V10/V01 components computed via
/// midranks in O(n log n).
pub fn roc_analysis<R: Real>(scores: &[f64], labels: &[u8]) -> Result<RocAnalysis<R>> {
    let (pos, neg) = check_labels(scores, labels)?;
    let auc_value = auc::<R>(scores, labels)?;

    let all_ranks = midranks(scores);
    let pos_scores: Vec<f64> = scores
        .iter()
        .zip(labels)
        .filter_map(|(&s, &l)| (l == 1).then_some(s))
        .collect();
    let neg_scores: Vec<f64> = scores
        .iter()
        .zip(labels)
        .filter_map(|(&s, &l)| (l == 0).then_some(s))
        .collect();
    let pos_ranks = midranks(&pos_scores);
    let neg_ranks = midranks(&neg_scores);

    let mut v10 = Vec::with_capacity(pos);
    let mut v01 = Vec::with_capacity(neg);
    let mut pi = 0usize;
    let mut ni = 0usize;
    for (i, &l) in labels.iter().enumerate() {
        if l == 1 {
            v10.push(R::c((all_ranks[i] - pos_ranks[pi]) / neg as f64));
            pi += 1;
        } else {
            v01.push(R::c(1.0 - (all_ranks[i] - neg_ranks[ni]) / pos as f64));
            ni += 1;
        }
    }

    // ROC points at descending unique thresholds
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).expect("finite"));
    let mut points = vec![(R::zero(), R::zero())];
    let mut tp = 0u64;
    let mut fp = 0u64;
    let mut i = 0usize;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && scores[order[j]] == scores[order[i]] {
            if labels[order[j]] == 1 {
                tp += 1;
            } else {
                fp += 1;
            }
            j += 1;
        }
        points.push((
            R::from_u64(fp).unwrap() / R::of_usize(neg),
            R::from_u64(tp).unwrap() / R::of_usize(pos),
        ));
        i = j;
    }

    Ok(RocAnalysis {
        points,
        auc: auc_value,
        v10,
        v01,
    })
}

/// Trapezoidal area under a piecewise-linear curve of (x, y) points.
pub fn trapezoid_area<R: Real>(points: &[(R, R)]) -> R {
    let half = R::c(0.5);
    points
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[1].1 + w[0].1) * half)
        .sum()
}
