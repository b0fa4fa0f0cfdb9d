//! Cross-validated penalty selection.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::scalar::Real;
use crate::selection::lasso::{fit_path, sigmoid, FitOptions};
use crate::selection::standardize::DesignMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionRule {
    /// Penalty minimizing mean validation loss.
    Min,
    /// Largest penalty within one standard error of the minimum.
    OneSe,
}

/// Mean validation log-loss along the penalty grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvCurve<R: Real> {
    /// Penalty grid, descending.
    pub lambdas: Vec<R>,
    pub mean_loss: Vec<R>,
    pub se_loss: Vec<R>,
    pub chosen_index: usize,
    pub rule: SelectionRule,
    pub folds: usize,
}

impl<R: Real> CvCurve<R> {
    pub fn chosen_lambda(&self) -> R {
        self.lambdas[self.chosen_index]
    }
}

/// Deterministic stratified fold assignment: per class, a seeded shuffle
/// dealt round-robin. Returns `fold_of[i]` per row.
pub fn stratified_folds(y: &[u8], folds: usize, seed: u64) -> Result<Vec<usize>> {
    if folds < 2 {
        return Err(Error::InvalidParam {
            what: format!("folds must be >= 2, got {folds}"),
        });
    }
    if y.len() < folds {
        return Err(Error::TooFewSamples {
            needed: folds,
            got: y.len(),
        });
    }
    let mut rng = rng::stream(seed);
    let mut fold_of = vec![0usize; y.len()];
    for class in [0u8, 1u8] {
        let mut idx: Vec<usize> = (0..y.len()).filter(|&i| y[i] == class).collect();
        idx.shuffle(&mut rng);
        for (k, &i) in idx.iter().enumerate() {
            fold_of[i] = k % folds;
        }
    }
    // every fold's training part must keep both classes
    for fold in 0..folds {
        for class in [0u8, 1u8] {
            let in_train = y
                .iter()
                .enumerate()
                .any(|(i, &c)| c == class && fold_of[i] != fold);
            if !in_train {
                return Err(Error::FoldMissingClass { fold });
            }
        }
    }
    Ok(fold_of)
}

/// Mean log-loss of `scores` (probabilities) against labels.
pub fn log_loss<R: Real>(scores: &[R], labels: &[u8]) -> R {
    let eps = R::c(1e-12);
    let one = R::one();
    let mut total = R::zero();
    for (&s, &y) in scores.iter().zip(labels) {
        let p = s.max(eps).min(one - eps);
        total -= if y == 1 { p.ln() } else { (one - p).ln() };
    }
    total / R::of_usize(scores.len())
}

/// Runs stratified k-fold CV over the penalty grid with warm-started path
/// fits and picks a penalty by `rule`.
pub fn cv_select<R: Real>(
    x: &DesignMatrix<R>,
    y: &[u8],
    folds: usize,
    grid: &[R],
    rule: SelectionRule,
    seed: u64,
    opts: &FitOptions<R>,
) -> Result<CvCurve<R>> {
    if grid.is_empty() {
        return Err(Error::InvalidParam {
            what: "empty penalty grid".into(),
        });
    }
    let fold_of = stratified_folds(y, folds, seed)?;
    let n = x.n;

    // per fold, per lambda validation loss
    let mut fold_losses: Vec<Vec<R>> = Vec::with_capacity(folds);
    for fold in 0..folds {
        let train_rows: Vec<usize> = (0..n).filter(|&i| fold_of[i] != fold).collect();
        let val_rows: Vec<usize> = (0..n).filter(|&i| fold_of[i] == fold).collect();
        if val_rows.is_empty() {
            return Err(Error::FoldMissingClass { fold });
        }
        let x_train = subset(x, &train_rows);
        let y_train: Vec<u8> = train_rows.iter().map(|&i| y[i]).collect();
        let y_val: Vec<u8> = val_rows.iter().map(|&i| y[i]).collect();

        let fits = fit_path(&x_train, &y_train, grid, opts)?;
        let mut losses = Vec::with_capacity(grid.len());
        for fit in &fits {
            let scores: Vec<R> = val_rows
                .iter()
                .map(|&i| {
                    let mut lin = fit.intercept;
                    for (j, &b) in fit.coefficients.iter().enumerate() {
                        if b != R::zero() {
                            lin += x.column(j)[i] * b;
                        }
                    }
                    sigmoid(lin)
                })
                .collect();
            losses.push(log_loss(&scores, &y_val));
        }
        fold_losses.push(losses);
    }

    let k = R::of_usize(folds);
    let mut mean_loss = Vec::with_capacity(grid.len());
    let mut se_loss = Vec::with_capacity(grid.len());
    for l in 0..grid.len() {
        let mean = fold_losses.iter().map(|f| f[l]).sum::<R>() / k;
        let var = fold_losses
            .iter()
            .map(|f| (f[l] - mean) * (f[l] - mean))
            .sum::<R>()
            / (k - R::one());
        mean_loss.push(mean);
        se_loss.push((var / k).sqrt());
    }

    // grid is descending, so ties resolve toward the larger penalty
    let mut min_idx = 0usize;
    for (i, &m) in mean_loss.iter().enumerate() {
        if m < mean_loss[min_idx] {
            min_idx = i;
        }
    }
    let chosen_index = match rule {
        SelectionRule::Min => min_idx,
        SelectionRule::OneSe => {
            let cutoff = mean_loss[min_idx] + se_loss[min_idx];
            (0..=min_idx)
                .find(|&i| mean_loss[i] <= cutoff)
                .unwrap_or(min_idx)
        }
    };

    Ok(CvCurve {
        lambdas: grid.to_vec(),
        mean_loss,
        se_loss,
        chosen_index,
        rule,
        folds,
    })
}

fn subset<R: Real>(x: &DesignMatrix<R>, rows: &[usize]) -> DesignMatrix<R> {
    let columns: Vec<Vec<R>> = (0..x.p)
        .map(|j| {
            let col = x.column(j);
            rows.iter().map(|&i| col[i]).collect()
        })
        .collect();
    DesignMatrix::from_columns(rows.len(), columns)
}
