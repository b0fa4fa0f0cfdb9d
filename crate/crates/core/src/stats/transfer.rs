//! Cross-cohort transfer evaluation.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::selection::BiomarkerModel;
use crate::stats::delong::{delong_paired, DeLongResult};
use crate::stats::roc::auc;
use crate::table::FeatureTable;

/// One pairwise model comparison inside a validation column.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTest<R: Real> {
    pub model_a: usize,
    pub model_b: usize,
    /// `None` when the comparison is degenerate (no detectable difference).
    pub result: Option<DeLongResult<R>>,
}

impl<R: Real> PairTest<R> {
    pub fn degenerate(&self) -> bool {
        self.result.is_none()
    }
}

/// Validation AUC grid (rows = biomarker source, columns = validation
/// cohort) with pairwise DeLong tests per column on identical score vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrix<R: Real> {
    pub model_ids: Vec<String>,
    pub cohort_ids: Vec<String>,
    /// `auc[model][cohort]`.
    pub auc: Vec<Vec<R>>,
    /// `tests[cohort]` holds every model pair for that column.
    pub tests: Vec<Vec<PairTest<R>>>,
    /// `scores[model][cohort][patient]`, kept for ROC exports.
    pub scores: Vec<Vec<Vec<R>>>,
}

/// Scores every model on every cohort table and assembles the matrix.
pub fn transfer_matrix<R: Real>(
    models: &[(String, BiomarkerModel<R>)],
    cohorts: &[(String, FeatureTable<R>)],
) -> Result<TransferMatrix<R>> {
    if models.is_empty() || cohorts.is_empty() {
        return Err(Error::InvalidParam {
            what: "transfer evaluation needs at least one model and one cohort".into(),
        });
    }
    let mut auc_grid = Vec::with_capacity(models.len());
    let mut scores_grid = Vec::with_capacity(models.len());
    for (model_id, model) in models {
        let mut auc_row = Vec::with_capacity(cohorts.len());
        let mut score_row = Vec::with_capacity(cohorts.len());
        for (cohort_id, table) in cohorts {
            let scores = model
                .score(table)
                .map_err(|e| e.in_context(format!("model '{model_id}' on cohort '{cohort_id}'")))?;
            let scores_f64: Vec<f64> = scores.iter().map(|s| s.as_f64()).collect();
            let cell = auc::<R>(&scores_f64, table.labels())
                .map_err(|e| e.in_context(format!("AUC of '{model_id}' on '{cohort_id}'")))?;
            auc_row.push(cell);
            score_row.push(scores);
        }
        auc_grid.push(auc_row);
        scores_grid.push(score_row);
    }

    let mut tests = Vec::with_capacity(cohorts.len());
    for (c, (_, table)) in cohorts.iter().enumerate() {
        let mut column = Vec::new();
        for a in 0..models.len() {
            for b in (a + 1)..models.len() {
                let sa: Vec<f64> = scores_grid[a][c].iter().map(|s| s.as_f64()).collect();
                let sb: Vec<f64> = scores_grid[b][c].iter().map(|s| s.as_f64()).collect();
                let result = match delong_paired::<R>(&sa, &sb, table.labels()) {
                    Ok(r) => Some(r),
                    Err(Error::DegenerateComparison) => None,
                    Err(e) => return Err(e),
                };
                column.push(PairTest {
                    model_a: a,
                    model_b: b,
                    result,
                });
            }
        }
        tests.push(column);
    }

    Ok(TransferMatrix {
        model_ids: models.iter().map(|(id, _)| id.clone()).collect(),
        cohort_ids: cohorts.iter().map(|(id, _)| id.clone()).collect(),
        auc: auc_grid,
        tests,
        scores: scores_grid,
    })
}

impl<R: Real> TransferMatrix<R> {
    /// Mean AUC of a model's row excluding its own cohort's column.
    ///
    /// Pairs rows and columns by index: row i's "own" column is i.
    pub fn mean_off_diagonal(&self, model: usize) -> R {
        let mut acc = R::zero();
        let mut count = 0usize;
        for c in 0..self.cohort_ids.len() {
            if c != model {
                acc += self.auc[model][c];
                count += 1;
            }
        }
        acc / R::of_usize(count)
    }
}
