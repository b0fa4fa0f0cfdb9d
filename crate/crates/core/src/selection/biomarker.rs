//! Biomarker construction and scoring.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::scalar::Real;
use crate::selection::cv::{cv_select, CvCurve, SelectionRule};
use crate::selection::lasso::{fit_path, lambda_grid, sigmoid, FitOptions};
use crate::selection::standardize::Standardizer;
use crate::table::FeatureTable;

/// Knobs for penalty selection and the final fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionConfig {
    #[serde(default = "default_folds")]
    pub folds: usize,
    #[serde(default = "default_rule")]
    pub rule: SelectionRule,
    #[serde(default = "default_grid_size")]
    pub grid_size: usize,
    #[serde(default = "default_grid_ratio")]
    pub grid_ratio: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_folds() -> usize {
    5
}
fn default_rule() -> SelectionRule {
    SelectionRule::OneSe
}
fn default_grid_size() -> usize {
    100
}
fn default_grid_ratio() -> f64 {
    1e-3
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig {
            folds: default_folds(),
            rule: default_rule(),
            grid_size: default_grid_size(),
            grid_ratio: default_grid_ratio(),
            seed: 0,
        }
    }
}

impl SelectionConfig {
    /// Stable hash of the configuration for provenance records.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        format!("{:016x}", rng::fnv1a64(text.as_bytes()))
    }
}

/// Where a model came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub cohort_id: String,
    pub config_hash: String,
    pub seed: u64,
    /// True when the chosen penalty zeroed every coefficient.
    pub empty_selection: bool,
    pub n_train: usize,
    pub n_features_considered: usize,
}

/// A sparse logistic biomarker: selected features, their coefficients, the
/// intercept, the penalty that produced them and the training standardizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiomarkerModel<R: Real> {
    pub selected_features: Vec<String>,
    pub coefficients: Vec<R>,
    pub intercept: R,
    pub lambda: R,
    pub standardizer: Standardizer<R>,
    pub provenance: Provenance,
}

impl<R: Real + Serialize + for<'de> Deserialize<'de>> BiomarkerModel<R> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: BiomarkerModel<R> = serde_json::from_str(text)?;
        model.validate()?;
        Ok(model)
    }

    pub fn write_json(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn read_json(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| e.in_context(format!("model {}", path.display())))
    }
}

impl<R: Real> BiomarkerModel<R> {
    pub fn validate(&self) -> Result<()> {
        if self.selected_features.len() != self.coefficients.len() {
            return Err(Error::InvalidParam {
                what: "selected feature and coefficient counts differ".into(),
            });
        }
        if self.coefficients.iter().any(|&c| c == R::zero()) {
            return Err(Error::InvalidParam {
                what: "selected features must carry nonzero coefficients".into(),
            });
        }
        for name in &self.selected_features {
            if self.standardizer.position(name).is_none() {
                return Err(Error::MissingFeature { name: name.clone() });
            }
        }
        Ok(())
    }

    /// Signature scores in (0,1) for every row of `table`, using the model's
    /// own training statistics.
    pub fn score(&self, table: &FeatureTable<R>) -> Result<Vec<R>> {
        let mut cols = Vec::with_capacity(self.selected_features.len());
        for name in &self.selected_features {
            let j = table
                .column_index(name)
                .ok_or_else(|| Error::MissingFeature { name: name.clone() })?;
            let k = self
                .standardizer
                .position(name)
                .ok_or_else(|| Error::MissingFeature { name: name.clone() })?;
            cols.push((j, self.standardizer.means[k], self.standardizer.stds[k]));
        }
        let mut scores = Vec::with_capacity(table.n_rows());
        for i in 0..table.n_rows() {
            let mut lin = self.intercept;
            for (&(j, mean, std), &beta) in cols.iter().zip(&self.coefficients) {
                lin += beta * (table.value(i, j) - mean) / std;
            }
            scores.push(sigmoid(lin));
        }
        Ok(scores)
    }
}

/// Builds a biomarker from a training table: canonical row order, drop
/// zero-variance columns, standardize, cross-validate the penalty, refit on
/// the full table and keep the nonzero-coefficient features.
pub fn build_biomarker<R: Real>(
    table: &FeatureTable<R>,
    config: &SelectionConfig,
    cohort_id: &str,
    fit_opts: &FitOptions<R>,
) -> Result<(BiomarkerModel<R>, CvCurve<R>)> {
    let table = table.sorted_by_id()?;
    let pos = table.labels().iter().filter(|&&l| l == 1).count();
    let neg = table.n_rows() - pos;
    if pos < 2 || neg < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: pos.min(neg),
        });
    }

    let standardizer = Standardizer::fit(&table);
    if standardizer.n_features() == 0 {
        return Err(Error::InvalidParam {
            what: "every feature column has zero variance".into(),
        });
    }
    let x = standardizer.transform(&table)?;
    let y = table.labels().to_vec();

    let grid = lambda_grid(&x, &y, config.grid_size, config.grid_ratio)?;
    let cv_seed = rng::seed_from_ids(table.ids(), config.seed);
    let curve = cv_select(&x, &y, config.folds, &grid, config.rule, cv_seed, fit_opts)?;

    // warm-started path down to the chosen penalty on the full training table
    let path = fit_path(&x, &y, &grid[..=curve.chosen_index], fit_opts)?;
    let fit = path.last().expect("nonempty path");

    let mut selected_features = Vec::new();
    let mut coefficients = Vec::new();
    for (k, &b) in fit.coefficients.iter().enumerate() {
        if b != R::zero() {
            selected_features.push(standardizer.feature_names[k].clone());
            coefficients.push(b);
        }
    }
    let provenance = Provenance {
        cohort_id: cohort_id.to_string(),
        config_hash: config.hash(),
        seed: config.seed,
        empty_selection: selected_features.is_empty(),
        n_train: table.n_rows(),
        n_features_considered: standardizer.n_features(),
    };
    let model = BiomarkerModel {
        selected_features,
        coefficients,
        intercept: fit.intercept,
        lambda: fit.lambda,
        standardizer,
        provenance,
    };
    Ok((model, curve))
}
