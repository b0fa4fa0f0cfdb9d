//! Per-feature standardization fitted on training data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::table::FeatureTable;

/// Columns whose standard deviation falls at or below this (relative to the
/// mean magnitude) are treated as zero-variance and dropped.
const ZERO_VARIANCE_TOL: f64 = 1e-12;

/// Training-set column means and standard deviations.
///
/// Zero-variance columns are dropped rather than rejected: flat ROIs produce
/// them routinely. Applying a standardizer to its own training table yields
/// columns with mean 0 and standard deviation 1 (population convention).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer<R: Real> {
    pub feature_names: Vec<String>,
    pub means: Vec<R>,
    pub stds: Vec<R>,
    pub dropped: Vec<String>,
}

/// Standardized design matrix, column-major for coordinate access.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix<R: Real> {
    pub n: usize,
    pub p: usize,
    data: Vec<R>,
}

impl<R: Real> DesignMatrix<R> {
    pub fn from_columns(n: usize, columns: Vec<Vec<R>>) -> Self {
        let p = columns.len();
        let mut data = Vec::with_capacity(n * p);
        for col in columns {
            assert_eq!(col.len(), n);
            data.extend(col);
        }
        DesignMatrix { n, p, data }
    }

    #[inline]
    pub fn column(&self, j: usize) -> &[R] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    pub fn row_dot(&self, i: usize, beta: &[R]) -> R {
        let mut acc = R::zero();
        for (j, &b) in beta.iter().enumerate() {
            if b != R::zero() {
                acc += self.column(j)[i] * b;
            }
        }
        acc
    }
}

impl<R: Real> Standardizer<R> {
    /// Fits means and stds on the table, dropping zero-variance columns.
    pub fn fit(table: &FeatureTable<R>) -> Self {
        let n = R::of_usize(table.n_rows());
        let mut feature_names = Vec::new();
        let mut means = Vec::new();
        let mut stds = Vec::new();
        let mut dropped = Vec::new();
        for (j, name) in table.feature_names().iter().enumerate() {
            let col = table.column(j);
            let mean = col.iter().copied().sum::<R>() / n;
            let var = col.iter().map(|&v| (v - mean) * (v - mean)).sum::<R>() / n;
            let std = var.sqrt();
            let tol = R::c(ZERO_VARIANCE_TOL) * R::one().max(mean.abs());
            if std <= tol {
                dropped.push(name.clone());
            } else {
                feature_names.push(name.clone());
                means.push(mean);
                stds.push(std);
            }
        }
        Standardizer {
            feature_names,
            means,
            stds,
            dropped,
        }
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    /// Index of a feature inside the retained set.
    pub fn position(&self, name: &str) -> Option<usize> {
        self.feature_names.iter().position(|n| n == name)
    }

    /// Standardizes the retained columns of `table` into a design matrix.
    pub fn transform(&self, table: &FeatureTable<R>) -> Result<DesignMatrix<R>> {
        let n = table.n_rows();
        let mut columns = Vec::with_capacity(self.n_features());
        for (k, name) in self.feature_names.iter().enumerate() {
            let j = table
                .column_index(name)
                .ok_or_else(|| Error::MissingFeature { name: name.clone() })?;
            let mean = self.means[k];
            let std = self.stds[k];
            let col: Vec<R> = table.column(j).iter().map(|&v| (v - mean) / std).collect();
            columns.push(col);
        }
        Ok(DesignMatrix::from_columns(n, columns))
    }

    /// Standardizes one feature value by name.
    pub fn standardize_value(&self, name: &str, value: R) -> Option<R> {
        let k = self.position(name)?;
        Some((value - self.means[k]) / self.stds[k])
    }
}
