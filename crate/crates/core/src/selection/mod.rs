//! Sparse logistic biomarker construction: standardization, the lasso path,
//! cross-validated penalty selection, and signature scoring.

mod biomarker;
mod cv;
mod lasso;
mod standardize;

pub use biomarker::{build_biomarker, BiomarkerModel, Provenance, SelectionConfig};
pub use cv::{cv_select, log_loss, stratified_folds, CvCurve, SelectionRule};
pub use lasso::{
    fit_path, kkt_residual, lambda_grid, lambda_max, lasso_logistic_fit, objective, sigmoid,
    smooth_gradient, FitOptions, LassoFit,
};
pub use standardize::{DesignMatrix, Standardizer};
