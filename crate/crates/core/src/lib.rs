//! radsig-core: radiomic biomarker pipeline.
//!
//! The crate covers the full path from masked 3D volumes to cross-cohort
//! evaluation: deterministic feature extraction (first-order, shape, and the
//! GLCM/GLRLM/GLSZM/NGTDM/GLDM texture families over an undecimated Haar
//! filter bank), sparse logistic biomarkers via cross-validated lasso,
//! ROC/AUC with paired DeLong tests, time-based cohort splitting, seeded
//! synthetic cohorts, and the transfer-matrix experiment tying them together.
//!
//! Numeric kernels are generic over [`scalar::Real`] (any `num-traits`
//! float); the aliases below pin the `f64` instantiations the pipeline and
//! file formats use.

pub mod error;
pub mod features;
pub mod imaging;
pub mod pipeline;
pub mod rng;
pub mod scalar;
pub mod selection;
pub mod stats;
pub mod study;
pub mod synth;
pub mod table;

pub use error::{Error, ErrorCategory, Result};

/// 3D scalar volume (f64).
pub type Volume = imaging::Volume<f64>;
/// Binary ROI mask.
pub type RoiMask = imaging::RoiMask;
/// Quantized ROI (f64 bin edges).
pub type DiscretizedRoi = imaging::DiscretizedRoi<f64>;
/// One study's feature row (f64).
pub type FeatureVector = features::FeatureVector<f64>;
/// Patient-by-feature table (f64).
pub type FeatureTable = table::FeatureTable<f64>;
/// Standardization statistics (f64).
pub type Standardizer = selection::Standardizer<f64>;
/// Standardized design matrix (f64).
pub type DesignMatrix = selection::DesignMatrix<f64>;
/// Sparse logistic biomarker (f64).
pub type BiomarkerModel = selection::BiomarkerModel<f64>;
/// Cross-validation curve (f64).
pub type CvCurve = selection::CvCurve<f64>;
/// ROC curve and DeLong components (f64).
pub type RocAnalysis = stats::RocAnalysis<f64>;
/// Paired DeLong comparison (f64).
pub type DeLongResult = stats::DeLongResult<f64>;
/// Cross-cohort AUC grid (f64).
pub type TransferMatrix = stats::TransferMatrix<f64>;
/// One patient's volumes and masks (f64).
pub type Study = study::Study<f64>;
