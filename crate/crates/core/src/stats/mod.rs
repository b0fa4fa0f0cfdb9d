//! Cohort splitting, ROC/AUC, DeLong tests and the transfer matrix.

mod delong;
mod roc;
mod split;
mod transfer;

pub use delong::{delong_paired, DeLongResult};
pub use roc::{auc, roc_analysis, trapezoid_area, RocAnalysis};
pub use split::{split_by_time, split_table, CohortSplit};
pub use transfer::{transfer_matrix, PairTest, TransferMatrix};
