//! The radiomic feature engine: filter bank, first-order, shape and the five
//! texture-matrix families, plus the deterministic catalog that names them.

pub mod catalog;
mod extract;
pub mod firstorder;
pub mod shape;
pub mod texture;
pub mod wavelet;

use crate::scalar::Real;

pub use catalog::{FeatureCatalogConfig, FeatureClass, FilterKind};
pub use extract::extract_study;
pub use firstorder::first_order;
pub use shape::shape;
pub use texture::{glcm, gldm, glrlm, glszm, ngtdm};
pub use wavelet::{wavelet_subbands, SUBBAND_NAMES};

/// One study's ordered feature row.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector<R: Real> {
    pub entries: Vec<(String, R)>,
}

impl<R: Real> FeatureVector<R> {
    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn values(&self) -> Vec<R> {
        self.entries.iter().map(|(_, v)| *v).collect()
    }

    pub fn get(&self, name: &str) -> Option<R> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }
}
