//! Deterministic feature catalog expansion.
//!
//! Column names follow `<sequence>__<filter>__<class>__<feature>`. The same
//! config always expands to the same ordered name list, and extraction emits
//! values in exactly that order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::wavelet::SUBBAND_NAMES;
use crate::features::{firstorder, shape, texture};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterKind {
    Original,
    Wavelet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureClass {
    Shape,
    FirstOrder,
    Glcm,
    Gldm,
    Glrlm,
    Glszm,
    Ngtdm,
}

impl FeatureClass {
    /// Texture + intensity classes in catalog (alphabetical) order.
    pub const IMAGE_CLASSES: [FeatureClass; 6] = [
        FeatureClass::FirstOrder,
        FeatureClass::Glcm,
        FeatureClass::Gldm,
        FeatureClass::Glrlm,
        FeatureClass::Glszm,
        FeatureClass::Ngtdm,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FeatureClass::Shape => "shape",
            FeatureClass::FirstOrder => "firstorder",
            FeatureClass::Glcm => "glcm",
            FeatureClass::Gldm => "gldm",
            FeatureClass::Glrlm => "glrlm",
            FeatureClass::Glszm => "glszm",
            FeatureClass::Ngtdm => "ngtdm",
        }
    }

    pub fn feature_names(self) -> &'static [&'static str] {
        match self {
            FeatureClass::Shape => &shape::NAMES,
            FeatureClass::FirstOrder => &firstorder::NAMES,
            FeatureClass::Glcm => &texture::GLCM_NAMES,
            FeatureClass::Gldm => &texture::GLDM_NAMES,
            FeatureClass::Glrlm => &texture::GLRLM_NAMES,
            FeatureClass::Glszm => &texture::GLSZM_NAMES,
            FeatureClass::Ngtdm => &texture::NGTDM_NAMES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeatureCatalogConfig {
    /// Filter images to extract from.
    #[serde(default = "default_filters")]
    pub filters: Vec<FilterKind>,
    /// Enabled feature classes.
    #[serde(default = "default_classes")]
    pub classes: Vec<FeatureClass>,
    /// Gray levels for discretization.
    #[serde(default = "default_bin_count")]
    pub bin_count: u32,
    /// Depth of the stationary wavelet cascade.
    #[serde(default = "default_wavelet_level")]
    pub wavelet_level: u32,
    /// Isotropic-or-not target spacing in mm; `null` skips resampling.
    #[serde(default = "default_resample_spacing")]
    pub resample_spacing: Option<[f64; 3]>,
}

fn default_filters() -> Vec<FilterKind> {
    vec![FilterKind::Original, FilterKind::Wavelet]
}

fn default_classes() -> Vec<FeatureClass> {
    vec![
        FeatureClass::Shape,
        FeatureClass::FirstOrder,
        FeatureClass::Glcm,
        FeatureClass::Gldm,
        FeatureClass::Glrlm,
        FeatureClass::Glszm,
        FeatureClass::Ngtdm,
    ]
}

fn default_bin_count() -> u32 {
    32
}

fn default_wavelet_level() -> u32 {
    1
}

fn default_resample_spacing() -> Option<[f64; 3]> {
    Some([1.0, 1.0, 1.0])
}

impl Default for FeatureCatalogConfig {
    fn default() -> Self {
        FeatureCatalogConfig {
            filters: default_filters(),
            classes: default_classes(),
            bin_count: default_bin_count(),
            wavelet_level: default_wavelet_level(),
            resample_spacing: default_resample_spacing(),
        }
    }
}

impl FeatureCatalogConfig {
    pub fn validate(&self) -> Result<()> {
        if self.bin_count < 2 {
            return Err(Error::InvalidParam {
                what: format!("bin_count must be >= 2, got {}", self.bin_count),
            });
        }
        if self.wavelet_level < 1 {
            return Err(Error::InvalidParam {
                what: "wavelet_level must be >= 1".into(),
            });
        }
        if self.filters.is_empty() {
            return Err(Error::InvalidParam {
                what: "at least one filter image is required".into(),
            });
        }
        if let Some(sp) = self.resample_spacing {
            if sp.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
                return Err(Error::InvalidParam {
                    what: format!("resample spacing must be positive, got {sp:?}"),
                });
            }
        }
        Ok(())
    }

    pub fn has_class(&self, class: FeatureClass) -> bool {
        self.classes.contains(&class)
    }

    /// Filter-image labels in extraction order.
    pub fn image_labels(&self) -> Vec<String> {
        let mut labels = Vec::new();
        if self.filters.contains(&FilterKind::Original) {
            labels.push("original".to_string());
        }
        if self.filters.contains(&FilterKind::Wavelet) {
            for level in 1..=self.wavelet_level {
                for band in SUBBAND_NAMES {
                    if level == 1 {
                        labels.push(format!("wavelet-{band}"));
                    } else {
                        labels.push(format!("wavelet{level}-{band}"));
                    }
                }
            }
        }
        labels
    }

    /// The full ordered column-name list for the given sequences.
    ///
    /// Sequence names must already be sorted; per sequence the shape block
    /// comes first, then per filter image the enabled classes in alphabetical
    /// order, feature names lexicographic inside each block.
    pub fn expand(&self, sequences: &[String]) -> Vec<String> {
        let images = self.image_labels();
        let mut names = Vec::new();
        for seq in sequences {
            if self.has_class(FeatureClass::Shape) {
                for f in FeatureClass::Shape.feature_names() {
                    names.push(format!("{seq}__original__shape__{f}"));
                }
            }
            for image in &images {
                for class in FeatureClass::IMAGE_CLASSES {
                    if !self.has_class(class) {
                        continue;
                    }
                    for f in class.feature_names() {
                        names.push(format!("{seq}__{image}__{}__{f}", class.tag()));
                    }
                }
            }
        }
        names
    }
}
