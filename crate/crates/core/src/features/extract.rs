//! Whole-study feature extraction.
//!
//! Per sequence the pipeline is: tight-crop to the ROI, optionally resample
//! (then tight-crop again), compute shape on the mask, then first-order and
//! texture features on the original image and every wavelet sub-band of the
//! cropped block. Cropping first makes every feature a function of the ROI
//! voxels and geometry alone, so whole-voxel translations cannot change any
//! output.

use crate::error::{Error, Result};
use crate::features::catalog::{FeatureCatalogConfig, FeatureClass};
use crate::features::wavelet::decompose_level;
use crate::features::{firstorder, shape, texture, FeatureVector};
use crate::imaging::{crop_to_roi, discretize, resample, RoiMask, Volume};
use crate::scalar::Real;
use crate::study::Study;

/// Extracts the full feature vector for one study.
pub fn extract_study<R: Real>(
    study: &Study<R>,
    config: &FeatureCatalogConfig,
) -> Result<FeatureVector<R>> {
    config.validate()?;
    study.validate()?;
    let mut entries = Vec::new();
    for (seq, (volume, mask)) in &study.sequences {
        extract_sequence(seq, volume, mask, config, &mut entries)
            .map_err(|e| e.in_context(format!("study '{}', sequence '{seq}'", study.id)))?;
    }
    let vector = FeatureVector { entries };
    let expected = config.expand(&study.sequence_names());
    if vector.names() != expected {
        return Err(Error::CatalogMismatch {
            reason: format!(
                "study '{}' produced {} features, catalog expects {}",
                study.id,
                vector.entries.len(),
                expected.len()
            ),
        });
    }
    for (name, value) in &vector.entries {
        if !value.is_finite() {
            return Err(Error::NonFinite {
                what: format!("feature '{name}' of study '{}'", study.id),
            });
        }
    }
    Ok(vector)
}

fn extract_sequence<R: Real>(
    seq: &str,
    volume: &Volume<R>,
    mask: &RoiMask,
    config: &FeatureCatalogConfig,
    entries: &mut Vec<(String, R)>,
) -> Result<()> {
    mask.check_aligned(volume)?;
    let (mut vol, mut roi) = crop_to_roi(volume, mask, 0)?;
    if let Some(spacing) = config.resample_spacing {
        let (rv, rm) = resample(&vol, &roi, spacing)?;
        if rm.count() == 0 {
            return Err(Error::EmptyMask.in_context("ROI vanished during resampling"));
        }
        let (cv, cm) = crop_to_roi(&rv, &rm, 0)?;
        vol = cv;
        roi = cm;
    }

    if config.has_class(FeatureClass::Shape) {
        let block = shape::shape::<R>(&roi, vol.spacing())?;
        push_block(entries, seq, "original", "shape", &block);
    }

    for (label, image) in filter_images(&vol, config)? {
        extend_image_features(seq, &label, &image, &roi, config, entries)
            .map_err(|e| e.in_context(format!("filter '{label}'")))?;
    }
    Ok(())
}

/// The filter images named by [`FeatureCatalogConfig::image_labels`].
fn filter_images<R: Real>(
    volume: &Volume<R>,
    config: &FeatureCatalogConfig,
) -> Result<Vec<(String, Volume<R>)>> {
    let labels = config.image_labels();
    let mut images = Vec::with_capacity(labels.len());
    if labels.iter().any(|l| l == "original") {
        images.push(("original".to_string(), volume.clone()));
    }
    if labels.iter().any(|l| l.starts_with("wavelet")) {
        let mut input = volume.clone();
        for level in 1..=config.wavelet_level {
            let bands = decompose_level(&input, level)?;
            let mut next_input = None;
            for (band, image) in bands {
                if band == "LLL" {
                    next_input = Some(image.clone());
                }
                let label = if level == 1 {
                    format!("wavelet-{band}")
                } else {
                    format!("wavelet{level}-{band}")
                };
                images.push((label, image));
            }
            input = next_input.expect("LLL band always present");
        }
    }
    debug_assert_eq!(
        images.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>(),
        labels
    );
    Ok(images)
}

fn extend_image_features<R: Real>(
    seq: &str,
    label: &str,
    image: &Volume<R>,
    roi: &RoiMask,
    config: &FeatureCatalogConfig,
    entries: &mut Vec<(String, R)>,
) -> Result<()> {
    let droi = discretize(image, roi, config.bin_count)?;
    for class in FeatureClass::IMAGE_CLASSES {
        if !config.has_class(class) {
            continue;
        }
        let block = match class {
            FeatureClass::FirstOrder => firstorder::from_parts(
                &roi.extract_values(image),
                R::c(image.voxel_volume()),
                &droi.levels,
                config.bin_count,
            ),
            FeatureClass::Glcm => texture::glcm(&droi)?,
            FeatureClass::Gldm => texture::gldm(&droi)?,
            FeatureClass::Glrlm => texture::glrlm(&droi)?,
            FeatureClass::Glszm => texture::glszm(&droi)?,
            FeatureClass::Ngtdm => texture::ngtdm(&droi)?,
            FeatureClass::Shape => unreachable!("shape is not an image class"),
        };
        push_block(entries, seq, label, class.tag(), &block);
    }
    Ok(())
}

fn push_block<R: Real>(
    entries: &mut Vec<(String, R)>,
    seq: &str,
    filter: &str,
    class: &str,
    block: &[(&'static str, R)],
) {
    for (name, value) in block {
        entries.push((format!("{seq}__{filter}__{class}__{name}"), *value));
    }
}
