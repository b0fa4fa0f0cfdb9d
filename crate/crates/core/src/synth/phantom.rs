//! Voxel phantoms: ellipsoidal ROIs over smoothed noise, with a textured
//! lesion insert for positive cases.

use std::path::{Path, PathBuf};

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imaging::{write_raw, RoiMask, Volume};
use crate::rng::{split_seed, stream};
use crate::study::{ManifestEntry, SequencePaths};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhantomSpec {
    pub dims: [usize; 3],
    pub spacing: [f64; 3],
    /// Standard deviation of the white noise before smoothing.
    pub noise_std: f64,
    /// Ellipsoid centre in voxel coordinates.
    pub center: [f64; 3],
    pub semi_axes: [f64; 3],
    /// Intensity added inside the ROI for positive phantoms.
    pub lesion_offset: f64,
    /// Gaussian smoothing sigma (voxels) of the background noise.
    pub background_correlation: f64,
    /// Shorter smoothing sigma for the lesion texture.
    pub lesion_correlation: f64,
    /// Positive phantoms get the lesion insert and label 1.
    pub positive: bool,
    pub seed: u64,
}

impl PhantomSpec {
    pub fn validate(&self) -> Result<()> {
        if self.dims.iter().any(|&d| d < 2) {
            return Err(Error::SpecInvalid {
                reason: format!("phantom dims must be >= 2 per axis, got {:?}", self.dims),
            });
        }
        for a in 0..3 {
            if self.semi_axes[a] <= 0.0 {
                return Err(Error::SpecInvalid {
                    reason: "ellipsoid semi-axes must be positive".into(),
                });
            }
            if self.center[a] - self.semi_axes[a] < 0.0
                || self.center[a] + self.semi_axes[a] > (self.dims[a] - 1) as f64
            {
                return Err(Error::SpecInvalid {
                    reason: format!(
                        "ellipsoid exceeds the grid on axis {a}: centre {} +/- {} vs dim {}",
                        self.center[a], self.semi_axes[a], self.dims[a]
                    ),
                });
            }
        }
        if self.noise_std < 0.0 {
            return Err(Error::SpecInvalid {
                reason: "noise_std must be nonnegative".into(),
            });
        }
        Ok(())
    }
}

/// Generates one phantom. Identical specs (same seed) produce bit-identical
/// voxel data.
pub fn make_phantom(spec: &PhantomSpec) -> Result<(Volume<f64>, RoiMask, u8)> {
    spec.validate()?;
    let mut rng = stream(spec.seed);
    let n = spec.dims[0] * spec.dims[1] * spec.dims[2];

    let mut background: Vec<f64> = (0..n)
        .map(|_| {
            let g: f64 = rng.sample(StandardNormal);
            g * spec.noise_std
        })
        .collect();
    smooth(&mut background, spec.dims, spec.background_correlation);

    let mut flags = vec![false; n];
    let mut idx = 0usize;
    for z in 0..spec.dims[2] {
        for y in 0..spec.dims[1] {
            for x in 0..spec.dims[0] {
                let d: f64 = [x, y, z]
                    .iter()
                    .enumerate()
                    .map(|(a, &c)| {
                        let t = (c as f64 - spec.center[a]) / spec.semi_axes[a];
                        t * t
                    })
                    .sum();
                flags[idx] = d <= 1.0;
                idx += 1;
            }
        }
    }

    if spec.positive {
        let mut lesion: Vec<f64> = (0..n)
            .map(|_| {
                let g: f64 = rng.sample(StandardNormal);
                g * spec.noise_std
            })
            .collect();
        smooth(&mut lesion, spec.dims, spec.lesion_correlation);
        for i in 0..n {
            if flags[i] {
                background[i] += spec.lesion_offset + lesion[i];
            }
        }
    }

    let volume = Volume::new(spec.dims, spec.spacing, background)?;
    let mask = RoiMask::new(spec.dims, flags)?;
    Ok((volume, mask, spec.positive as u8))
}

/// Separable Gaussian blur with edge clamping; sigma in voxels, 0 = identity.
fn smooth(values: &mut [f64], dims: [usize; 3], sigma: f64) {
    if sigma <= 0.0 {
        return;
    }
    let radius = (3.0 * sigma).ceil() as isize;
    let mut kernel = Vec::with_capacity(2 * radius as usize + 1);
    for k in -radius..=radius {
        kernel.push((-(k as f64 * k as f64) / (2.0 * sigma * sigma)).exp());
    }
    let total: f64 = kernel.iter().sum();
    for w in &mut kernel {
        *w /= total;
    }

    let idx = |x: usize, y: usize, z: usize| x + dims[0] * (y + dims[1] * z);
    let mut scratch = values.to_vec();
    for axis in 0..3 {
        let len = dims[axis] as isize;
        for z in 0..dims[2] {
            for y in 0..dims[1] {
                for x in 0..dims[0] {
                    let c = [x as isize, y as isize, z as isize];
                    let mut acc = 0.0;
                    for (ki, w) in kernel.iter().enumerate() {
                        let mut p = c;
                        p[axis] = (c[axis] + ki as isize - radius).clamp(0, len - 1);
                        acc += w * values[idx(p[0] as usize, p[1] as usize, p[2] as usize)];
                    }
                    scratch[idx(x, y, z)] = acc;
                }
            }
        }
        values.copy_from_slice(&scratch);
    }
}

/// A whole phantom cohort written as raw volumes plus a manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhantomCohortSpec {
    pub cohort_id: String,
    pub n: usize,
    #[serde(default = "default_sequences")]
    pub sequences: Vec<String>,
    #[serde(default = "default_dims")]
    pub dims: [usize; 3],
    #[serde(default = "default_spacing")]
    pub spacing: [f64; 3],
    #[serde(default = "default_noise_std")]
    pub noise_std: f64,
    #[serde(default = "default_semi_axes")]
    pub semi_axes: [f64; 3],
    #[serde(default = "default_lesion_offset")]
    pub lesion_offset: f64,
    #[serde(default = "default_background_correlation")]
    pub background_correlation: f64,
    #[serde(default = "default_lesion_correlation")]
    pub lesion_correlation: f64,
    #[serde(default = "default_positive_fraction")]
    pub positive_fraction: f64,
    #[serde(default = "default_start_date")]
    pub start_date: String,
    #[serde(default)]
    pub seed: u64,
}

fn default_sequences() -> Vec<String> {
    vec!["ADC".to_string(), "T2W".to_string()]
}
fn default_dims() -> [usize; 3] {
    [14, 14, 10]
}
fn default_spacing() -> [f64; 3] {
    [1.0, 1.0, 1.5]
}
fn default_noise_std() -> f64 {
    1.0
}
fn default_semi_axes() -> [f64; 3] {
    [4.5, 4.0, 3.0]
}
fn default_lesion_offset() -> f64 {
    2.5
}
fn default_background_correlation() -> f64 {
    1.5
}
fn default_lesion_correlation() -> f64 {
    0.5
}
fn default_positive_fraction() -> f64 {
    0.5
}
fn default_start_date() -> String {
    "2016-01-01".to_string()
}

impl PhantomCohortSpec {
    fn phantom_spec(&self, patient: usize, sequence: usize, positive: bool) -> PhantomSpec {
        PhantomSpec {
            dims: self.dims,
            spacing: self.spacing,
            noise_std: self.noise_std,
            center: [
                (self.dims[0] - 1) as f64 / 2.0,
                (self.dims[1] - 1) as f64 / 2.0,
                (self.dims[2] - 1) as f64 / 2.0,
            ],
            semi_axes: self.semi_axes,
            lesion_offset: self.lesion_offset,
            background_correlation: self.background_correlation,
            lesion_correlation: self.lesion_correlation,
            positive,
            seed: split_seed(split_seed(self.seed, patient as u64), sequence as u64),
        }
    }

    fn label_of(&self, patient: usize) -> u8 {
        // evenly interleaved positives at the requested fraction
        let f = self.positive_fraction;
        let before = (patient as f64 * f).floor();
        let after = ((patient + 1) as f64 * f).floor();
        (after > before) as u8
    }
}

/// Writes every phantom of the cohort under `dir` and returns the manifest
/// path. Per-patient seeds come from counter-based splitting, so generation
/// order and thread count cannot change the data.
pub fn write_phantom_cohort(dir: &Path, spec: &PhantomCohortSpec) -> Result<PathBuf> {
    if spec.n < 4 {
        return Err(Error::SpecInvalid {
            reason: format!("phantom cohort needs n >= 4, got {}", spec.n),
        });
    }
    if spec.sequences.is_empty() {
        return Err(Error::SpecInvalid {
            reason: "phantom cohort needs at least one sequence".into(),
        });
    }
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let start = crate::study::parse_visit_time(&spec.start_date)?;

    let entries: Vec<ManifestEntry> = (0..spec.n)
        .into_par_iter()
        .map(|i| -> Result<ManifestEntry> {
            let id = format!("{}-{:04}", spec.cohort_id, i);
            let label = spec.label_of(i);
            let mut sequences = std::collections::BTreeMap::new();
            for (s, seq) in spec.sequences.iter().enumerate() {
                let phantom = spec.phantom_spec(i, s, label == 1);
                let (volume, mask, _) = make_phantom(&phantom)?;
                let vol_name = format!("{id}_{seq}.f32");
                let mask_name = format!("{id}_{seq}_mask.f32");
                write_raw(&dir.join(&vol_name), &volume)?;
                let mask_vol = Volume::new(
                    mask.dims(),
                    volume.spacing(),
                    mask.flags().iter().map(|&b| b as u8 as f64).collect(),
                )?;
                write_raw(&dir.join(&mask_name), &mask_vol)?;
                sequences.insert(
                    seq.clone(),
                    SequencePaths {
                        volume: vol_name.into(),
                        mask: mask_name.into(),
                    },
                );
            }
            Ok(ManifestEntry {
                id,
                visit_time: (start.date() + chrono::Days::new(i as u64))
                    .format("%Y-%m-%d")
                    .to_string(),
                label,
                sequences,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let manifest_path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(&entries)?;
    std::fs::write(&manifest_path, text).map_err(|e| Error::io(&manifest_path, e))?;
    Ok(manifest_path)
}
