//! Volume loading, resampling, cropping and gray-level discretization.

mod crop;
mod discretize;
mod io_nifti;
mod io_raw;
mod resample;
mod volume;

use std::path::Path;

use crate::error::Result;
use crate::scalar::Real;

pub use crop::crop_to_roi;
pub use discretize::discretize;
pub use io_nifti::load_nifti;
pub use io_raw::{load_raw, write_raw};
pub use resample::{resample, trilinear};
pub use volume::{DiscretizedRoi, RoiMask, Volume};

/// Loads a volume from either supported format.
///
/// `.f32`/`.json` paths use the raw format; everything else is read as
/// NIfTI-1 (gzip-transparent).
pub fn load_volume<R: Real>(path: &Path) -> Result<Volume<R>> {
    if io_raw::is_raw_path(path) {
        load_raw(path)
    } else {
        load_nifti(path)
    }
}

/// Loads a mask volume and binarizes it (nonzero means inside).
pub fn load_mask(path: &Path) -> Result<RoiMask> {
    let vol: Volume<f64> = load_volume(path)?;
    Ok(RoiMask::from_volume(&vol))
}
