//! Fixed-bin-count gray-level discretization.

use crate::error::{Error, Result};
use crate::imaging::volume::{DiscretizedRoi, RoiMask, Volume};
use crate::scalar::Real;

/// Quantizes ROI intensities to `bin_count` levels over `[min, max]`.
///
/// `level = min(floor((v - min) / w) + 1, ng)` with `w = (max - min) / ng`.
/// A flat ROI (max == min) maps every voxel to level 1. The fixed-bin-count
/// scheme makes levels invariant under positive affine intensity transforms.
pub fn discretize<R: Real>(
    volume: &Volume<R>,
    mask: &RoiMask,
    bin_count: u32,
) -> Result<DiscretizedRoi<R>> {
    mask.check_aligned(volume)?;
    if bin_count < 2 {
        return Err(Error::InvalidParam {
            what: format!("bin_count must be >= 2, got {bin_count}"),
        });
    }
    let coords = mask.coords();
    let values = mask.extract_values(volume);
    let mut min = values[0];
    let mut max = values[0];
    for &v in &values[1..] {
        if v < min {
            min = v;
        }
        if v > max {
            max = v;
        }
    }

    if max == min {
        return Ok(DiscretizedRoi {
            dims: mask.dims(),
            coords,
            levels: vec![1; values.len()],
            ng: bin_count,
            bin_edges: Vec::new(),
        });
    }

    let ng = R::from_u32(bin_count).unwrap();
    let width = (max - min) / ng;
    let levels = values
        .iter()
        .map(|&v| {
            let raw = ((v - min) / width).floor();
            let level = raw.to_u32().unwrap_or(bin_count - 1) + 1;
            level.min(bin_count)
        })
        .collect();
    let bin_edges = (0..=bin_count)
        .map(|k| min + width * R::from_u32(k).unwrap())
        .collect();

    Ok(DiscretizedRoi {
        dims: mask.dims(),
        coords,
        levels,
        ng: bin_count,
        bin_edges,
    })
}
