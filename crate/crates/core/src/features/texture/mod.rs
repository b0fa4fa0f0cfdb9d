//! Gray-level texture matrix families.
//!
//! All five families consume a [`DiscretizedRoi`]: GLCM and GLRLM scan the 13
//! unique 3D directions at distance 1 and average per-direction features;
//! GLSZM, NGTDM and GLDM use the 26-connected neighbourhood.

mod glcm;
mod gldm;
mod glrlm;
mod glszm;
mod ngtdm;

pub use glcm::{glcm, NAMES as GLCM_NAMES};
pub use gldm::{gldm, NAMES as GLDM_NAMES};
pub use glrlm::{glrlm, NAMES as GLRLM_NAMES};
pub use glszm::{glszm, NAMES as GLSZM_NAMES};
pub use ngtdm::{ngtdm, NAMES as NGTDM_NAMES};

/// The 13 unique direction vectors of the 26-neighbourhood (one per
/// antipodal pair), fixed order.
pub const DIRECTIONS_13: [[isize; 3]; 13] = [
    [1, 0, 0],
    [-1, 1, 0],
    [0, 1, 0],
    [1, 1, 0],
    [-1, -1, 1],
    [0, -1, 1],
    [1, -1, 1],
    [-1, 0, 1],
    [0, 0, 1],
    [1, 0, 1],
    [-1, 1, 1],
    [0, 1, 1],
    [1, 1, 1],
];

/// All 26 neighbour offsets.
pub fn neighbours_26() -> Vec<[isize; 3]> {
    let mut out = Vec::with_capacity(26);
    for dz in -1..=1isize {
        for dy in -1..=1isize {
            for dx in -1..=1isize {
                if (dx, dy, dz) != (0, 0, 0) {
                    out.push([dx, dy, dz]);
                }
            }
        }
    }
    out
}

/// Grid lookup returning 0 outside the grid or outside the ROI.
#[inline]
pub(crate) fn level_at(grid: &[u32], dims: [usize; 3], x: isize, y: isize, z: isize) -> u32 {
    if x < 0
        || y < 0
        || z < 0
        || x >= dims[0] as isize
        || y >= dims[1] as isize
        || z >= dims[2] as isize
    {
        return 0;
    }
    grid[x as usize + dims[0] * (y as usize + dims[1] * z as usize)]
}

/// Element-wise average of per-direction feature lists.
pub(crate) fn average_directions<R: crate::scalar::Real>(
    per_direction: Vec<Vec<(&'static str, R)>>,
) -> Vec<(&'static str, R)> {
    let k = R::of_usize(per_direction.len());
    let mut out = per_direction[0].clone();
    for features in per_direction.iter().skip(1) {
        for (acc, (name, v)) in out.iter_mut().zip(features) {
            debug_assert_eq!(acc.0, *name);
            acc.1 += *v;
        }
    }
    for acc in &mut out {
        acc.1 = acc.1 / k;
    }
    out
}
