//! ROI bounding-box cropping.

use crate::error::Result;
use crate::imaging::volume::{RoiMask, Volume};
use crate::scalar::Real;

/// Crops volume and mask to the mask's tight bounding box expanded by
/// `margin` voxels, clamped to the grid. ROI voxel values are untouched.
pub fn crop_to_roi<R: Real>(
    volume: &Volume<R>,
    mask: &RoiMask,
    margin: usize,
) -> Result<(Volume<R>, RoiMask)> {
    mask.check_aligned(volume)?;
    let dims = mask.dims();
    let mut lo = [usize::MAX; 3];
    let mut hi = [0usize; 3];
    for c in mask.coords() {
        for a in 0..3 {
            lo[a] = lo[a].min(c[a]);
            hi[a] = hi[a].max(c[a]);
        }
    }
    for a in 0..3 {
        lo[a] = lo[a].saturating_sub(margin);
        hi[a] = (hi[a] + margin).min(dims[a] - 1);
    }
    let out_dims = [hi[0] - lo[0] + 1, hi[1] - lo[1] + 1, hi[2] - lo[2] + 1];
    let n = out_dims[0] * out_dims[1] * out_dims[2];
    let mut voxels = Vec::with_capacity(n);
    let mut flags = Vec::with_capacity(n);
    for z in lo[2]..=hi[2] {
        for y in lo[1]..=hi[1] {
            for x in lo[0]..=hi[0] {
                voxels.push(volume.get(x, y, z));
                flags.push(mask.get(x, y, z));
            }
        }
    }
    let out_vol = Volume::new(out_dims, volume.spacing(), voxels)?;
    let out_mask = RoiMask::new(out_dims, flags)?;
    Ok((out_vol, out_mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn single_voxel_with_margin_one_gives_3x3x3() {
        let dims = [5, 5, 5];
        let vol = Volume::<f64>::from_fn(dims, [1.0; 3], |x, y, z| (x + y + z) as f64).unwrap();
        let mut flags = vec![false; 125];
        flags[2 + 5 * (2 + 5 * 2)] = true;
        let mask = RoiMask::new(dims, flags).unwrap();
        let (cv, cm) = crop_to_roi(&vol, &mask, 1).unwrap();
        assert_eq!(cv.dims(), [3, 3, 3]);
        assert_eq!(cm.count(), 1);
        assert_eq!(cv.get(1, 1, 1), 6.0);
    }

    #[test]
    fn full_mask_is_identity() {
        let dims = [4, 3, 2];
        let vol = Volume::<f64>::from_fn(dims, [1.0; 3], |x, y, z| (x * y + z) as f64).unwrap();
        let mask = RoiMask::full(dims);
        let (cv, cm) = crop_to_roi(&vol, &mask, 0).unwrap();
        assert_eq!(cv, vol);
        assert_eq!(cm, mask);
    }

    #[test]
    fn opposite_corners_span_the_whole_grid() {
        let dims = [10, 10, 10];
        let vol = Volume::<f64>::filled(dims, [1.0; 3], 0.0).unwrap();
        let mut flags = vec![false; 1000];
        flags[0] = true;
        flags[9 + 10 * (9 + 10 * 9)] = true;
        let mask = RoiMask::new(dims, flags).unwrap();
        let (cv, _) = crop_to_roi(&vol, &mask, 0).unwrap();
        assert_eq!(cv.dims(), [10, 10, 10]);
    }

    #[test]
    fn empty_mask_errors() {
        let dims = [3, 3, 3];
        let vol = Volume::<f64>::filled(dims, [1.0; 3], 0.0).unwrap();
        let mask = RoiMask::new(dims, vec![false; 27]).unwrap();
        assert!(matches!(crop_to_roi(&vol, &mask, 0), Err(Error::EmptyMask)));
    }
}
