//! Grid resampling: trilinear for intensities, nearest-neighbour for masks.

use crate::error::{Error, Result};
use crate::imaging::volume::{RoiMask, Volume};
use crate::scalar::Real;

/// Resamples a volume/mask pair onto a grid with `target_spacing`.
///
/// The output grid covers the source's physical extent; each axis gets
/// `ceil(extent / target_spacing)` voxels. Voxel centres sit at
/// `(i + 0.5) * spacing`. Intensities are interpolated trilinearly with
/// edge clamping; the mask uses the nearest source voxel so it stays binary.
/// Identical spacing returns the inputs unchanged.
pub fn resample<R: Real>(
    volume: &Volume<R>,
    mask: &RoiMask,
    target_spacing: [f64; 3],
) -> Result<(Volume<R>, RoiMask)> {
    mask.check_aligned(volume)?;
    if target_spacing.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
        return Err(Error::InvalidParam {
            what: format!("target spacing must be positive, got {target_spacing:?}"),
        });
    }
    let spacing = volume.spacing();
    if spacing == target_spacing {
        return Ok((volume.clone(), mask.clone()));
    }

    let dims = volume.dims();
    let mut out_dims = [0usize; 3];
    for a in 0..3 {
        let extent = dims[a] as f64 * spacing[a];
        let q = extent / target_spacing[a];
        // guard against 4.000000000000001-style spill from the division
        let n = (q - q * 1e-12).ceil() as isize;
        if n < 1 {
            return Err(Error::DegenerateExtent);
        }
        out_dims[a] = n as usize;
    }

    // continuous source coordinate of the output voxel centre, per axis
    let src_coord = |a: usize, i: usize| -> f64 {
        (i as f64 + 0.5) * target_spacing[a] / spacing[a] - 0.5
    };

    let mut voxels = Vec::with_capacity(out_dims[0] * out_dims[1] * out_dims[2]);
    let mut flags = Vec::with_capacity(out_dims[0] * out_dims[1] * out_dims[2]);
    for z in 0..out_dims[2] {
        let cz = src_coord(2, z);
        for y in 0..out_dims[1] {
            let cy = src_coord(1, y);
            for x in 0..out_dims[0] {
                let cx = src_coord(0, x);
                voxels.push(trilinear(volume, cx, cy, cz));
                flags.push(nearest(mask, cx, cy, cz));
            }
        }
    }
    let out_vol = Volume::new(out_dims, target_spacing, voxels)?;
    let out_mask = RoiMask::new(out_dims, flags)?;
    Ok((out_vol, out_mask))
}

/// Trilinear interpolation at a continuous coordinate, clamped to the grid.
pub fn trilinear<R: Real>(volume: &Volume<R>, x: f64, y: f64, z: f64) -> R {
    let dims = volume.dims();
    let split = |c: f64, n: usize| -> (usize, usize, f64) {
        let c = c.clamp(0.0, (n - 1) as f64);
        let lo = c.floor() as usize;
        let hi = (lo + 1).min(n - 1);
        (lo, hi, c - lo as f64)
    };
    let (x0, x1, fx) = split(x, dims[0]);
    let (y0, y1, fy) = split(y, dims[1]);
    let (z0, z1, fz) = split(z, dims[2]);
    let fx = R::c(fx);
    let fy = R::c(fy);
    let fz = R::c(fz);
    let one = R::one();

    let lerp = |a: R, b: R, t: R| a * (one - t) + b * t;
    let c00 = lerp(volume.get(x0, y0, z0), volume.get(x1, y0, z0), fx);
    let c10 = lerp(volume.get(x0, y1, z0), volume.get(x1, y1, z0), fx);
    let c01 = lerp(volume.get(x0, y0, z1), volume.get(x1, y0, z1), fx);
    let c11 = lerp(volume.get(x0, y1, z1), volume.get(x1, y1, z1), fx);
    let c0 = lerp(c00, c10, fy);
    let c1 = lerp(c01, c11, fy);
    lerp(c0, c1, fz)
}

fn nearest(mask: &RoiMask, x: f64, y: f64, z: f64) -> bool {
    let dims = mask.dims();
    let pick = |c: f64, n: usize| -> usize {
        (c.round().max(0.0) as usize).min(n - 1)
    };
    mask.get(pick(x, dims[0]), pick(y, dims[1]), pick(z, dims[2]))
}
