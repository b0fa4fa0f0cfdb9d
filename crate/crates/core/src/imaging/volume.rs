//! 3D scalar grids and binary region-of-interest masks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A 3D scalar volume with voxel spacing in millimetres.
///
/// Voxels are stored x-fastest: index `x + nx*(y + ny*z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Volume<R: Real> {
    dims: [usize; 3],
    spacing: [f64; 3],
    voxels: Vec<R>,
}

impl<R: Real> Volume<R> {
    pub fn new(dims: [usize; 3], spacing: [f64; 3], voxels: Vec<R>) -> Result<Self> {
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidParam {
                what: format!("volume dims must be positive, got {dims:?}"),
            });
        }
        if spacing.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
            return Err(Error::InvalidParam {
                what: format!("voxel spacing must be positive and finite, got {spacing:?}"),
            });
        }
        let expected = dims[0] * dims[1] * dims[2];
        if voxels.len() != expected {
            return Err(Error::InvalidParam {
                what: format!("voxel payload holds {} values, dims need {expected}", voxels.len()),
            });
        }
        if voxels.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "volume voxels".into(),
            });
        }
        Ok(Volume { dims, spacing, voxels })
    }

    /// Constant-filled volume, mainly for tests and phantoms.
    pub fn filled(dims: [usize; 3], spacing: [f64; 3], value: R) -> Result<Self> {
        let n = dims[0] * dims[1] * dims[2];
        Self::new(dims, spacing, vec![value; n])
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.spacing
    }

    /// Physical volume of one voxel in mm^3.
    pub fn voxel_volume(&self) -> f64 {
        self.spacing[0] * self.spacing[1] * self.spacing[2]
    }

    pub fn len(&self) -> usize {
        self.voxels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.voxels.is_empty()
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize, z: usize) -> usize {
        x + self.dims[0] * (y + self.dims[1] * z)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> R {
        self.voxels[self.index(x, y, z)]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, z: usize, v: R) {
        let i = self.index(x, y, z);
        self.voxels[i] = v;
    }

    pub fn voxels(&self) -> &[R] {
        &self.voxels
    }

    pub fn voxels_mut(&mut self) -> &mut [R] {
        &mut self.voxels
    }

    pub fn into_voxels(self) -> Vec<R> {
        self.voxels
    }

    /// Builds a same-shape volume from a per-coordinate function.
    pub fn from_fn(
        dims: [usize; 3],
        spacing: [f64; 3],
        mut f: impl FnMut(usize, usize, usize) -> R,
    ) -> Result<Self> {
        let mut voxels = Vec::with_capacity(dims[0] * dims[1] * dims[2]);
        for z in 0..dims[2] {
            for y in 0..dims[1] {
                for x in 0..dims[0] {
                    voxels.push(f(x, y, z));
                }
            }
        }
        Self::new(dims, spacing, voxels)
    }

    pub fn map(&self, f: impl Fn(R) -> R) -> Self {
        Volume {
            dims: self.dims,
            spacing: self.spacing,
            voxels: self.voxels.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// Binary mask aligned to a [`Volume`] grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoiMask {
    dims: [usize; 3],
    inside: Vec<bool>,
    count: usize,
}

impl RoiMask {
    pub fn new(dims: [usize; 3], inside: Vec<bool>) -> Result<Self> {
        let expected = dims[0] * dims[1] * dims[2];
        if inside.len() != expected {
            return Err(Error::InvalidParam {
                what: format!("mask payload holds {} flags, dims need {expected}", inside.len()),
            });
        }
        let count = inside.iter().filter(|&&b| b).count();
        Ok(RoiMask { dims, inside, count })
    }

    /// Mask marking every voxel with a nonzero value in `volume`.
    pub fn from_volume<R: Real>(volume: &Volume<R>) -> Self {
        let inside: Vec<bool> = volume.voxels().iter().map(|v| *v != R::zero()).collect();
        let count = inside.iter().filter(|&&b| b).count();
        RoiMask {
            dims: volume.dims(),
            inside,
            count,
        }
    }

    pub fn full(dims: [usize; 3]) -> Self {
        let n = dims[0] * dims[1] * dims[2];
        RoiMask {
            dims,
            inside: vec![true; n],
            count: n,
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    /// Number of voxels inside the ROI.
    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize, z: usize) -> usize {
        x + self.dims[0] * (y + self.dims[1] * z)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> bool {
        self.inside[self.index(x, y, z)]
    }

    pub fn flags(&self) -> &[bool] {
        &self.inside
    }

    /// Coordinates of all ROI voxels in x-fastest scan order.
    pub fn coords(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::with_capacity(self.count);
        let mut i = 0;
        for z in 0..self.dims[2] {
            for y in 0..self.dims[1] {
                for x in 0..self.dims[0] {
                    if self.inside[i] {
                        out.push([x, y, z]);
                    }
                    i += 1;
                }
            }
        }
        out
    }

    /// Checks this mask is aligned to `volume`, then asserts a non-empty ROI.
    pub fn check_aligned<R: Real>(&self, volume: &Volume<R>) -> Result<()> {
        if self.dims != volume.dims() {
            return Err(Error::DimsMismatch {
                expected: volume.dims(),
                actual: self.dims,
            });
        }
        if self.count == 0 {
            return Err(Error::EmptyMask);
        }
        Ok(())
    }

    /// ROI voxel values of `volume` in scan order.
    pub fn extract_values<R: Real>(&self, volume: &Volume<R>) -> Vec<R> {
        self.inside
            .iter()
            .zip(volume.voxels())
            .filter_map(|(&inside, &v)| inside.then_some(v))
            .collect()
    }
}

/// ROI voxels quantized to integer gray levels `1..=ng`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedRoi<R: Real> {
    /// Grid dims the coordinates refer to.
    pub dims: [usize; 3],
    /// ROI voxel coordinates, x-fastest scan order.
    pub coords: Vec<[usize; 3]>,
    /// Gray level per ROI voxel, parallel to `coords`.
    pub levels: Vec<u32>,
    /// Number of gray levels.
    pub ng: u32,
    /// Bin edges that produced the levels (ng + 1 edges, strictly increasing),
    /// empty for the flat-ROI degenerate case.
    pub bin_edges: Vec<R>,
}

impl<R: Real> DiscretizedRoi<R> {
    /// Dense level grid with 0 marking voxels outside the ROI.
    pub fn level_grid(&self) -> Vec<u32> {
        let mut grid = vec![0u32; self.dims[0] * self.dims[1] * self.dims[2]];
        for (c, &l) in self.coords.iter().zip(&self.levels) {
            grid[c[0] + self.dims[0] * (c[1] + self.dims[1] * c[2])] = l;
        }
        grid
    }

    pub fn voxel_count(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub(crate) struct RawHeader {
    pub dims: [usize; 3],
    pub spacing: [f64; 3],
}
