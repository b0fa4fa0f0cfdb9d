//! Undecimated (stationary) 3D Haar decomposition.
//!
//! Sub-bands keep the input dims so ROI masks apply unchanged. The low-pass
//! filter is (1/sqrt(2))(1, 1), the high-pass (1/sqrt(2))(1, -1), applied
//! separably in the fixed axis order x, y, z with symmetric boundary
//! extension. Deeper levels use the a-trous scheme: the same taps spaced
//! `2^(level-1)` apart, applied to the previous level's LLL band.

use crate::error::{Error, Result};
use crate::imaging::Volume;
use crate::scalar::Real;

/// Sub-band names in catalog order. Character k is the filter applied along
/// axis k (x, y, z).
pub const SUBBAND_NAMES: [&str; 8] = ["LLL", "LLH", "LHL", "LHH", "HLL", "HLH", "HHL", "HHH"];

/// Single-level decomposition: the 8 named sub-bands of `volume`.
pub fn wavelet_subbands<R: Real>(volume: &Volume<R>) -> Result<Vec<(String, Volume<R>)>> {
    decompose_level(volume, 1)
}

/// Sub-bands for one level of the a-trous cascade (`level >= 1` applies taps
/// spaced `2^(level-1)`; pass the previous level's LLL as the input).
pub fn decompose_level<R: Real>(
    volume: &Volume<R>,
    level: u32,
) -> Result<Vec<(String, Volume<R>)>> {
    let dims = volume.dims();
    for (axis, &len) in dims.iter().enumerate() {
        if len < 2 {
            return Err(Error::AxisTooSmall { axis, len });
        }
    }
    let step = 1usize << (level - 1);

    // separable: filter x once per x-choice, reuse for both y branches, etc.
    let lx = filter_axis(volume, 0, false, step);
    let hx = filter_axis(volume, 0, true, step);
    let mut out = Vec::with_capacity(8);
    for (cx, vx) in [('L', &lx), ('H', &hx)] {
        let ly = filter_axis(vx, 1, false, step);
        let hy = filter_axis(vx, 1, true, step);
        for (cy, vy) in [('L', &ly), ('H', &hy)] {
            for cz in ['L', 'H'] {
                let vz = filter_axis(vy, 2, cz == 'H', step);
                out.push((format!("{cx}{cy}{cz}"), vz));
            }
        }
    }
    // reorder from (x outer, y, z inner) generation into SUBBAND_NAMES order
    out.sort_by_key(|(name, _)| {
        SUBBAND_NAMES
            .iter()
            .position(|n| n == name)
            .expect("known sub-band")
    });
    Ok(out)
}

/// Symmetric (half-sample) extension index.
fn reflect(mut j: isize, n: isize) -> usize {
    loop {
        if j < 0 {
            j = -j - 1;
        } else if j >= n {
            j = 2 * n - 1 - j;
        } else {
            return j as usize;
        }
    }
}

fn filter_axis<R: Real>(volume: &Volume<R>, axis: usize, high: bool, step: usize) -> Volume<R> {
    let dims = volume.dims();
    let t0 = R::c(std::f64::consts::FRAC_1_SQRT_2);
    let t1 = if high { -t0 } else { t0 };
    let n = dims[axis] as isize;
    let get = |x: usize, y: usize, z: usize| -> R {
        let mut c = [x as isize, y as isize, z as isize];
        c[axis] += step as isize;
        let r = reflect(c[axis], n);
        let v0 = volume.get(x, y, z);
        let v1 = match axis {
            0 => volume.get(r, y, z),
            1 => volume.get(x, r, z),
            _ => volume.get(x, y, r),
        };
        t0 * v0 + t1 * v1
    };
    let mut voxels = Vec::with_capacity(volume.len());
    for z in 0..dims[2] {
        for y in 0..dims[1] {
            for x in 0..dims[0] {
                voxels.push(get(x, y, z));
            }
        }
    }
    Volume::new(dims, volume.spacing(), voxels).expect("same-shape output")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_volume_concentrates_in_lll() {
        let c = 3.0;
        let vol = Volume::<f64>::filled([4, 4, 4], [1.0; 3], c).unwrap();
        let bands = wavelet_subbands(&vol).unwrap();
        assert_eq!(bands.len(), 8);
        let expected = c * 2f64.powf(1.5);
        for (name, band) in &bands {
            for &v in band.voxels() {
                if name == "LLL" {
                    assert!((v - expected).abs() < 1e-12, "{name}: {v}");
                } else {
                    assert!(v.abs() < 1e-12, "{name}: {v}");
                }
            }
        }
    }

    #[test]
    fn negation_negates_every_subband() {
        let vol = Volume::<f64>::from_fn([5, 4, 3], [1.0; 3], |x, y, z| {
            ((x * 7 + y * 3 + z * 11) % 5) as f64 - 2.0
        })
        .unwrap();
        let neg = vol.map(|v| -v);
        let a = wavelet_subbands(&vol).unwrap();
        let b = wavelet_subbands(&neg).unwrap();
        for ((na, va), (nb, vb)) in a.iter().zip(&b) {
            assert_eq!(na, nb);
            for (&x, &y) in va.voxels().iter().zip(vb.voxels()) {
                assert_eq!(x, -y);
            }
        }
    }

    #[test]
    fn axis_of_length_one_errors() {
        let vol = Volume::<f64>::filled([4, 1, 4], [1.0; 3], 0.0).unwrap();
        assert!(matches!(
            wavelet_subbands(&vol),
            Err(Error::AxisTooSmall { axis: 1, len: 1 })
        ));
    }

    #[test]
    fn impulse_response_is_the_tap_tensor_product() {
        // unit impulse at the centre of an 8^3 zero volume; brute-force
        // convolution oracle for out[i] = t0*v[i] + t1*v[i+1] per axis
        let dims = [8, 8, 8];
        let c = 4usize;
        let vol = Volume::<f64>::from_fn(dims, [1.0; 3], |x, y, z| {
            if (x, y, z) == (c, c, c) {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        let bands = wavelet_subbands(&vol).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let taps = |hp: bool| [s, if hp { -s } else { s }];
        for (name, band) in &bands {
            let chars: Vec<bool> = name.chars().map(|ch| ch == 'H').collect();
            let tx = taps(chars[0]);
            let ty = taps(chars[1]);
            let tz = taps(chars[2]);
            for z in 0..8 {
                for y in 0..8 {
                    for x in 0..8 {
                        // out[p] picks up the impulse through tap k when
                        // p + k == c, i.e. k = c - p in {0, 1}
                        let w = |p: usize, t: [f64; 2]| -> f64 {
                            match c as isize - p as isize {
                                0 => t[0],
                                1 => t[1],
                                _ => 0.0,
                            }
                        };
                        let expected = w(x, tx) * w(y, ty) * w(z, tz);
                        let got = band.get(x, y, z);
                        assert!(
                            (got - expected).abs() < 1e-14,
                            "{name} at ({x},{y},{z}): {got} vs {expected}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn level_two_uses_dilated_taps() {
        let dims = [8, 8, 8];
        let vol = Volume::<f64>::from_fn(dims, [1.0; 3], |x, _, _| x as f64).unwrap();
        let bands = decompose_level(&vol, 2).unwrap();
        let (_, hll) = bands.iter().find(|(n, _)| n == "HLL").unwrap();
        // high-pass along x with step 2: (v[x] - v[x+2]) / sqrt(2), then two
        // low passes multiply by sqrt(2) each interior voxel
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = (0.0 - 2.0) * s * (2.0 * s) * (2.0 * s);
        assert!((hll.get(3, 3, 3) - expected).abs() < 1e-12);
    }
}
