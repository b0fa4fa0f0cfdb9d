//! Neighbourhood gray-tone difference matrix features.

use crate::error::{Error, Result};
use crate::imaging::DiscretizedRoi;
use crate::scalar::Real;

use super::{level_at, neighbours_26};

/// Feature names, lexicographic. Values come back in the same order.
pub const NAMES: [&str; 5] = ["busyness", "coarseness", "complexity", "contrast", "strength"];

/// Coarseness is 1 over a sum that vanishes on flat regions; it is capped
/// here so downstream models always see a finite number.
pub const COARSENESS_CAP: f64 = 1e6;

/// NGTDM features over the 26-neighbourhood.
///
/// A voxel is valid when at least one neighbour lies in the ROI; its
/// gray-tone difference is `|level - mean neighbour level|`. No valid voxel
/// at all makes the matrix degenerate.
pub fn ngtdm<R: Real>(droi: &DiscretizedRoi<R>) -> Result<Vec<(&'static str, R)>> {
    let grid = droi.level_grid();
    let offsets = neighbours_26();
    let ng = droi.ng as usize;

    let mut n_i = vec![0u64; ng];
    let mut s_i = vec![R::zero(); ng];
    for (c, &level) in droi.coords.iter().zip(&droi.levels) {
        let mut sum = R::zero();
        let mut count = 0u32;
        for d in &offsets {
            let l = level_at(
                &grid,
                droi.dims,
                c[0] as isize + d[0],
                c[1] as isize + d[1],
                c[2] as isize + d[2],
            );
            if l > 0 {
                sum += R::from_u32(l).unwrap();
                count += 1;
            }
        }
        if count == 0 {
            continue;
        }
        let mean = sum / R::from_u32(count).unwrap();
        let idx = (level - 1) as usize;
        n_i[idx] += 1;
        s_i[idx] += (R::from_u32(level).unwrap() - mean).abs();
    }

    let nvp: u64 = n_i.iter().sum();
    if nvp == 0 {
        return Err(Error::TextureDegenerate { family: "NGTDM" });
    }
    let nvp_r = R::from_u64(nvp).unwrap();
    let p_i: Vec<R> = n_i
        .iter()
        .map(|&n| R::from_u64(n).unwrap() / nvp_r)
        .collect();
    let present: Vec<usize> = (0..ng).filter(|&i| n_i[i] > 0).collect();
    let ngp = present.len();

    let sum_ps: R = present.iter().map(|&i| p_i[i] * s_i[i]).sum();
    let sum_s: R = present.iter().map(|&i| s_i[i]).sum();

    let coarseness = if sum_ps > R::zero() {
        (R::one() / sum_ps).min(R::c(COARSENESS_CAP))
    } else {
        R::c(COARSENESS_CAP)
    };

    let contrast = if ngp > 1 {
        let mut pairs = R::zero();
        for &i in &present {
            for &j in &present {
                let d = R::of_usize(i + 1) - R::of_usize(j + 1);
                pairs += p_i[i] * p_i[j] * d * d;
            }
        }
        pairs / (R::of_usize(ngp) * R::of_usize(ngp - 1)) * (sum_s / nvp_r)
    } else {
        R::zero()
    };

    let mut busy_den = R::zero();
    let mut complexity = R::zero();
    let mut strength_num = R::zero();
    for &i in &present {
        let li = R::of_usize(i + 1);
        for &j in &present {
            let lj = R::of_usize(j + 1);
            busy_den += (li * p_i[i] - lj * p_i[j]).abs();
            complexity += (li - lj).abs() * (p_i[i] * s_i[i] + p_i[j] * s_i[j])
                / (p_i[i] + p_i[j]);
            let d = li - lj;
            strength_num += (p_i[i] + p_i[j]) * d * d;
        }
    }
    complexity = complexity / nvp_r;
    let busyness = if busy_den > R::zero() {
        sum_ps / busy_den
    } else {
        R::zero()
    };
    let strength = if sum_s > R::zero() {
        strength_num / sum_s
    } else {
        R::zero()
    };

    Ok(vec![
        ("busyness", busyness),
        ("coarseness", coarseness),
        ("complexity", complexity),
        ("contrast", contrast),
        ("strength", strength),
    ])
}
