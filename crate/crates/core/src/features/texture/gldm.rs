//! Gray-level dependence matrix features.

use crate::error::{Error, Result};
use crate::imaging::DiscretizedRoi;
use crate::scalar::{xlog2, Real};

use super::{level_at, neighbours_26};

/// Feature names, lexicographic. Values come back in the same order.
pub const NAMES: [&str; 14] = [
    "dependence_entropy",
    "dependence_non_uniformity",
    "dependence_non_uniformity_normalized",
    "dependence_variance",
    "gray_level_non_uniformity",
    "gray_level_variance",
    "high_gray_level_emphasis",
    "large_dependence_emphasis",
    "large_dependence_high_gray_level_emphasis",
    "large_dependence_low_gray_level_emphasis",
    "low_gray_level_emphasis",
    "small_dependence_emphasis",
    "small_dependence_high_gray_level_emphasis",
    "small_dependence_low_gray_level_emphasis",
];

/// GLDM features over the 26-neighbourhood with dependence tolerance 0.
///
/// The dependence size of a voxel is 1 (itself) plus the number of in-ROI
/// neighbours whose level differs by at most the tolerance, so sizes run
/// 1..=27 and every ROI voxel contributes one matrix entry.
pub fn gldm<R: Real>(droi: &DiscretizedRoi<R>) -> Result<Vec<(&'static str, R)>> {
    gldm_with_tolerance(droi, 0)
}

pub fn gldm_with_tolerance<R: Real>(
    droi: &DiscretizedRoi<R>,
    tolerance: u32,
) -> Result<Vec<(&'static str, R)>> {
    if droi.coords.is_empty() {
        return Err(Error::TextureDegenerate { family: "GLDM" });
    }
    let grid = droi.level_grid();
    let offsets = neighbours_26();
    let ng = droi.ng as usize;
    let nd = offsets.len() + 1; // dependence sizes 1..=27

    let mut counts = vec![0u64; ng * nd];
    for (c, &level) in droi.coords.iter().zip(&droi.levels) {
        let mut dep = 1usize;
        for d in &offsets {
            let l = level_at(
                &grid,
                droi.dims,
                c[0] as isize + d[0],
                c[1] as isize + d[1],
                c[2] as isize + d[2],
            );
            if l > 0 && l.abs_diff(level) <= tolerance {
                dep += 1;
            }
        }
        counts[(level as usize - 1) * nd + (dep - 1)] += 1;
    }
    Ok(features_of_matrix(&counts, ng, nd))
}

fn features_of_matrix<R: Real>(counts: &[u64], ng: usize, nd: usize) -> Vec<(&'static str, R)> {
    let nz: u64 = counts.iter().sum();
    let nz_r = R::from_u64(nz).unwrap();

    let mut row_sums = vec![0u64; ng];
    let mut col_sums = vec![0u64; nd];
    for i in 0..ng {
        for j in 0..nd {
            let c = counts[i * nd + j];
            row_sums[i] += c;
            col_sums[j] += c;
        }
    }
    let mut mu_i = R::zero();
    for (i, &rs) in row_sums.iter().enumerate() {
        mu_i += R::of_usize(i + 1) * R::from_u64(rs).unwrap() / nz_r;
    }
    let mut mu_j = R::zero();
    for (j, &cs) in col_sums.iter().enumerate() {
        mu_j += R::of_usize(j + 1) * R::from_u64(cs).unwrap() / nz_r;
    }

    let mut sde = R::zero();
    let mut lde = R::zero();
    let mut lgle = R::zero();
    let mut hgle = R::zero();
    let mut sdlgle = R::zero();
    let mut sdhgle = R::zero();
    let mut ldlgle = R::zero();
    let mut ldhgle = R::zero();
    let mut glv = R::zero();
    let mut dv = R::zero();
    let mut de = R::zero();
    for i in 0..ng {
        let li = R::of_usize(i + 1);
        let li2 = li * li;
        for j in 0..nd {
            let c = counts[i * nd + j];
            if c == 0 {
                continue;
            }
            let p = R::from_u64(c).unwrap() / nz_r;
            let lj = R::of_usize(j + 1);
            let lj2 = lj * lj;
            sde += p / lj2;
            lde += p * lj2;
            lgle += p / li2;
            hgle += p * li2;
            sdlgle += p / (li2 * lj2);
            sdhgle += p * li2 / lj2;
            ldlgle += p * lj2 / li2;
            ldhgle += p * li2 * lj2;
            let di = li - mu_i;
            glv += p * di * di;
            let dj = lj - mu_j;
            dv += p * dj * dj;
            de -= xlog2(p);
        }
    }

    let gln_raw: u64 = row_sums.iter().map(|&r| r * r).sum();
    let dn_raw: u64 = col_sums.iter().map(|&r| r * r).sum();
    let gln = R::from_u64(gln_raw).unwrap() / nz_r;
    let dn = R::from_u64(dn_raw).unwrap() / nz_r;
    let dnn = R::from_u64(dn_raw).unwrap() / (nz_r * nz_r);

    vec![
        ("dependence_entropy", de),
        ("dependence_non_uniformity", dn),
        ("dependence_non_uniformity_normalized", dnn),
        ("dependence_variance", dv),
        ("gray_level_non_uniformity", gln),
        ("gray_level_variance", glv),
        ("high_gray_level_emphasis", hgle),
        ("large_dependence_emphasis", lde),
        ("large_dependence_high_gray_level_emphasis", ldhgle),
        ("large_dependence_low_gray_level_emphasis", ldlgle),
        ("low_gray_level_emphasis", lgle),
        ("small_dependence_emphasis", sde),
        ("small_dependence_high_gray_level_emphasis", sdhgle),
        ("small_dependence_low_gray_level_emphasis", sdlgle),
    ]
}
