//! Gray-level run-length matrix features.

use crate::error::{Error, Result};
use crate::imaging::DiscretizedRoi;
use crate::scalar::{xlog2, Real};

use super::{average_directions, level_at, DIRECTIONS_13};

/// Feature names, lexicographic. Values come back in the same order.
pub const NAMES: [&str; 16] = [
    "gray_level_non_uniformity",
    "gray_level_non_uniformity_normalized",
    "gray_level_variance",
    "high_gray_level_run_emphasis",
    "long_run_emphasis",
    "long_run_high_gray_level_emphasis",
    "long_run_low_gray_level_emphasis",
    "low_gray_level_run_emphasis",
    "run_entropy",
    "run_length_non_uniformity",
    "run_length_non_uniformity_normalized",
    "run_percentage",
    "run_variance",
    "short_run_emphasis",
    "short_run_high_gray_level_emphasis",
    "short_run_low_gray_level_emphasis",
];

/// GLRLM features averaged over the 13 directions.
///
/// A run is a maximal straight sequence of in-ROI voxels sharing one gray
/// level along the direction. Every ROI voxel belongs to exactly one run per
/// direction, so the matrix is never empty.
pub fn glrlm<R: Real>(droi: &DiscretizedRoi<R>) -> Result<Vec<(&'static str, R)>> {
    if droi.coords.is_empty() {
        return Err(Error::TextureDegenerate { family: "GLRLM" });
    }
    let grid = droi.level_grid();
    let ng = droi.ng as usize;
    let max_len = *droi.dims.iter().max().unwrap();
    let np = droi.voxel_count() as u64;

    let mut per_direction = Vec::with_capacity(DIRECTIONS_13.len());
    for dir in DIRECTIONS_13 {
        let counts = run_matrix(droi, &grid, dir, max_len);
        per_direction.push(features_of_matrix(&counts, ng, max_len, np));
    }
    Ok(average_directions(per_direction))
}

/// Raw run-length counts: row = level-1, column = run length-1.
pub(crate) fn run_matrix<R: Real>(
    droi: &DiscretizedRoi<R>,
    grid: &[u32],
    dir: [isize; 3],
    max_len: usize,
) -> Vec<u64> {
    let ng = droi.ng as usize;
    let mut counts = vec![0u64; ng * max_len];
    for (c, &level) in droi.coords.iter().zip(&droi.levels) {
        let (x, y, z) = (c[0] as isize, c[1] as isize, c[2] as isize);
        // only count from the run's first voxel
        let before = level_at(grid, droi.dims, x - dir[0], y - dir[1], z - dir[2]);
        if before == level {
            continue;
        }
        let mut len = 1usize;
        let (mut nx, mut ny, mut nz) = (x + dir[0], y + dir[1], z + dir[2]);
        while level_at(grid, droi.dims, nx, ny, nz) == level {
            len += 1;
            nx += dir[0];
            ny += dir[1];
            nz += dir[2];
        }
        counts[(level as usize - 1) * max_len + (len - 1)] += 1;
    }
    counts
}

fn features_of_matrix<R: Real>(
    counts: &[u64],
    ng: usize,
    max_len: usize,
    np: u64,
) -> Vec<(&'static str, R)> {
    let nr: u64 = counts.iter().sum();
    let nr_r = R::from_u64(nr).unwrap();

    let mut row_sums = vec![0u64; ng];
    let mut col_sums = vec![0u64; max_len];
    for i in 0..ng {
        for j in 0..max_len {
            let c = counts[i * max_len + j];
            row_sums[i] += c;
            col_sums[j] += c;
        }
    }

    let mut mu_i = R::zero();
    let mut mu_j = R::zero();
    for (i, &rs) in row_sums.iter().enumerate() {
        mu_i += R::of_usize(i + 1) * R::from_u64(rs).unwrap() / nr_r;
    }
    for (j, &cs) in col_sums.iter().enumerate() {
        mu_j += R::of_usize(j + 1) * R::from_u64(cs).unwrap() / nr_r;
    }

    let mut sre = R::zero();
    let mut lre = R::zero();
    let mut lglre = R::zero();
    let mut hglre = R::zero();
    let mut srlgle = R::zero();
    let mut srhgle = R::zero();
    let mut lrlgle = R::zero();
    let mut lrhgle = R::zero();
    let mut glv = R::zero();
    let mut rv = R::zero();
    let mut re = R::zero();
    for i in 0..ng {
        let li = R::of_usize(i + 1);
        let li2 = li * li;
        for j in 0..max_len {
            let c = counts[i * max_len + j];
            if c == 0 {
                continue;
            }
            let p = R::from_u64(c).unwrap() / nr_r;
            let lj = R::of_usize(j + 1);
            let lj2 = lj * lj;
            sre += p / lj2;
            lre += p * lj2;
            lglre += p / li2;
            hglre += p * li2;
            srlgle += p / (li2 * lj2);
            srhgle += p * li2 / lj2;
            lrlgle += p * lj2 / li2;
            lrhgle += p * li2 * lj2;
            let di = li - mu_i;
            glv += p * di * di;
            let dj = lj - mu_j;
            rv += p * dj * dj;
            re -= xlog2(p);
        }
    }

    let gln_raw: u64 = row_sums.iter().map(|&r| r * r).sum();
    let rln_raw: u64 = col_sums.iter().map(|&r| r * r).sum();
    let gln = R::from_u64(gln_raw).unwrap() / nr_r;
    let glnn = R::from_u64(gln_raw).unwrap() / (nr_r * nr_r);
    let rln = R::from_u64(rln_raw).unwrap() / nr_r;
    let rlnn = R::from_u64(rln_raw).unwrap() / (nr_r * nr_r);
    let rp = nr_r / R::from_u64(np).unwrap();

    vec![
        ("gray_level_non_uniformity", gln),
        ("gray_level_non_uniformity_normalized", glnn),
        ("gray_level_variance", glv),
        ("high_gray_level_run_emphasis", hglre),
        ("long_run_emphasis", lre),
        ("long_run_high_gray_level_emphasis", lrhgle),
        ("long_run_low_gray_level_emphasis", lrlgle),
        ("low_gray_level_run_emphasis", lglre),
        ("run_entropy", re),
        ("run_length_non_uniformity", rln),
        ("run_length_non_uniformity_normalized", rlnn),
        ("run_percentage", rp),
        ("run_variance", rv),
        ("short_run_emphasis", sre),
        ("short_run_high_gray_level_emphasis", srhgle),
        ("short_run_low_gray_level_emphasis", srlgle),
    ]
}
