//! Gray-level size-zone matrix features.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::imaging::DiscretizedRoi;
use crate::scalar::{xlog2, Real};

use super::neighbours_26;

/// Feature names, lexicographic. Values come back in the same order.
pub const NAMES: [&str; 16] = [
    "gray_level_non_uniformity",
    "gray_level_non_uniformity_normalized",
    "gray_level_variance",
    "high_gray_level_zone_emphasis",
    "large_area_emphasis",
    "large_area_high_gray_level_emphasis",
    "large_area_low_gray_level_emphasis",
    "low_gray_level_zone_emphasis",
    "size_zone_non_uniformity",
    "size_zone_non_uniformity_normalized",
    "small_area_emphasis",
    "small_area_high_gray_level_emphasis",
    "small_area_low_gray_level_emphasis",
    "zone_entropy",
    "zone_percentage",
    "zone_variance",
];

/// GLSZM features from 26-connected equal-level zones.
pub fn glszm<R: Real>(droi: &DiscretizedRoi<R>) -> Result<Vec<(&'static str, R)>> {
    let zones = zones_of(droi);
    if zones.is_empty() {
        return Err(Error::TextureDegenerate { family: "GLSZM" });
    }
    Ok(features_of_zones(&zones, droi.voxel_count() as u64))
}

/// Connected components of equal gray level; returns (level, size) counts.
pub(crate) fn zones_of<R: Real>(droi: &DiscretizedRoi<R>) -> BTreeMap<(u32, usize), u64> {
    let grid = droi.level_grid();
    let dims = droi.dims;
    let offsets = neighbours_26();
    let mut visited = vec![false; grid.len()];
    let mut zones: BTreeMap<(u32, usize), u64> = BTreeMap::new();
    let mut stack = Vec::new();
    for c in &droi.coords {
        let start = c[0] + dims[0] * (c[1] + dims[1] * c[2]);
        if visited[start] {
            continue;
        }
        let level = grid[start];
        visited[start] = true;
        stack.push(*c);
        let mut size = 0usize;
        while let Some([x, y, z]) = stack.pop() {
            size += 1;
            for d in &offsets {
                let nx = x as isize + d[0];
                let ny = y as isize + d[1];
                let nz = z as isize + d[2];
                if nx < 0
                    || ny < 0
                    || nz < 0
                    || nx >= dims[0] as isize
                    || ny >= dims[1] as isize
                    || nz >= dims[2] as isize
                {
                    continue;
                }
                let ni = nx as usize + dims[0] * (ny as usize + dims[1] * nz as usize);
                if !visited[ni] && grid[ni] == level {
                    visited[ni] = true;
                    stack.push([nx as usize, ny as usize, nz as usize]);
                }
            }
        }
        *zones.entry((level, size)).or_insert(0) += 1;
    }
    zones
}

fn features_of_zones<R: Real>(
    zones: &BTreeMap<(u32, usize), u64>,
    np: u64,
) -> Vec<(&'static str, R)> {
    let nz: u64 = zones.values().sum();
    let nz_r = R::from_u64(nz).unwrap();

    let mut row_sums: BTreeMap<u32, u64> = BTreeMap::new();
    let mut col_sums: BTreeMap<usize, u64> = BTreeMap::new();
    for (&(level, size), &count) in zones {
        *row_sums.entry(level).or_insert(0) += count;
        *col_sums.entry(size).or_insert(0) += count;
    }

    let mut mu_i = R::zero();
    for (&level, &c) in &row_sums {
        mu_i += R::from_u32(level).unwrap() * R::from_u64(c).unwrap() / nz_r;
    }
    let mut mu_s = R::zero();
    for (&size, &c) in &col_sums {
        mu_s += R::of_usize(size) * R::from_u64(c).unwrap() / nz_r;
    }

    let mut sae = R::zero();
    let mut lae = R::zero();
    let mut lgl = R::zero();
    let mut hgl = R::zero();
    let mut salgle = R::zero();
    let mut sahgle = R::zero();
    let mut lalgle = R::zero();
    let mut lahgle = R::zero();
    let mut glv = R::zero();
    let mut zv = R::zero();
    let mut ze = R::zero();
    for (&(level, size), &count) in zones {
        let p = R::from_u64(count).unwrap() / nz_r;
        let li = R::from_u32(level).unwrap();
        let li2 = li * li;
        let sj = R::of_usize(size);
        let sj2 = sj * sj;
        sae += p / sj2;
        lae += p * sj2;
        lgl += p / li2;
        hgl += p * li2;
        salgle += p / (li2 * sj2);
        sahgle += p * li2 / sj2;
        lalgle += p * sj2 / li2;
        lahgle += p * li2 * sj2;
        let di = li - mu_i;
        glv += p * di * di;
        let ds = sj - mu_s;
        zv += p * ds * ds;
        ze -= xlog2(p);
    }

    let gln_raw: u64 = row_sums.values().map(|&r| r * r).sum();
    let szn_raw: u64 = col_sums.values().map(|&r| r * r).sum();
    let gln = R::from_u64(gln_raw).unwrap() / nz_r;
    let glnn = R::from_u64(gln_raw).unwrap() / (nz_r * nz_r);
    let szn = R::from_u64(szn_raw).unwrap() / nz_r;
    let sznn = R::from_u64(szn_raw).unwrap() / (nz_r * nz_r);
    let zp = nz_r / R::from_u64(np).unwrap();

    vec![
        ("gray_level_non_uniformity", gln),
        ("gray_level_non_uniformity_normalized", glnn),
        ("gray_level_variance", glv),
        ("high_gray_level_zone_emphasis", hgl),
        ("large_area_emphasis", lae),
        ("large_area_high_gray_level_emphasis", lahgle),
        ("large_area_low_gray_level_emphasis", lalgle),
        ("low_gray_level_zone_emphasis", lgl),
        ("size_zone_non_uniformity", szn),
        ("size_zone_non_uniformity_normalized", sznn),
        ("small_area_emphasis", sae),
        ("small_area_high_gray_level_emphasis", sahgle),
        ("small_area_low_gray_level_emphasis", salgle),
        ("zone_entropy", ze),
        ("zone_percentage", zp),
        ("zone_variance", zv),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imaging::{discretize, RoiMask, Volume};

    fn feature(features: &[(&'static str, f64)], name: &str) -> f64 {
        features.iter().find(|(n, _)| *n == name).unwrap().1
    }

    fn droi_of(dims: [usize; 3], values: &[f64], ng: u32) -> DiscretizedRoi<f64> {
        let vol = Volume::new(dims, [1.0; 3], values.to_vec()).unwrap();
        discretize(&vol, &RoiMask::full(dims), ng).unwrap()
    }

    #[test]
    fn names_are_sorted() {
        let mut sorted = NAMES;
        sorted.sort_unstable();
        assert_eq!(sorted, NAMES);
    }

    #[test]
    fn flat_cube_is_one_zone_of_27() {
        let droi = droi_of([3, 3, 3], &[4.0; 27], 8);
        let zones = zones_of(&droi);
        assert_eq!(zones.len(), 1);
        assert_eq!(zones.get(&(1, 27)), Some(&1));
        let f = glszm(&droi).unwrap();
        assert!((feature(&f, "zone_percentage") - 1.0 / 27.0).abs() < 1e-15);
        assert_eq!(feature(&f, "zone_entropy"), 0.0);
        assert!((feature(&f, "large_area_emphasis") - 27.0 * 27.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_voxels_merge_through_26_connectivity() {
        // two voxels touching only at a corner share a zone under
        // 26-connectivity
        let mut values = vec![0.0; 8];
        values[0] = 1.0; // (0,0,0)
        values[7] = 1.0; // (1,1,1)
        let droi = droi_of([2, 2, 2], &values, 2);
        let zones = zones_of(&droi);
        assert_eq!(zones.get(&(2, 2)), Some(&1));
        assert_eq!(zones.get(&(1, 6)), Some(&1));
    }

    #[test]
    fn split_levels_split_zones() {
        // left half level 1, right half level 2 -> two zones
        let values = vec![0.0, 0.0, 1.0, 1.0];
        let droi = droi_of([4, 1, 1], &values, 2);
        let zones = zones_of(&droi);
        assert_eq!(zones.len(), 2);
        assert_eq!(zones.get(&(1, 2)), Some(&1));
        assert_eq!(zones.get(&(2, 2)), Some(&1));
    }
}
