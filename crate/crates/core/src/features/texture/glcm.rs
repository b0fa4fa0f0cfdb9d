//! Gray-level co-occurrence matrix features.

use crate::error::{Error, Result};
use crate::imaging::DiscretizedRoi;
use crate::scalar::{xlog2, Real};

use super::{average_directions, level_at, DIRECTIONS_13};

/// Feature names, lexicographic. Values come back in the same order.
pub const NAMES: [&str; 19] = [
    "autocorrelation",
    "cluster_prominence",
    "cluster_shade",
    "cluster_tendency",
    "contrast",
    "correlation",
    "difference_average",
    "difference_entropy",
    "difference_variance",
    "imc1",
    "imc2",
    "inverse_difference",
    "inverse_difference_moment",
    "inverse_variance",
    "joint_average",
    "joint_energy",
    "joint_entropy",
    "maximum_probability",
    "sum_entropy",
];

/// GLCM features averaged over the 13 directions at distance 1.
///
/// Each direction builds a symmetric, normalized co-occurrence matrix over
/// in-ROI voxel pairs. Directions with no in-ROI pair are skipped; if every
/// direction is empty the matrix is degenerate.
pub fn glcm<R: Real>(droi: &DiscretizedRoi<R>) -> Result<Vec<(&'static str, R)>> {
    let grid = droi.level_grid();
    let ng = droi.ng as usize;
    let mut per_direction = Vec::new();
    for dir in DIRECTIONS_13 {
        let mut counts = vec![0u64; ng * ng];
        let mut total = 0u64;
        for (c, &la) in droi.coords.iter().zip(&droi.levels) {
            let lb = level_at(
                &grid,
                droi.dims,
                c[0] as isize + dir[0],
                c[1] as isize + dir[1],
                c[2] as isize + dir[2],
            );
            if lb > 0 {
                counts[(la as usize - 1) * ng + (lb as usize - 1)] += 1;
                counts[(lb as usize - 1) * ng + (la as usize - 1)] += 1;
                total += 2;
            }
        }
        if total == 0 {
            continue;
        }
        per_direction.push(features_of_matrix(&counts, ng, total));
    }
    if per_direction.is_empty() {
        return Err(Error::TextureDegenerate { family: "GLCM" });
    }
    Ok(average_directions(per_direction))
}

fn features_of_matrix<R: Real>(counts: &[u64], ng: usize, total: u64) -> Vec<(&'static str, R)> {
    let t = R::from_u64(total).unwrap();
    let p = |i: usize, j: usize| -> R { R::from_u64(counts[i * ng + j]).unwrap() / t };
    let level = |i: usize| -> R { R::of_usize(i + 1) };

    let mut px = vec![R::zero(); ng];
    let mut p_sum = vec![R::zero(); 2 * ng - 1]; // i + j in 2..=2ng, index i+j-2
    let mut p_diff = vec![R::zero(); ng]; // |i - j| in 0..ng
    for i in 0..ng {
        for j in 0..ng {
            let v = p(i, j);
            px[i] += v;
            p_sum[i + j] += v;
            p_diff[i.abs_diff(j)] += v;
        }
    }

    let mut mu_x = R::zero();
    for (i, &v) in px.iter().enumerate() {
        mu_x += level(i) * v;
    }
    let mut sigma2_x = R::zero();
    for (i, &v) in px.iter().enumerate() {
        let d = level(i) - mu_x;
        sigma2_x += d * d * v;
    }

    let mut autocorrelation = R::zero();
    let mut cluster_prominence = R::zero();
    let mut cluster_shade = R::zero();
    let mut cluster_tendency = R::zero();
    let mut contrast = R::zero();
    let mut joint_energy = R::zero();
    let mut joint_entropy = R::zero();
    let mut inverse_difference = R::zero();
    let mut inverse_difference_moment = R::zero();
    let mut maximum_probability = R::zero();
    let mut hxy1 = R::zero();
    let mut corr_num = R::zero();
    for i in 0..ng {
        for j in 0..ng {
            let v = p(i, j);
            if v == R::zero() {
                continue;
            }
            let li = level(i);
            let lj = level(j);
            autocorrelation += li * lj * v;
            let s = li + lj - mu_x - mu_x;
            let s2 = s * s;
            cluster_tendency += s2 * v;
            cluster_shade += s2 * s * v;
            cluster_prominence += s2 * s2 * v;
            let d = li - lj;
            contrast += d * d * v;
            joint_energy += v * v;
            joint_entropy -= xlog2(v);
            inverse_difference += v / (R::one() + d.abs());
            inverse_difference_moment += v / (R::one() + d * d);
            if v > maximum_probability {
                maximum_probability = v;
            }
            hxy1 -= v * (px[i] * px[j]).log2();
            corr_num += li * lj * v;
        }
    }

    // symmetric matrix: mu_y = mu_x, sigma_y = sigma_x
    let correlation = if sigma2_x > R::zero() {
        (corr_num - mu_x * mu_x) / sigma2_x
    } else {
        R::one()
    };

    let mut difference_average = R::zero();
    let mut difference_entropy = R::zero();
    let mut inverse_variance = R::zero();
    for (k, &v) in p_diff.iter().enumerate() {
        let kk = R::of_usize(k);
        difference_average += kk * v;
        difference_entropy -= xlog2(v);
        if k > 0 {
            inverse_variance += v / (kk * kk);
        }
    }
    let mut difference_variance = R::zero();
    for (k, &v) in p_diff.iter().enumerate() {
        let d = R::of_usize(k) - difference_average;
        difference_variance += d * d * v;
    }

    let mut sum_entropy = R::zero();
    for &v in &p_sum {
        sum_entropy -= xlog2(v);
    }

    let mut hx = R::zero();
    let mut hxy2 = R::zero();
    for i in 0..ng {
        hx -= xlog2(px[i]);
        for j in 0..ng {
            let q = px[i] * px[j];
            hxy2 -= xlog2(q);
        }
    }
    let imc1 = if hx > R::zero() {
        (joint_entropy - hxy1) / hx
    } else {
        R::zero()
    };
    let imc2_arg = R::one() - (-R::c(2.0) * (hxy2 - joint_entropy)).exp();
    let imc2 = if imc2_arg > R::zero() {
        imc2_arg.sqrt()
    } else {
        R::zero()
    };

    let joint_average = mu_x;

    vec![
        ("autocorrelation", autocorrelation),
        ("cluster_prominence", cluster_prominence),
        ("cluster_shade", cluster_shade),
        ("cluster_tendency", cluster_tendency),
        ("contrast", contrast),
        ("correlation", correlation),
        ("difference_average", difference_average),
        ("difference_entropy", difference_entropy),
        ("difference_variance", difference_variance),
        ("imc1", imc1),
        ("imc2", imc2),
        ("inverse_difference", inverse_difference),
        ("inverse_difference_moment", inverse_difference_moment),
        ("inverse_variance", inverse_variance),
        ("joint_average", joint_average),
        ("joint_energy", joint_energy),
        ("joint_entropy", joint_entropy),
        ("maximum_probability", maximum_probability),
        ("sum_entropy", sum_entropy),
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
        let mask = RoiMask::full(dims);
        discretize(&vol, &mask, ng).unwrap()
    }

    #[test]
    fn names_are_sorted_and_match_output() {
        let mut sorted = NAMES;
        sorted.sort_unstable();
        assert_eq!(sorted, NAMES);
        let droi = droi_of([3, 3, 1], &[0., 1., 2., 3., 4., 5., 6., 7., 8.], 4);
        let f = glcm(&droi).unwrap();
        for ((n, _), expect) in f.iter().zip(NAMES) {
            assert_eq!(*n, expect);
        }
    }

    #[test]
    fn flat_roi_gives_single_cell_matrix() {
        let droi = droi_of([3, 3, 3], &[2.0; 27], 8);
        let f = glcm(&droi).unwrap();
        assert_eq!(feature(&f, "maximum_probability"), 1.0);
        assert_eq!(feature(&f, "joint_entropy"), 0.0);
        assert_eq!(feature(&f, "contrast"), 0.0);
        assert_eq!(feature(&f, "correlation"), 1.0);
        assert_eq!(feature(&f, "imc1"), 0.0);
        assert_eq!(feature(&f, "imc2"), 0.0);
    }

    #[test]
    fn two_by_two_hand_counts() {
        // levels [[1,1],[1,2]] and the x direction: pairs (1,1) and (1,2);
        // symmetric counts: p(1,1)=0.5, p(1,2)=p(2,1)=0.25
        let droi = droi_of([2, 2, 1], &[0.0, 0.0, 0.0, 1.0], 2);
        let grid = droi.level_grid();
        assert_eq!(grid, vec![1, 1, 1, 2]);
        let mut counts = vec![0u64; 4];
        let mut total = 0u64;
        for (c, &la) in droi.coords.iter().zip(&droi.levels) {
            let lb = level_at(&grid, droi.dims, c[0] as isize + 1, c[1] as isize, c[2] as isize);
            if lb > 0 {
                counts[(la as usize - 1) * 2 + (lb as usize - 1)] += 1;
                counts[(lb as usize - 1) * 2 + (la as usize - 1)] += 1;
                total += 2;
            }
        }
        assert_eq!(counts, vec![2, 1, 1, 0]);
        let f: Vec<(&str, f64)> = features_of_matrix(&counts, 2, total);
        assert!((feature(&f, "maximum_probability") - 0.5).abs() < 1e-15);
        assert!((feature(&f, "contrast") - 0.5).abs() < 1e-15);
        assert!((feature(&f, "joint_energy") - (0.25 + 2.0 * 0.0625)).abs() < 1e-15);
        // joint entropy: -0.5 log 0.5 - 2 * 0.25 log 0.25 = 0.5 + 1.0
        assert!((feature(&f, "joint_entropy") - 1.5).abs() < 1e-15);
        // mu = 1 * 0.75 + 2 * 0.25 = 1.25
        assert!((feature(&f, "joint_average") - 1.25).abs() < 1e-15);
    }

    #[test]
    fn gray_level_reversal_preserves_symmetric_features() {
        let values = [0., 3., 1., 2., 2., 0., 3., 1., 0., 1., 3., 2.];
        let droi = droi_of([3, 2, 2], &values, 4);
        let reversed: Vec<f64> = values.iter().map(|v| 3.0 - v).collect();
        let droi_rev = droi_of([3, 2, 2], &reversed, 4);
        let f = glcm(&droi).unwrap();
        let g = glcm(&droi_rev).unwrap();
        for name in ["contrast", "joint_entropy", "joint_energy"] {
            assert!(
                (feature(&f, name) - feature(&g, name)).abs() < 1e-12,
                "{name}"
            );
        }
    }

    #[test]
    fn single_voxel_is_degenerate() {
        let vol = Volume::new([1, 1, 1], [1.0; 3], vec![1.0]).unwrap();
        let mask = RoiMask::full([1, 1, 1]);
        let droi = discretize(&vol, &mask, 4).unwrap();
        assert!(matches!(
            glcm(&droi),
            Err(Error::TextureDegenerate { family: "GLCM" })
        ));
    }
}
