//! Shared test support: brute-force oracles and generators.
//!
//! Every oracle here re-derives its result from the published definitions
//! with naive enumeration (explicit pair/run/zone/neighbourhood scans, dense
//! double loops, Gaussian elimination), deliberately sharing no code with the
//! implementation under test.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::StandardNormal;
use rand_chacha::ChaCha8Rng;

use radsig_core::imaging::DiscretizedRoi;
use radsig_core::rng::stream;

pub fn rng(seed: u64) -> ChaCha8Rng {
    stream(seed)
}

/// |a - b| <= tol * max(1, |b|): relative with an absolute floor at 1.
pub fn close_rel(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

pub fn feature(features: &[(&'static str, f64)], name: &str) -> f64 {
    features
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("feature {name} missing"))
        .1
}

/// Random non-empty discretized ROI on a grid of at most `dims`.
pub fn random_droi(rng: &mut ChaCha8Rng, dims: [usize; 3], ng: u32) -> DiscretizedRoi<f64> {
    loop {
        let n = dims[0] * dims[1] * dims[2];
        let mut coords = Vec::new();
        let mut levels = Vec::new();
        for z in 0..dims[2] {
            for y in 0..dims[1] {
                for x in 0..dims[0] {
                    if rng.gen::<f64>() < 0.65 {
                        coords.push([x, y, z]);
                        levels.push(rng.gen_range(1..=ng));
                    }
                }
            }
        }
        if coords.len() >= 4 && coords.len() < n {
            return DiscretizedRoi {
                dims,
                coords,
                levels,
                ng,
                bin_edges: Vec::new(),
            };
        }
    }
}

// ---------------------------------------------------------------------------
// texture oracles
// ---------------------------------------------------------------------------

const ORACLE_DIRECTIONS: [[isize; 3]; 13] = [
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

fn grid_of(droi: &DiscretizedRoi<f64>) -> Vec<Vec<Vec<u32>>> {
    let [nx, ny, nz] = droi.dims;
    let mut g = vec![vec![vec![0u32; nx]; ny]; nz];
    for (c, &l) in droi.coords.iter().zip(&droi.levels) {
        g[c[2]][c[1]][c[0]] = l;
    }
    g
}

fn log2z(p: f64) -> f64 {
    if p > 0.0 {
        p.log2()
    } else {
        0.0
    }
}

/// GLCM features averaged over directions with in-ROI pairs.
pub fn oracle_glcm(droi: &DiscretizedRoi<f64>) -> Option<Vec<(&'static str, f64)>> {
    let g = grid_of(droi);
    let [nx, ny, nz] = droi.dims;
    let ng = droi.ng as usize;
    let mut acc: Option<Vec<(&'static str, f64)>> = None;
    let mut used = 0usize;
    for d in ORACLE_DIRECTIONS {
        let mut m = vec![vec![0.0f64; ng]; ng];
        let mut total = 0.0;
        for z in 0..nz {
            for y in 0..ny {
                for x in 0..nx {
                    let la = g[z][y][x];
                    if la == 0 {
                        continue;
                    }
                    let (bx, by, bz) = (
                        x as isize + d[0],
                        y as isize + d[1],
                        z as isize + d[2],
                    );
                    if bx < 0
                        || by < 0
                        || bz < 0
                        || bx >= nx as isize
                        || by >= ny as isize
                        || bz >= nz as isize
                    {
                        continue;
                    }
                    let lb = g[bz as usize][by as usize][bx as usize];
                    if lb == 0 {
                        continue;
                    }
                    m[(la - 1) as usize][(lb - 1) as usize] += 1.0;
                    m[(lb - 1) as usize][(la - 1) as usize] += 1.0;
                    total += 2.0;
                }
            }
        }
        if total == 0.0 {
            continue;
        }
        for row in &mut m {
            for v in row.iter_mut() {
                *v /= total;
            }
        }
        let f = oracle_glcm_features(&m, ng);
        match &mut acc {
            None => acc = Some(f),
            Some(a) => {
                for (ai, fi) in a.iter_mut().zip(f) {
                    ai.1 += fi.1;
                }
            }
        }
        used += 1;
    }
    acc.map(|mut a| {
        for v in &mut a {
            v.1 /= used as f64;
        }
        a
    })
}

fn oracle_glcm_features(p: &[Vec<f64>], ng: usize) -> Vec<(&'static str, f64)> {
    let li = |i: usize| (i + 1) as f64;
    let mut px = vec![0.0; ng];
    let mut py = vec![0.0; ng];
    for i in 0..ng {
        for j in 0..ng {
            px[i] += p[i][j];
            py[j] += p[i][j];
        }
    }
    let mu_x: f64 = (0..ng).map(|i| li(i) * px[i]).sum();
    let mu_y: f64 = (0..ng).map(|j| li(j) * py[j]).sum();
    let sx2: f64 = (0..ng).map(|i| (li(i) - mu_x).powi(2) * px[i]).sum();
    let sy2: f64 = (0..ng).map(|j| (li(j) - mu_y).powi(2) * py[j]).sum();

    let mut p_sum = vec![0.0; 2 * ng + 1]; // indexed by i+j (2-based levels)
    let mut p_diff = vec![0.0; ng]; // indexed by |i-j|
    for i in 0..ng {
        for j in 0..ng {
            p_sum[i + j + 2] += p[i][j];
            p_diff[i.abs_diff(j)] += p[i][j];
        }
    }

    let mut autocorrelation = 0.0;
    let mut cluster_prominence = 0.0;
    let mut cluster_shade = 0.0;
    let mut cluster_tendency = 0.0;
    let mut contrast = 0.0;
    let mut corr_cov = 0.0;
    let mut joint_energy = 0.0;
    let mut joint_entropy = 0.0;
    let mut id = 0.0;
    let mut idm = 0.0;
    let mut maxp: f64 = 0.0;
    let mut hxy1 = 0.0;
    for i in 0..ng {
        for j in 0..ng {
            let v = p[i][j];
            autocorrelation += li(i) * li(j) * v;
            let s = li(i) + li(j) - mu_x - mu_y;
            cluster_tendency += s.powi(2) * v;
            cluster_shade += s.powi(3) * v;
            cluster_prominence += s.powi(4) * v;
            contrast += (li(i) - li(j)).powi(2) * v;
            corr_cov += (li(i) - mu_x) * (li(j) - mu_y) * v;
            joint_energy += v * v;
            if v > 0.0 {
                joint_entropy -= v * v.log2();
                hxy1 -= v * (px[i] * py[j]).log2();
            }
            id += v / (1.0 + (li(i) - li(j)).abs());
            idm += v / (1.0 + (li(i) - li(j)).powi(2));
            maxp = maxp.max(v);
        }
    }
    let correlation = if sx2 > 0.0 && sy2 > 0.0 {
        corr_cov / (sx2.sqrt() * sy2.sqrt())
    } else {
        1.0
    };

    let da: f64 = (0..ng).map(|k| k as f64 * p_diff[k]).sum();
    let de: f64 = -(0..ng).map(|k| p_diff[k] * log2z(p_diff[k])).sum::<f64>();
    let dv: f64 = (0..ng).map(|k| (k as f64 - da).powi(2) * p_diff[k]).sum();
    let inv_var: f64 = (1..ng).map(|k| p_diff[k] / (k * k) as f64).sum();
    let sum_entropy: f64 = -(2..=2 * ng)
        .map(|k| p_sum[k] * log2z(p_sum[k]))
        .sum::<f64>();

    let hx: f64 = -(0..ng).map(|i| px[i] * log2z(px[i])).sum::<f64>();
    let hy: f64 = -(0..ng).map(|j| py[j] * log2z(py[j])).sum::<f64>();
    let hxy2: f64 = -(0..ng)
        .flat_map(|i| (0..ng).map(move |j| (i, j)))
        .map(|(i, j)| {
            let q = px[i] * py[j];
            q * log2z(q)
        })
        .sum::<f64>();
    let imc1 = if hx.max(hy) > 0.0 {
        (joint_entropy - hxy1) / hx.max(hy)
    } else {
        0.0
    };
    let imc2_arg = 1.0 - (-2.0 * (hxy2 - joint_entropy)).exp();
    let imc2 = if imc2_arg > 0.0 { imc2_arg.sqrt() } else { 0.0 };

    vec![
        ("autocorrelation", autocorrelation),
        ("cluster_prominence", cluster_prominence),
        ("cluster_shade", cluster_shade),
        ("cluster_tendency", cluster_tendency),
        ("contrast", contrast),
        ("correlation", correlation),
        ("difference_average", da),
        ("difference_entropy", de),
        ("difference_variance", dv),
        ("imc1", imc1),
        ("imc2", imc2),
        ("inverse_difference", id),
        ("inverse_difference_moment", idm),
        ("inverse_variance", inv_var),
        ("joint_average", mu_x),
        ("joint_energy", joint_energy),
        ("joint_entropy", joint_entropy),
        ("maximum_probability", maxp),
        ("sum_entropy", sum_entropy),
    ]
}

/// GLRLM via membership walking: every voxel walks to both ends of its run,
/// contributing 1/len, so each run counts once.
pub fn oracle_glrlm(droi: &DiscretizedRoi<f64>) -> Vec<(&'static str, f64)> {
    let g = grid_of(droi);
    let [nx, ny, nz] = droi.dims;
    let ng = droi.ng as usize;
    let max_len = nx.max(ny).max(nz);
    let np = droi.coords.len() as f64;
    let level_at = |x: isize, y: isize, z: isize| -> u32 {
        if x < 0 || y < 0 || z < 0 || x >= nx as isize || y >= ny as isize || z >= nz as isize {
            0
        } else {
            g[z as usize][y as usize][x as usize]
        }
    };

    let mut acc: Option<Vec<(&'static str, f64)>> = None;
    for d in ORACLE_DIRECTIONS {
        let mut m = vec![vec![0.0f64; max_len]; ng];
        for (c, &l) in droi.coords.iter().zip(&droi.levels) {
            let mut len = 1usize;
            let (mut x, mut y, mut z) = (c[0] as isize, c[1] as isize, c[2] as isize);
            loop {
                x += d[0];
                y += d[1];
                z += d[2];
                if level_at(x, y, z) == l {
                    len += 1;
                } else {
                    break;
                }
            }
            let (mut x, mut y, mut z) = (c[0] as isize, c[1] as isize, c[2] as isize);
            loop {
                x -= d[0];
                y -= d[1];
                z -= d[2];
                if level_at(x, y, z) == l {
                    len += 1;
                } else {
                    break;
                }
            }
            m[(l - 1) as usize][len - 1] += 1.0 / len as f64;
        }
        let f = oracle_rl_features(&m, np);
        match &mut acc {
            None => acc = Some(f),
            Some(a) => {
                for (ai, fi) in a.iter_mut().zip(f) {
                    ai.1 += fi.1;
                }
            }
        }
    }
    let mut a = acc.unwrap();
    for v in &mut a {
        v.1 /= ORACLE_DIRECTIONS.len() as f64;
    }
    a
}

fn oracle_rl_features(m: &[Vec<f64>], np: f64) -> Vec<(&'static str, f64)> {
    let ng = m.len();
    let nl = m[0].len();
    let nr: f64 = m.iter().flatten().sum();
    let li = |i: usize| (i + 1) as f64;
    let row: Vec<f64> = (0..ng).map(|i| m[i].iter().sum()).collect();
    let col: Vec<f64> = (0..nl).map(|j| (0..ng).map(|i| m[i][j]).sum()).collect();
    let mu_i: f64 = (0..ng).map(|i| li(i) * row[i] / nr).sum();
    let mu_j: f64 = (0..nl).map(|j| li(j) * col[j] / nr).sum();

    let mut sre = 0.0;
    let mut lre = 0.0;
    let mut lgl = 0.0;
    let mut hgl = 0.0;
    let mut srlgl = 0.0;
    let mut srhgl = 0.0;
    let mut lrlgl = 0.0;
    let mut lrhgl = 0.0;
    let mut glv = 0.0;
    let mut rv = 0.0;
    let mut re = 0.0;
    for i in 0..ng {
        for j in 0..nl {
            let c = m[i][j];
            if c == 0.0 {
                continue;
            }
            let p = c / nr;
            let (i2, j2) = (li(i) * li(i), li(j) * li(j));
            sre += c / j2;
            lre += c * j2;
            lgl += c / i2;
            hgl += c * i2;
            srlgl += c / (i2 * j2);
            srhgl += c * i2 / j2;
            lrlgl += c * j2 / i2;
            lrhgl += c * i2 * j2;
            glv += p * (li(i) - mu_i).powi(2);
            rv += p * (li(j) - mu_j).powi(2);
            re -= p * p.log2();
        }
    }
    let gln: f64 = row.iter().map(|r| r * r).sum::<f64>() / nr;
    let rln: f64 = col.iter().map(|c| c * c).sum::<f64>() / nr;
    vec![
        ("gray_level_non_uniformity", gln),
        ("gray_level_non_uniformity_normalized", gln / nr),
        ("gray_level_variance", glv),
        ("high_gray_level_run_emphasis", hgl / nr),
        ("long_run_emphasis", lre / nr),
        ("long_run_high_gray_level_emphasis", lrhgl / nr),
        ("long_run_low_gray_level_emphasis", lrlgl / nr),
        ("low_gray_level_run_emphasis", lgl / nr),
        ("run_entropy", re),
        ("run_length_non_uniformity", rln),
        ("run_length_non_uniformity_normalized", rln / nr),
        ("run_percentage", nr / np),
        ("run_variance", rv),
        ("short_run_emphasis", sre / nr),
        ("short_run_high_gray_level_emphasis", srhgl / nr),
        ("short_run_low_gray_level_emphasis", srlgl / nr),
    ]
}

/// GLSZM via union-find over 26-connected equal-level voxels.
pub fn oracle_glszm(droi: &DiscretizedRoi<f64>) -> Vec<(&'static str, f64)> {
    let n = droi.coords.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    let index: BTreeMap<[usize; 3], usize> = droi
        .coords
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    for (i, c) in droi.coords.iter().enumerate() {
        for dz in -1..=1isize {
            for dy in -1..=1isize {
                for dx in -1..=1isize {
                    if (dx, dy, dz) == (0, 0, 0) {
                        continue;
                    }
                    let (nx, ny, nz) = (
                        c[0] as isize + dx,
                        c[1] as isize + dy,
                        c[2] as isize + dz,
                    );
                    if nx < 0 || ny < 0 || nz < 0 {
                        continue;
                    }
                    if let Some(&j) = index.get(&[nx as usize, ny as usize, nz as usize]) {
                        if droi.levels[i] == droi.levels[j] {
                            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                            if ri != rj {
                                parent[ri] = rj;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut sizes: BTreeMap<usize, (u32, usize)> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        let entry = sizes.entry(r).or_insert((droi.levels[i], 0));
        entry.1 += 1;
    }
    // zone list -> dense-ish matrix keyed by (level, size)
    let mut zones: BTreeMap<(u32, usize), f64> = BTreeMap::new();
    for (_, (level, size)) in sizes {
        *zones.entry((level, size)).or_insert(0.0) += 1.0;
    }

    let nz: f64 = zones.values().sum();
    let np = n as f64;
    let mut row: BTreeMap<u32, f64> = BTreeMap::new();
    let mut col: BTreeMap<usize, f64> = BTreeMap::new();
    for (&(l, s), &c) in &zones {
        *row.entry(l).or_insert(0.0) += c;
        *col.entry(s).or_insert(0.0) += c;
    }
    let mu_i: f64 = row.iter().map(|(&l, &c)| l as f64 * c / nz).sum();
    let mu_s: f64 = col.iter().map(|(&s, &c)| s as f64 * c / nz).sum();

    let mut sae = 0.0;
    let mut lae = 0.0;
    let mut lgl = 0.0;
    let mut hgl = 0.0;
    let mut salgl = 0.0;
    let mut sahgl = 0.0;
    let mut lalgl = 0.0;
    let mut lahgl = 0.0;
    let mut glv = 0.0;
    let mut zv = 0.0;
    let mut ze = 0.0;
    for (&(l, s), &c) in &zones {
        let p = c / nz;
        let (i2, s2) = ((l as f64).powi(2), (s as f64).powi(2));
        sae += c / s2;
        lae += c * s2;
        lgl += c / i2;
        hgl += c * i2;
        salgl += c / (i2 * s2);
        sahgl += c * i2 / s2;
        lalgl += c * s2 / i2;
        lahgl += c * i2 * s2;
        glv += p * (l as f64 - mu_i).powi(2);
        zv += p * (s as f64 - mu_s).powi(2);
        ze -= p * p.log2();
    }
    let gln: f64 = row.values().map(|r| r * r).sum::<f64>() / nz;
    let szn: f64 = col.values().map(|c| c * c).sum::<f64>() / nz;
    vec![
        ("gray_level_non_uniformity", gln),
        ("gray_level_non_uniformity_normalized", gln / nz),
        ("gray_level_variance", glv),
        ("high_gray_level_zone_emphasis", hgl / nz),
        ("large_area_emphasis", lae / nz),
        ("large_area_high_gray_level_emphasis", lahgl / nz),
        ("large_area_low_gray_level_emphasis", lalgl / nz),
        ("low_gray_level_zone_emphasis", lgl / nz),
        ("size_zone_non_uniformity", szn),
        ("size_zone_non_uniformity_normalized", szn / nz),
        ("small_area_emphasis", sae / nz),
        ("small_area_high_gray_level_emphasis", sahgl / nz),
        ("small_area_low_gray_level_emphasis", salgl / nz),
        ("zone_entropy", ze),
        ("zone_percentage", nz / np),
        ("zone_variance", zv),
    ]
}

/// NGTDM by direct neighbourhood averaging.
pub fn oracle_ngtdm(droi: &DiscretizedRoi<f64>) -> Option<Vec<(&'static str, f64)>> {
    let g = grid_of(droi);
    let [nx, ny, nz] = droi.dims;
    let ng = droi.ng as usize;
    let mut s = vec![0.0f64; ng];
    let mut count = vec![0.0f64; ng];
    for (c, &l) in droi.coords.iter().zip(&droi.levels) {
        let mut sum = 0.0;
        let mut k = 0usize;
        for dz in -1..=1isize {
            for dy in -1..=1isize {
                for dx in -1..=1isize {
                    if (dx, dy, dz) == (0, 0, 0) {
                        continue;
                    }
                    let (x, y, z) = (
                        c[0] as isize + dx,
                        c[1] as isize + dy,
                        c[2] as isize + dz,
                    );
                    if x < 0
                        || y < 0
                        || z < 0
                        || x >= nx as isize
                        || y >= ny as isize
                        || z >= nz as isize
                    {
                        continue;
                    }
                    let lv = g[z as usize][y as usize][x as usize];
                    if lv > 0 {
                        sum += lv as f64;
                        k += 1;
                    }
                }
            }
        }
        if k > 0 {
            s[(l - 1) as usize] += (l as f64 - sum / k as f64).abs();
            count[(l - 1) as usize] += 1.0;
        }
    }
    let nvp: f64 = count.iter().sum();
    if nvp == 0.0 {
        return None;
    }
    let p: Vec<f64> = count.iter().map(|&c| c / nvp).collect();
    let present: Vec<usize> = (0..ng).filter(|&i| count[i] > 0.0).collect();
    let ngp = present.len() as f64;
    let sum_ps: f64 = present.iter().map(|&i| p[i] * s[i]).sum();
    let sum_s: f64 = present.iter().map(|&i| s[i]).sum();

    let coarseness = if sum_ps > 0.0 {
        (1.0 / sum_ps).min(1e6)
    } else {
        1e6
    };
    let contrast = if present.len() > 1 {
        let mut pairs = 0.0;
        for &i in &present {
            for &j in &present {
                pairs += p[i] * p[j] * ((i as f64) - (j as f64)).powi(2);
            }
        }
        pairs / (ngp * (ngp - 1.0)) * (sum_s / nvp)
    } else {
        0.0
    };
    let mut busy_den = 0.0;
    let mut complexity = 0.0;
    let mut strength_num = 0.0;
    for &i in &present {
        for &j in &present {
            let (fi, fj) = ((i + 1) as f64, (j + 1) as f64);
            busy_den += (fi * p[i] - fj * p[j]).abs();
            complexity += (fi - fj).abs() * (p[i] * s[i] + p[j] * s[j]) / (p[i] + p[j]);
            strength_num += (p[i] + p[j]) * (fi - fj).powi(2);
        }
    }
    let busyness = if busy_den > 0.0 { sum_ps / busy_den } else { 0.0 };
    let strength = if sum_s > 0.0 { strength_num / sum_s } else { 0.0 };
    Some(vec![
        ("busyness", busyness),
        ("coarseness", coarseness),
        ("complexity", complexity / nvp),
        ("contrast", contrast),
        ("strength", strength),
    ])
}

/// GLDM by direct dependent-neighbour counting (tolerance 0).
pub fn oracle_gldm(droi: &DiscretizedRoi<f64>) -> Vec<(&'static str, f64)> {
    let g = grid_of(droi);
    let [nx, ny, nz] = droi.dims;
    let ng = droi.ng as usize;
    let nd = 27usize;
    let mut m = vec![vec![0.0f64; nd]; ng];
    for (c, &l) in droi.coords.iter().zip(&droi.levels) {
        let mut dep = 1usize;
        for dz in -1..=1isize {
            for dy in -1..=1isize {
                for dx in -1..=1isize {
                    if (dx, dy, dz) == (0, 0, 0) {
                        continue;
                    }
                    let (x, y, z) = (
                        c[0] as isize + dx,
                        c[1] as isize + dy,
                        c[2] as isize + dz,
                    );
                    if x < 0
                        || y < 0
                        || z < 0
                        || x >= nx as isize
                        || y >= ny as isize
                        || z >= nz as isize
                    {
                        continue;
                    }
                    if g[z as usize][y as usize][x as usize] == l {
                        dep += 1;
                    }
                }
            }
        }
        m[(l - 1) as usize][dep - 1] += 1.0;
    }

    let nz_total: f64 = m.iter().flatten().sum();
    let li = |i: usize| (i + 1) as f64;
    let row: Vec<f64> = (0..ng).map(|i| m[i].iter().sum()).collect();
    let col: Vec<f64> = (0..nd).map(|j| (0..ng).map(|i| m[i][j]).sum()).collect();
    let mu_i: f64 = (0..ng).map(|i| li(i) * row[i] / nz_total).sum();
    let mu_j: f64 = (0..nd).map(|j| li(j) * col[j] / nz_total).sum();

    let mut sde = 0.0;
    let mut lde = 0.0;
    let mut lgl = 0.0;
    let mut hgl = 0.0;
    let mut sdlgl = 0.0;
    let mut sdhgl = 0.0;
    let mut ldlgl = 0.0;
    let mut ldhgl = 0.0;
    let mut glv = 0.0;
    let mut dv = 0.0;
    let mut de = 0.0;
    for i in 0..ng {
        for j in 0..nd {
            let c = m[i][j];
            if c == 0.0 {
                continue;
            }
            let p = c / nz_total;
            let (i2, j2) = (li(i) * li(i), li(j) * li(j));
            sde += c / j2;
            lde += c * j2;
            lgl += c / i2;
            hgl += c * i2;
            sdlgl += c / (i2 * j2);
            sdhgl += c * i2 / j2;
            ldlgl += c * j2 / i2;
            ldhgl += c * i2 * j2;
            glv += p * (li(i) - mu_i).powi(2);
            dv += p * (li(j) - mu_j).powi(2);
            de -= p * p.log2();
        }
    }
    let gln: f64 = row.iter().map(|r| r * r).sum::<f64>() / nz_total;
    let dn: f64 = col.iter().map(|c| c * c).sum::<f64>() / nz_total;
    vec![
        ("dependence_entropy", de),
        ("dependence_non_uniformity", dn),
        ("dependence_non_uniformity_normalized", dn / nz_total),
        ("dependence_variance", dv),
        ("gray_level_non_uniformity", gln),
        ("gray_level_variance", glv),
        ("high_gray_level_emphasis", hgl / nz_total),
        ("large_dependence_emphasis", lde / nz_total),
        ("large_dependence_high_gray_level_emphasis", ldhgl / nz_total),
        ("large_dependence_low_gray_level_emphasis", ldlgl / nz_total),
        ("low_gray_level_emphasis", lgl / nz_total),
        ("small_dependence_emphasis", sde / nz_total),
        ("small_dependence_high_gray_level_emphasis", sdhgl / nz_total),
        ("small_dependence_low_gray_level_emphasis", sdlgl / nz_total),
    ]
}

// ---------------------------------------------------------------------------
// model and statistics oracles
// ---------------------------------------------------------------------------

/// Unpenalized logistic MLE by full Newton iteration with a dense solve.
/// `columns` excludes the intercept. Returns (b0, beta).
pub fn newton_logistic(columns: &[Vec<f64>], y: &[u8]) -> (f64, Vec<f64>) {
    let n = y.len();
    let p = columns.len() + 1;
    let xrow = |i: usize, j: usize| -> f64 {
        if j == 0 {
            1.0
        } else {
            columns[j - 1][i]
        }
    };
    let mut theta = vec![0.0f64; p];
    for _ in 0..200 {
        let mut grad = vec![0.0f64; p];
        let mut hess = vec![vec![0.0f64; p]; p];
        for i in 0..n {
            let lin: f64 = (0..p).map(|j| theta[j] * xrow(i, j)).sum();
            let pi = 1.0 / (1.0 + (-lin).exp());
            let w = pi * (1.0 - pi);
            let r = pi - y[i] as f64;
            for j in 0..p {
                grad[j] += xrow(i, j) * r / n as f64;
                for k in 0..p {
                    hess[j][k] += xrow(i, j) * xrow(i, k) * w / n as f64;
                }
            }
        }
        let gmax = grad.iter().fold(0.0f64, |a, g| a.max(g.abs()));
        if gmax < 1e-12 {
            break;
        }
        let step = solve_dense(&mut hess, &grad);
        for j in 0..p {
            theta[j] -= step[j];
        }
    }
    (theta[0], theta[1..].to_vec())
}

/// Gaussian elimination with partial pivoting (destroys `a`).
fn solve_dense(a: &mut [Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut x = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        x.swap(col, pivot);
        let d = a[col][col];
        for i in (col + 1)..n {
            let f = a[i][col] / d;
            for j in col..n {
                a[i][j] -= f * a[col][j];
            }
            x[i] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        x[col] /= a[col][col];
        for i in 0..col {
            x[i] -= a[i][col] * x[col];
        }
    }
    x
}

/// Textbook O(n^2) DeLong: explicit psi sums for components and the paired
/// variance of the AUC difference.
pub fn delong_oracle(scores_a: &[f64], scores_b: &[f64], labels: &[u8]) -> (f64, f64, f64) {
    let psi = |sp: f64, sn: f64| -> f64 {
        if sp > sn {
            1.0
        } else if sp == sn {
            0.5
        } else {
            0.0
        }
    };
    let pos: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == 1).collect();
    let neg: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == 0).collect();
    let (m, n) = (pos.len() as f64, neg.len() as f64);

    let components = |scores: &[f64]| -> (f64, Vec<f64>, Vec<f64>) {
        let v10: Vec<f64> = pos
            .iter()
            .map(|&i| neg.iter().map(|&j| psi(scores[i], scores[j])).sum::<f64>() / n)
            .collect();
        let v01: Vec<f64> = neg
            .iter()
            .map(|&j| pos.iter().map(|&i| psi(scores[i], scores[j])).sum::<f64>() / m)
            .collect();
        let auc = v10.iter().sum::<f64>() / m;
        (auc, v10, v01)
    };
    let (auc_a, v10a, v01a) = components(scores_a);
    let (auc_b, v10b, v01b) = components(scores_b);

    let svar = |v: &[f64]| -> f64 {
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (v.len() as f64 - 1.0)
    };
    let d10: Vec<f64> = v10a.iter().zip(&v10b).map(|(a, b)| a - b).collect();
    let d01: Vec<f64> = v01a.iter().zip(&v01b).map(|(a, b)| a - b).collect();
    let var = svar(&d10) / m + svar(&d01) / n;
    (auc_a - auc_b, var, auc_a)
}

/// Stratified paired bootstrap p-value for the AUC difference: resample
/// positives and negatives with replacement (same indices for both models),
/// estimate sd of the difference over B replicates, and convert the observed
/// difference to a two-sided normal p.
pub fn bootstrap_p(
    scores_a: &[f64],
    scores_b: &[f64],
    labels: &[u8],
    replicates: usize,
    seed: u64,
) -> f64 {
    use radsig_core::stats::auc;

    let pos: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == 1).collect();
    let neg: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == 0).collect();
    let observed = auc::<f64>(scores_a, labels).unwrap() - auc::<f64>(scores_b, labels).unwrap();

    let mut r = rng(seed);
    let mut deltas = Vec::with_capacity(replicates);
    let mut sa = Vec::with_capacity(labels.len());
    let mut sb = Vec::with_capacity(labels.len());
    let mut sl = Vec::with_capacity(labels.len());
    for _ in 0..replicates {
        sa.clear();
        sb.clear();
        sl.clear();
        for _ in 0..pos.len() {
            let i = pos[r.gen_range(0..pos.len())];
            sa.push(scores_a[i]);
            sb.push(scores_b[i]);
            sl.push(1u8);
        }
        for _ in 0..neg.len() {
            let i = neg[r.gen_range(0..neg.len())];
            sa.push(scores_a[i]);
            sb.push(scores_b[i]);
            sl.push(0u8);
        }
        let da = auc::<f64>(&sa, &sl).unwrap() - auc::<f64>(&sb, &sl).unwrap();
        deltas.push(da);
    }
    let mean = deltas.iter().sum::<f64>() / replicates as f64;
    let sd = (deltas.iter().map(|d| (d - mean).powi(2)).sum::<f64>()
        / (replicates as f64 - 1.0))
        .sqrt();
    if sd == 0.0 {
        return 1.0;
    }
    let z = observed / sd;
    statrs::function::erf::erfc(z.abs() / std::f64::consts::SQRT_2)
}

/// Correlated paired predictors for DeLong-vs-bootstrap checks.
pub fn paired_predictor_instance(
    n_per_class: usize,
    effect_a: f64,
    effect_b: f64,
    correlation: f64,
    seed: u64,
) -> (Vec<f64>, Vec<f64>, Vec<u8>) {
    let mut r = rng(seed);
    let mut sa = Vec::new();
    let mut sb = Vec::new();
    let mut labels = Vec::new();
    for class in [0u8, 1u8] {
        for _ in 0..n_per_class {
            let u: f64 = r.sample(StandardNormal);
            let ea: f64 = r.sample(StandardNormal);
            let eb: f64 = r.sample(StandardNormal);
            let shift = if class == 1 { 1.0 } else { -1.0 };
            let base_a = effect_a * shift + u;
            let base_b = effect_b * shift + correlation * u + (1.0 - correlation) * eb;
            sa.push(base_a + 0.3 * ea);
            sb.push(base_b);
            labels.push(class);
        }
    }
    (sa, sb, labels)
}
