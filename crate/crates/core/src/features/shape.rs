//! Shape features computed from the ROI mask geometry.

use crate::error::{Error, Result};
use crate::imaging::RoiMask;
use crate::scalar::Real;

/// Feature names, lexicographic. Values come back in the same order.
pub const NAMES: [&str; 10] = [
    "compactness2",
    "elongation",
    "flatness",
    "least_axis_length",
    "major_axis_length",
    "max_3d_diameter",
    "sphericity",
    "surface_area",
    "surface_volume_ratio",
    "voxel_volume",
];

/// Computes the 10 shape features.
///
/// Volume is the voxel-count volume, surface area the sum of exposed voxel
/// faces. Axis lengths are `4*sqrt(lambda)` of the principal-component
/// eigenvalues of the ROI voxel centres; elongation and flatness fall back
/// to 1 for a degenerate (single-voxel) covariance.
pub fn shape<R: Real>(mask: &RoiMask, spacing: [f64; 3]) -> Result<Vec<(&'static str, R)>> {
    if mask.count() == 0 {
        return Err(Error::EmptyMask);
    }
    let coords = mask.coords();
    let dims = mask.dims();
    let [sx, sy, sz] = spacing;
    let count = coords.len();

    let volume = count as f64 * sx * sy * sz;

    let face_area = [sy * sz, sx * sz, sx * sy];
    let mut surface = 0.0f64;
    let mut boundary: Vec<[f64; 3]> = Vec::new();
    for &[x, y, z] in &coords {
        let mut exposed = false;
        for (axis, &(dx, dy, dz)) in [
            (1isize, 0isize, 0isize),
            (-1, 0, 0),
            (0, 1, 0),
            (0, -1, 0),
            (0, 0, 1),
            (0, 0, -1),
        ]
        .iter()
        .enumerate()
        {
            let nx = x as isize + dx;
            let ny = y as isize + dy;
            let nz = z as isize + dz;
            let outside = nx < 0
                || ny < 0
                || nz < 0
                || nx >= dims[0] as isize
                || ny >= dims[1] as isize
                || nz >= dims[2] as isize
                || !mask.get(nx as usize, ny as usize, nz as usize);
            if outside {
                surface += face_area[axis / 2];
                exposed = true;
            }
        }
        if exposed {
            boundary.push([x as f64 * sx, y as f64 * sy, z as f64 * sz]);
        }
    }

    // the diameter is attained between boundary voxels
    let mut diameter2 = 0.0f64;
    for i in 0..boundary.len() {
        for j in (i + 1)..boundary.len() {
            let d = (0..3)
                .map(|a| {
                    let diff = boundary[i][a] - boundary[j][a];
                    diff * diff
                })
                .sum::<f64>();
            diameter2 = diameter2.max(d);
        }
    }
    let diameter = diameter2.sqrt();

    // population covariance of physical voxel centres
    let mut mean = [0.0f64; 3];
    for &[x, y, z] in &coords {
        mean[0] += x as f64 * sx;
        mean[1] += y as f64 * sy;
        mean[2] += z as f64 * sz;
    }
    for m in &mut mean {
        *m /= count as f64;
    }
    let mut cov = [[0.0f64; 3]; 3];
    for &[x, y, z] in &coords {
        let d = [
            x as f64 * sx - mean[0],
            y as f64 * sy - mean[1],
            z as f64 * sz - mean[2],
        ];
        for a in 0..3 {
            for b in a..3 {
                cov[a][b] += d[a] * d[b];
            }
        }
    }
    for a in 0..3 {
        for b in a..3 {
            cov[a][b] /= count as f64;
            cov[b][a] = cov[a][b];
        }
    }
    let [l1, l2, l3] = sym3_eigenvalues(&cov);
    let l1 = l1.max(0.0);
    let l2 = l2.max(0.0);
    let l3 = l3.max(0.0);

    let (elongation, flatness) = if l1 > 0.0 {
        ((l2 / l1).sqrt(), (l3 / l1).sqrt())
    } else {
        (1.0, 1.0)
    };

    let pi = std::f64::consts::PI;
    let sphericity = pi.powf(1.0 / 3.0) * (6.0 * volume).powf(2.0 / 3.0) / surface;
    let compactness2 = 36.0 * pi * volume * volume / (surface * surface * surface);

    Ok(vec![
        ("compactness2", R::c(compactness2)),
        ("elongation", R::c(elongation)),
        ("flatness", R::c(flatness)),
        ("least_axis_length", R::c(4.0 * l3.sqrt())),
        ("major_axis_length", R::c(4.0 * l1.sqrt())),
        ("max_3d_diameter", R::c(diameter)),
        ("sphericity", R::c(sphericity)),
        ("surface_area", R::c(surface)),
        ("surface_volume_ratio", R::c(surface / volume)),
        ("voxel_volume", R::c(volume)),
    ])
}

/// Eigenvalues of a symmetric 3x3 matrix, descending (trigonometric method).
fn sym3_eigenvalues(a: &[[f64; 3]; 3]) -> [f64; 3] {
    let p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    if p1 == 0.0 {
        let mut d = [a[0][0], a[1][1], a[2][2]];
        d.sort_by(|x, y| y.partial_cmp(x).unwrap());
        return d;
    }
    let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    let p2 = (a[0][0] - q).powi(2) + (a[1][1] - q).powi(2) + (a[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return [q, q, q];
    }
    let mut b = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            b[i][j] = (a[i][j] - if i == j { q } else { 0.0 }) / p;
        }
    }
    let detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = (detb / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let two_pi_3 = 2.0 * std::f64::consts::PI / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + two_pi_3).cos();
    let e2 = 3.0 * q - e1 - e3;
    [e1, e2, e3]
}
