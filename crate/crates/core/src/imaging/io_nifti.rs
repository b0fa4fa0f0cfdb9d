//! Minimal NIfTI-1 reader.
//!
//! Supports single-file `.nii` volumes (magic `n+1\0`), transparently
//! gunzipped, with datatypes int16/uint16/float32/float64, either byte order.
//! `scl_slope`/`scl_inter` are applied when the slope is set. Anything else
//! (header/img pairs, 4D series, exotic datatypes) is rejected with a named
//! error.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use byteorder::{BigEndian, ByteOrder, LittleEndian};
use flate2::read::MultiGzDecoder;

use crate::error::{Error, Result};
use crate::imaging::volume::Volume;
use crate::scalar::Real;

const HEADER_LEN: usize = 348;
const OFF_DIM: usize = 40;
const OFF_DATATYPE: usize = 70;
const OFF_PIXDIM: usize = 76;
const OFF_VOX_OFFSET: usize = 108;
const OFF_SCL_SLOPE: usize = 112;
const OFF_SCL_INTER: usize = 116;
const OFF_MAGIC: usize = 344;

const DT_INT16: i16 = 4;
const DT_FLOAT32: i16 = 16;
const DT_FLOAT64: i16 = 64;
const DT_UINT16: i16 = 512;

#[derive(Clone, Copy)]
enum Endian {
    Little,
    Big,
}

impl Endian {
    fn i16(self, b: &[u8]) -> i16 {
        match self {
            Endian::Little => LittleEndian::read_i16(b),
            Endian::Big => BigEndian::read_i16(b),
        }
    }
    fn u16(self, b: &[u8]) -> u16 {
        match self {
            Endian::Little => LittleEndian::read_u16(b),
            Endian::Big => BigEndian::read_u16(b),
        }
    }
    fn f32(self, b: &[u8]) -> f32 {
        match self {
            Endian::Little => LittleEndian::read_f32(b),
            Endian::Big => BigEndian::read_f32(b),
        }
    }
    fn f64(self, b: &[u8]) -> f64 {
        match self {
            Endian::Little => LittleEndian::read_f64(b),
            Endian::Big => BigEndian::read_f64(b),
        }
    }
}

fn read_all(path: &Path) -> Result<Vec<u8>> {
    let mut file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut head = [0u8; 2];
    let n = file.read(&mut head).map_err(|e| Error::io(path, e))?;
    let mut bytes = Vec::new();
    if n == 2 && head == [0x1f, 0x8b] {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        MultiGzDecoder::new(file)
            .read_to_end(&mut bytes)
            .map_err(|e| Error::io(path, e))?;
    } else {
        let mut file = File::open(path).map_err(|e| Error::io(path, e))?;
        file.read_to_end(&mut bytes).map_err(|e| Error::io(path, e))?;
    }
    Ok(bytes)
}

pub fn load_nifti<R: Real>(path: &Path) -> Result<Volume<R>> {
    let bytes = read_all(path)?;
    if bytes.len() < HEADER_LEN || &bytes[OFF_MAGIC..OFF_MAGIC + 4] != b"n+1\0" {
        return Err(Error::UnknownMagic { path: path.into() });
    }
    // sizeof_hdr doubles as the byte-order sentinel
    let endian = if LittleEndian::read_i32(&bytes[0..4]) == HEADER_LEN as i32 {
        Endian::Little
    } else if BigEndian::read_i32(&bytes[0..4]) == HEADER_LEN as i32 {
        Endian::Big
    } else {
        return Err(Error::HeaderInvalid {
            path: path.into(),
            reason: "sizeof_hdr is not 348 in either byte order".into(),
        });
    };

    let mut dim = [0i16; 8];
    for (i, d) in dim.iter_mut().enumerate() {
        *d = endian.i16(&bytes[OFF_DIM + 2 * i..]);
    }
    let nd = dim[0];
    if !(1..=7).contains(&nd) {
        return Err(Error::HeaderInvalid {
            path: path.into(),
            reason: format!("dim[0] = {nd} out of range"),
        });
    }
    let take = |i: usize| -> i64 {
        if (i as i16) <= nd {
            dim[i] as i64
        } else {
            1
        }
    };
    let (nx, ny, nz) = (take(1), take(2), take(3));
    if nx < 1 || ny < 1 || nz < 1 {
        return Err(Error::HeaderInvalid {
            path: path.into(),
            reason: format!("non-positive spatial dims [{nx}, {ny}, {nz}]"),
        });
    }
    for i in 4..=(nd as usize) {
        if dim[i] > 1 {
            return Err(Error::HeaderInvalid {
                path: path.into(),
                reason: format!("dim[{i}] = {} — only 3D volumes are supported", dim[i]),
            });
        }
    }
    let dims = [nx as usize, ny as usize, nz as usize];

    let mut spacing = [0f64; 3];
    for (i, s) in spacing.iter_mut().enumerate() {
        let p = endian.f32(&bytes[OFF_PIXDIM + 4 * (i + 1)..]) as f64;
        *s = p.abs();
        if !s.is_finite() || *s <= 0.0 {
            return Err(Error::HeaderInvalid {
                path: path.into(),
                reason: format!("pixdim[{}] = {p} is not a positive spacing", i + 1),
            });
        }
    }

    let datatype = endian.i16(&bytes[OFF_DATATYPE..]);
    let elem_size = match datatype {
        DT_INT16 | DT_UINT16 => 2,
        DT_FLOAT32 => 4,
        DT_FLOAT64 => 8,
        code => {
            return Err(Error::UnsupportedDatatype {
                path: path.into(),
                code,
            })
        }
    };

    let vox_offset = endian.f32(&bytes[OFF_VOX_OFFSET..]);
    if !vox_offset.is_finite() || vox_offset < HEADER_LEN as f32 {
        return Err(Error::HeaderInvalid {
            path: path.into(),
            reason: format!("vox_offset = {vox_offset} is invalid"),
        });
    }
    let offset = vox_offset as usize;

    let expected = dims[0] * dims[1] * dims[2];
    let available = bytes.len().saturating_sub(offset) / elem_size;
    if available < expected {
        return Err(Error::PayloadSize {
            path: path.into(),
            expected,
            actual: available,
        });
    }

    let slope = endian.f32(&bytes[OFF_SCL_SLOPE..]) as f64;
    let inter = endian.f32(&bytes[OFF_SCL_INTER..]) as f64;
    // NIfTI convention: slope == 0 (or non-finite) means "no scaling stored"
    let scale = if slope != 0.0 && slope.is_finite() && inter.is_finite() {
        Some((slope, inter))
    } else {
        None
    };

    let payload = &bytes[offset..offset + expected * elem_size];
    let mut voxels: Vec<R> = Vec::with_capacity(expected);
    for chunk in payload.chunks_exact(elem_size) {
        let raw = match datatype {
            DT_INT16 => endian.i16(chunk) as f64,
            DT_UINT16 => endian.u16(chunk) as f64,
            DT_FLOAT32 => endian.f32(chunk) as f64,
            DT_FLOAT64 => endian.f64(chunk),
            _ => unreachable!(),
        };
        let v = match scale {
            Some((s, b)) => raw * s + b,
            None => raw,
        };
        if !v.is_finite() {
            return Err(Error::NonFinite {
                what: format!("voxel data in {}", path.display()),
            });
        }
        voxels.push(R::c(v));
    }
    Volume::new(dims, spacing, voxels)
}
