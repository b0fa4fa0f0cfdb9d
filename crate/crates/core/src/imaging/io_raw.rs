//! The repository's raw volume format.
//!
//! A volume is a pair of files: `<name>.f32` holding little-endian float32
//! voxels in x-fastest order, and `<name>.json` holding
//! `{"dims":[nx,ny,nz],"spacing":[sx,sy,sz]}`. The byte layout is a contract:
//! writing, loading and writing again must reproduce the payload bit for bit.

use std::fs;
use std::path::{Path, PathBuf};

use byteorder::{ByteOrder, LittleEndian};

use crate::error::{Error, Result};
use crate::imaging::volume::{RawHeader, Volume};
use crate::scalar::Real;

/// Resolves the `.f32`/`.json` pair from either member's path.
fn sibling_paths(path: &Path) -> (PathBuf, PathBuf) {
    let stem = path.with_extension("");
    (stem.with_extension("f32"), stem.with_extension("json"))
}

pub fn is_raw_path(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("f32") | Some("json")
    )
}

pub fn load_raw<R: Real>(path: &Path) -> Result<Volume<R>> {
    let (blob_path, header_path) = sibling_paths(path);
    let header_text =
        fs::read_to_string(&header_path).map_err(|e| Error::io(&header_path, e))?;
    let header: RawHeader = serde_json::from_str(&header_text).map_err(|e| Error::Json {
        path: Some(header_path.clone()),
        source: e,
    })?;
    let blob = fs::read(&blob_path).map_err(|e| Error::io(&blob_path, e))?;
    let expected = header.dims[0] * header.dims[1] * header.dims[2];
    if blob.len() != expected * 4 {
        return Err(Error::PayloadSize {
            path: blob_path,
            expected,
            actual: blob.len() / 4,
        });
    }
    let mut voxels = Vec::with_capacity(expected);
    for chunk in blob.chunks_exact(4) {
        let v = LittleEndian::read_f32(chunk);
        voxels.push(R::from_f32(v).ok_or_else(|| Error::NonFinite {
            what: format!("raw voxel in {}", blob_path.display()),
        })?);
    }
    Volume::new(header.dims, header.spacing, voxels)
}

/// Writes `volume` as the `.f32` + `.json` pair next to `path`.
///
/// Voxels are narrowed to f32; values already representable in f32 round-trip
/// exactly.
pub fn write_raw<R: Real>(path: &Path, volume: &Volume<R>) -> Result<()> {
    let (blob_path, header_path) = sibling_paths(path);
    let header = RawHeader {
        dims: volume.dims(),
        spacing: volume.spacing(),
    };
    let header_text = serde_json::to_string_pretty(&header)?;
    fs::write(&header_path, header_text).map_err(|e| Error::io(&header_path, e))?;
    let mut blob = vec![0u8; volume.len() * 4];
    for (chunk, v) in blob.chunks_exact_mut(4).zip(volume.voxels()) {
        LittleEndian::write_f32(chunk, v.to_f32().unwrap_or(f32::NAN));
    }
    fs::write(&blob_path, blob).map_err(|e| Error::io(&blob_path, e))
}
