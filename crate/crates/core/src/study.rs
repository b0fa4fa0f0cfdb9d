//! Studies (patients) and the cohort manifest format.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::{NaiveDate, NaiveDateTime};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imaging::{load_mask, load_volume, RoiMask, Volume};
use crate::scalar::Real;

/// One patient: a label, a visit time and one or more aligned
/// volume/mask pairs keyed by sequence name.
#[derive(Debug, Clone)]
pub struct Study<R: Real> {
    pub id: String,
    /// ISO-8601 date or datetime.
    pub visit_time: String,
    /// 1 = clinically significant (positive class), 0 = not.
    pub label: u8,
    pub sequences: BTreeMap<String, (Volume<R>, RoiMask)>,
}

impl<R: Real> Study<R> {
    pub fn validate(&self) -> Result<()> {
        if self.sequences.is_empty() {
            return Err(Error::Manifest {
                reason: format!("study '{}' has no sequences", self.id),
            });
        }
        if self.label > 1 {
            return Err(Error::Manifest {
                reason: format!("study '{}' label must be 0 or 1, got {}", self.id, self.label),
            });
        }
        parse_visit_time(&self.visit_time)
            .map_err(|e| e.in_context(format!("study '{}'", self.id)))?;
        for (seq, (vol, mask)) in &self.sequences {
            mask.check_aligned(vol)
                .map_err(|e| e.in_context(format!("study '{}', sequence '{seq}'", self.id)))?;
        }
        Ok(())
    }

    /// Sequence names in sorted order.
    pub fn sequence_names(&self) -> Vec<String> {
        self.sequences.keys().cloned().collect()
    }
}

/// Parses an ISO-8601 date or datetime into a totally ordered key.
pub fn parse_visit_time(text: &str) -> Result<NaiveDateTime> {
    if let Ok(dt) = NaiveDateTime::parse_from_str(text, "%Y-%m-%dT%H:%M:%S") {
        return Ok(dt);
    }
    if let Ok(d) = NaiveDate::parse_from_str(text, "%Y-%m-%d") {
        return Ok(d.and_hms_opt(0, 0, 0).unwrap());
    }
    Err(Error::Manifest {
        reason: format!("visit time '{text}' is not an ISO-8601 date or datetime"),
    })
}

/// Paths of one sequence's volume and mask, relative to the manifest file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequencePaths {
    pub volume: PathBuf,
    pub mask: PathBuf,
}

/// One manifest row.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub visit_time: String,
    pub label: u8,
    pub sequences: BTreeMap<String, SequencePaths>,
}

/// Reads a cohort manifest: a JSON array of studies with file references.
pub fn load_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let entries: Vec<ManifestEntry> = serde_json::from_str(&text).map_err(|e| Error::Json {
        path: Some(path.into()),
        source: e,
    })?;
    if entries.is_empty() {
        return Err(Error::Manifest {
            reason: format!("{}: manifest lists no studies", path.display()),
        });
    }
    let mut ids: Vec<&str> = entries.iter().map(|e| e.id.as_str()).collect();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != entries.len() {
        return Err(Error::Manifest {
            reason: format!("{}: duplicate study ids", path.display()),
        });
    }
    Ok(entries)
}

/// Loads one study's volumes and masks. Relative paths resolve against
/// `base_dir` (normally the manifest's directory).
pub fn load_study<R: Real>(entry: &ManifestEntry, base_dir: &Path) -> Result<Study<R>> {
    let mut sequences = BTreeMap::new();
    for (seq, paths) in &entry.sequences {
        let vol_path = resolve(base_dir, &paths.volume);
        let mask_path = resolve(base_dir, &paths.mask);
        let volume = load_volume(&vol_path)
            .map_err(|e| e.in_context(format!("study '{}', sequence '{seq}' volume", entry.id)))?;
        let mask = load_mask(&mask_path)
            .map_err(|e| e.in_context(format!("study '{}', sequence '{seq}' mask", entry.id)))?;
        sequences.insert(seq.clone(), (volume, mask));
    }
    let study = Study {
        id: entry.id.clone(),
        visit_time: entry.visit_time.clone(),
        label: entry.label,
        sequences,
    };
    study.validate()?;
    Ok(study)
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}
