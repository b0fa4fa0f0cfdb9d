//! Crate-wide error type.
//!
//! One enum covers the whole pipeline so errors compose with `?` across
//! modules. [`Error::category`] buckets every variant for the CLI's exit
//! codes: configuration, I/O, or numeric degeneracy.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse failure class, used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Bad parameters, malformed configuration or manifest contents.
    Config,
    /// File system or file format failures.
    Io,
    /// Degenerate data or numerical failure.
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    // ---- file I/O and formats ----
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: not a NIfTI-1 file (unknown magic)")]
    UnknownMagic { path: PathBuf },
    #[error("{path}: unsupported NIfTI datatype code {code}")]
    UnsupportedDatatype { path: PathBuf, code: i16 },
    #[error("{path}: header declares {expected} voxels but payload holds {actual}")]
    PayloadSize {
        path: PathBuf,
        expected: usize,
        actual: usize,
    },
    #[error("{path}: invalid header: {reason}")]
    HeaderInvalid { path: PathBuf, reason: String },
    #[error("json error{}: {source}", .path.as_ref().map(|p| format!(" in {}", p.display())).unwrap_or_default())]
    Json {
        path: Option<PathBuf>,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}:{line}: malformed csv: {reason}")]
    Csv {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("invalid manifest: {reason}")]
    Manifest { reason: String },

    // ---- geometry / imaging ----
    #[error("volume dims {expected:?} do not match mask dims {actual:?}")]
    DimsMismatch {
        expected: [usize; 3],
        actual: [usize; 3],
    },
    #[error("mask contains no voxels inside the region of interest")]
    EmptyMask,
    #[error("resampling target produces a degenerate grid (zero-length axis)")]
    DegenerateExtent,
    #[error("axis {axis} has length {len}; operation needs at least 2")]
    AxisTooSmall { axis: usize, len: usize },
    #[error("non-finite value encountered in {what}")]
    NonFinite { what: String },

    // ---- configuration / parameters ----
    #[error("invalid parameter: {what}")]
    InvalidParam { what: String },
    #[error("invalid cohort spec: {reason}")]
    SpecInvalid { reason: String },
    #[error("feature catalog mismatch: {reason}")]
    CatalogMismatch { reason: String },
    #[error("feature column '{name}' not present in the table")]
    MissingFeature { name: String },

    // ---- model fitting / statistics ----
    #[error("labels contain a single class; need both")]
    SingleClass,
    #[error("too few samples: need {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("cross-validation fold {fold} lost a class; cohort too small for stratification")]
    FoldMissingClass { fold: usize },
    #[error("optimizer failed to reach the optimality certificate within {rounds} rounds")]
    NotConverged { rounds: usize },
    #[error("{family} matrix is degenerate (no countable pairs/zones/neighbourhoods)")]
    TextureDegenerate { family: &'static str },
    #[error("paired scores carry no detectable difference (degenerate DeLong variance)")]
    DegenerateComparison,

    // ---- annotation ----
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps an error with human context (study id, sequence, filter, ...).
    pub fn in_context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            Io { .. } | UnknownMagic { .. } | UnsupportedDatatype { .. } | PayloadSize { .. }
            | HeaderInvalid { .. } | Json { .. } | Csv { .. } => ErrorCategory::Io,
            Manifest { .. } | InvalidParam { .. } | SpecInvalid { .. }
            | CatalogMismatch { .. } | MissingFeature { .. } => ErrorCategory::Config,
            DimsMismatch { .. } | EmptyMask | DegenerateExtent | AxisTooSmall { .. }
            | NonFinite { .. } | SingleClass | TooFewSamples { .. } | FoldMissingClass { .. }
            | NotConverged { .. } | TextureDegenerate { .. } | DegenerateComparison => {
                ErrorCategory::Numeric
            }
            Context { source, .. } => source.category(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(source: serde_json::Error) -> Self {
        Error::Json { path: None, source }
    }
}
