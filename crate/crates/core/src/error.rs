use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report.
#[derive(Error, Debug)]
pub enum Error {
    #[error("raster shape {height}x{width} needs {expected} values, got {got}")]
    RasterShape {
        height: usize,
        width: usize,
        expected: usize,
        got: usize,
    },

    #[error("raster value {value} at index {index} is out of range")]
    RasterRange { index: usize, value: f64 },

    #[error("beta {value} at index {index} is outside [0, 1)")]
    ScheduleRange { index: usize, value: f64 },

    #[error("timestep {t} is outside [{min}, {max}]")]
    Timestep { t: usize, min: usize, max: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index {index} out of bounds for length {len}")]
    Index { index: usize, len: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("representation has no qualifying pixels")]
    EmptyRepresentation,

    #[error("masked depth estimate is constant; scale is unidentifiable")]
    DegenerateDepth,

    #[error("invalid depth sample: {0}")]
    InvalidDepth(String),

    #[error("invalid metric input: {0}")]
    MetricInput(String),

    #[error("format error at byte {offset}: {reason}")]
    Format { offset: u64, reason: String },

    #[error("manifest does not match dump: {0}")]
    ManifestMismatch(String),

    #[error("goal and real scenes share no object words")]
    Vocabulary,

    #[error("dataset format error: {0}")]
    DatasetFormat(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },

    #[error("image error on {path}: {source}")]
    Image {
        path: String,
        #[source]
        source: image::ImageError,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub(crate) fn image(path: impl AsRef<std::path::Path>, source: image::ImageError) -> Self {
        match source {
            image::ImageError::IoError(e) => Error::io(path, e),
            other => Error::Image {
                path: path.as_ref().display().to_string(),
                source: other,
            },
        }
    }

    /// Process exit code used by the command line front end.
    ///
    /// 1 is a matching failure, 2 an I/O failure, 3 a format failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            Error::Format { .. }
            | Error::ManifestMismatch(_)
            | Error::RasterShape { .. }
            | Error::RasterRange { .. }
            | Error::DatasetFormat(_)
            | Error::Config(_)
            | Error::Image { .. }
            | Error::Json(_) => 3,
            _ => 1,
        }
    }
}
