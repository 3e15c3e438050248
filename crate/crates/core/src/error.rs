use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("empty frequency range: lambda = {lambda} must exceed q*p0 = {lower}")]
    EmptyFrequencyRange { lambda: f64, lower: f64 },

    #[error("q = {0} is not above 1; the high-frequency approximation needs q > 1")]
    CutoffMultiplier(f64),

    #[error("{function}: argument {x} outside domain ({domain})")]
    Domain {
        function: &'static str,
        x: f64,
        domain: &'static str,
    },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("invalid shell [{lo}, {hi}]: {reason}")]
    Shell { lo: f64, hi: f64, reason: String },

    #[error("light-cone band hit at {0}")]
    LightCone(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
