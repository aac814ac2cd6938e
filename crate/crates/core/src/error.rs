use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("envelope is not normalized (norm = {norm})")]
    Unnormalized { norm: f64 },

    #[error("component is empty (norm = {norm:e})")]
    EmptyComponent { norm: f64 },

    #[error("coherence quality undefined: |<a>|^2 = {alpha_sq:e}, <a^+a> = {number:e}")]
    UndefinedQuality { alpha_sq: f64, number: f64 },

    #[error("grid under-resolves the state: {points_per_width:.2} points per width, need {required}")]
    UnderResolved { points_per_width: f64, required: f64 },

    #[error("non-finite wavefunction at t = {time} ps (max amplitude {max_amplitude})")]
    NumericalBlowup { time: f64, max_amplitude: f64 },

    #[error("domain overflow at t = {time} ps: edge density {edge_density:e} exceeds {limit:e}")]
    DomainOverflow { time: f64, edge_density: f64, limit: f64 },

    #[error("{what} did not converge after {iterations} iterations (last change {last:e})")]
    NotConverged { what: &'static str, iterations: usize, last: f64 },

    #[error("ill-posed geometry: {0}")]
    IllPosed(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    TomlParse(#[from] toml::de::Error),

    #[error(transparent)]
    TomlEmit(#[from] toml::ser::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { field: field.to_string(), reason: reason.into() }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidGrid(_)
            | Error::InvalidParameter { .. }
            | Error::Config(_)
            | Error::TomlParse(_)
            | Error::IllPosed(_)
            | Error::UnderResolved { .. } => 2,
            Error::Io(_) | Error::TomlEmit(_) | Error::Json(_) => 1,
            _ => 3,
        }
    }
}
