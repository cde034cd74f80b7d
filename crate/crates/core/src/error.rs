use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar argument fell outside the domain of the operation.
    #[error("{what} must be {requirement} (got {value})")]
    Domain {
        what: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("{what} index {index} out of range 0..{len}")]
    Index {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("angle undefined for a zero-length vector")]
    ZeroVector,

    /// A position lies on or inside the Earth sphere.
    #[error("position at {norm_km} km from the geocentre is not above the Earth surface ({radius_km} km)")]
    InsideEarth { norm_km: f64, radius_km: f64 },

    #[error("invalid scenario: {0}")]
    Scenario(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, requirement: &'static str, value: f64) -> Self {
        Error::Domain {
            what,
            requirement,
            value,
        }
    }
}
