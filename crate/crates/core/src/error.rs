use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failed Delzant checks. Facet indices are 1-based in messages and fields.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("need at least n+1 = {needed} facets, got {got}")]
    TooFewFacets { needed: usize, got: usize },
    #[error("polytope is empty or has no vertices")]
    Empty,
    #[error("polytope has empty interior")]
    NoInterior,
    #[error("polytope is unbounded along direction {direction:?}")]
    Unbounded { direction: Vec<String> },
    #[error("not simple: vertex {vertex:?} lies on facets {facets:?}")]
    NotSimple { vertex: Vec<String>, facets: Vec<usize> },
    #[error("not unimodular: normals of facets {facets:?} at vertex {vertex:?} have determinant {det}")]
    NotUnimodular { vertex: Vec<String>, facets: Vec<usize>, det: i64 },
    #[error("inequality of facet {facet} is redundant (contains no vertex)")]
    Redundant { facet: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("validation failed: {0}")]
    Validation(#[from] ValidationError),
    #[error("not monotone: {0}")]
    NotMonotone(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource budget exhausted: {0}")]
    Resource(String),
    #[error("anomaly: {0}")]
    Anomaly(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn anomaly(msg: impl Into<String>) -> Self {
        Error::Anomaly(msg.into())
    }

    /// Stable short name used in structured output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Invalid(_) => "invalid",
            Error::Validation(_) => "validation",
            Error::NotMonotone(_) => "not_monotone",
            Error::Usage(_) => "usage",
            Error::Domain(_) => "domain",
            Error::Resource(_) => "resource",
            Error::Anomaly(_) => "anomaly",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
