use thiserror::Error;

/// Errors raised by set construction and the analysis pipeline.
///
/// Falsified predicates are never errors; they are reported as data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a set must contain at least one element")]
    Empty,
    #[error("value {0} lies outside the signed 32-bit element range")]
    Range(i64),
    #[error("cannot parse set literal: {0}")]
    Parse(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("maxM = {requested} exceeds the enumeration guard of {limit}")]
    Guard { requested: u32, limit: u32 },
    #[error("invalid family parameters: {0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
