use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("regular case r = s = {0}: biregular odd-diameter formula does not apply")]
    RegularCase(u64),
    #[error("graph does not match parameters: {0}")]
    ParamMismatch(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("graph is not regular")]
    NotRegular,
    #[error("unsupported order q = {0}")]
    UnsupportedOrder(u64),
    #[error("r = {0} is not congruent to 2 mod 3")]
    UnsupportedResidue(u64),
    #[error("n = {0} is too small (need n >= 6)")]
    TooSmall(usize),
    #[error("multiplicity k = {0} must be at least 2")]
    BadMultiplicity(usize),
    #[error("construction needs an externally supplied graph: {0}")]
    NeedsInput(String),
    #[error("graph with {0} vertices exceeds the size cap of {1}")]
    TooLarge(usize, usize),
    #[error("characteristic polynomial has nonzero coefficient at x^{0} with odd codegree")]
    BadSpectralSymmetry(usize),
    #[error("search stopped after {0} nodes before completing")]
    Incomplete(u64),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn parse_err(offset: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        msg: msg.into(),
    }
}
