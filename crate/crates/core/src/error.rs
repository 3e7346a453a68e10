use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("span {start}..{end} is outside of a {len}-byte source (parser bug)")]
    SpanOutOfBounds { start: usize, end: usize, len: usize },

    #[error("unknown annotation label `{0}`")]
    UnknownLabel(String),

    #[error("unknown rule `{0}`")]
    UnknownRule(String),

    #[error("invalid glob: {0}")]
    BadGlob(String),

    #[error("node {0} has no renderable form")]
    Unrenderable(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
