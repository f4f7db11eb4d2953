use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid position `{text}`: {reason}")]
    Position { text: String, reason: String },

    #[error("invalid node: {0}")]
    InvalidNode(String),

    /// A constructor or lemma was called outside its domain; the message
    /// names the violated relation.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A witness that must exist was not produced. Indicates a model bug.
    #[error("internal witness failure: {0}")]
    Internal(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("bound exceeded: requested {requested}, bound is {bound}")]
    Bound { requested: usize, bound: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("structure is not in the age: point {point} has no realization")]
    AgeRejection { point: usize },

    #[error("missing variable `{0}`")]
    MissingVariable(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
