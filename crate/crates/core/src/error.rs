use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite entry at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("{op} needs a relation in one space, got {dim_h} -> {dim_k}")]
    NotSquare {
        op: &'static str,
        dim_h: usize,
        dim_k: usize,
    },

    #[error("relation is multivalued: dim M(T) = {0}")]
    Multivalued(usize),

    #[error("invalid tolerance: rel = {rel}, abs = {abs}")]
    InvalidTolerance { rel: f64, abs: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
