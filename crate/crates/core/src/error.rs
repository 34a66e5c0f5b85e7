use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("index ({row}, {col}) out of bounds for {n_rows}x{n_cols} dataset")]
    OutOfBounds {
        row: usize,
        col: usize,
        n_rows: usize,
        n_cols: usize,
    },

    #[error("row has {got} values, expected {expected}")]
    RowLength { got: usize, expected: usize },

    #[error("column not found: {0:?}")]
    ColumnNotFound(String),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("label derivation failed: {0}")]
    LabelDerivation(String),

    #[error("model parse error at byte {position}: {message}")]
    ModelParse { position: usize, message: String },

    #[error("unsupported model version {found:?}, expected {expected:?}")]
    Version { found: String, expected: String },

    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("dataset too small: {0}")]
    TooSmall(String),
}
