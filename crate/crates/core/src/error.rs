use thiserror::Error;

/// Errors produced by matrix construction, permanent evaluation, and the
/// assignment machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    Empty,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("entry ({row}, {col}) = {value} must be finite and nonnegative")]
    InvalidEntry { row: usize, col: usize, value: f64 },

    #[error("cost entry ({row}, {col}) = {value} must be finite or +inf")]
    InvalidCost { row: usize, col: usize, value: f64 },

    #[error(
        "{block} block entry ({row}, {col}) = {value} is off the diagonal and must be exactly 0"
    )]
    BlockNotDiagonal {
        block: &'static str,
        row: usize,
        col: usize,
        value: f64,
    },

    #[error("a thin matrix needs rows >= cols >= 1, got {rows}x{cols}")]
    NotThin { rows: usize, cols: usize },

    #[error(
        "brute-force enumeration needs {required:.3e} injections, above the cap of {cap:.3e}"
    )]
    BruteforceCapExceeded { required: f64, cap: f64 },

    #[error(
        "Ryser on {rows}x{cols} needs {work:.3e} subset operations (cap {cap:.3e}, max cols {max_cols})"
    )]
    RyserCapExceeded {
        rows: usize,
        cols: usize,
        work: f64,
        cap: f64,
        max_cols: usize,
    },

    #[error("exact permanent infeasible for {rows}x{cols}: {detail}")]
    ExactInfeasible {
        rows: usize,
        cols: usize,
        detail: String,
    },

    #[error("second-order approximation needs at least 2 columns, got {cols}")]
    OrderTooHigh { cols: usize },

    #[error("no assignment with finite cost exists")]
    Infeasible,

    #[error("munkres needs rows <= cols, got {rows}x{cols}")]
    NotWide { rows: usize, cols: usize },

    #[error("k must be at least 1")]
    ZeroK,

    #[error("enumeration of {required:.3e} assignments exceeds the cap of {cap:.3e}")]
    EnumerationCapExceeded { required: f64, cap: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
