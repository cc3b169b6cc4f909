//! Failure classification and process exit codes.
//!
//! | code | class                                            |
//! |------|--------------------------------------------------|
//! | 0    | success                                          |
//! | 1    | internal error                                   |
//! | 2    | command-line usage error (from the arg parser)   |
//! | 3    | input file parse or validation error             |
//! | 4    | geometry or scene error (clearance, generation)  |
//! | 5    | solver failure (degenerate, infeasible)          |
//! | 6    | file system I/O error                            |

use nclayout::{GeometryError, MetricsError, SceneError, SolveError};

pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_GEOMETRY: i32 = 4;
pub const EXIT_SOLVE: i32 = 5;
pub const EXIT_IO: i32 = 6;

/// A classified command failure; the message is printed to stderr and the
/// class picks the exit code.
#[derive(Debug)]
pub enum AppError {
    Parse(String),
    Geometry(String),
    Solve(String),
    Io(String),
    Internal(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Parse(_) => EXIT_PARSE,
            AppError::Geometry(_) => EXIT_GEOMETRY,
            AppError::Solve(_) => EXIT_SOLVE,
            AppError::Io(_) => EXIT_IO,
            AppError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AppError::Parse(m) => write!(f, "parse error: {m}"),
            AppError::Geometry(m) => write!(f, "geometry error: {m}"),
            AppError::Solve(m) => write!(f, "solve error: {m}"),
            AppError::Io(m) => write!(f, "io error: {m}"),
            AppError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for AppError {
    fn from(e: serde_json::Error) -> Self {
        AppError::Parse(e.to_string())
    }
}

impl From<SceneError> for AppError {
    fn from(e: SceneError) -> Self {
        AppError::Geometry(e.to_string())
    }
}

impl From<GeometryError> for AppError {
    fn from(e: GeometryError) -> Self {
        AppError::Geometry(e.to_string())
    }
}

impl From<SolveError> for AppError {
    fn from(e: SolveError) -> Self {
        AppError::Solve(e.to_string())
    }
}

impl From<MetricsError> for AppError {
    fn from(e: MetricsError) -> Self {
        AppError::Geometry(e.to_string())
    }
}
