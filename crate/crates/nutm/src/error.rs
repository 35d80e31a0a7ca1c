//! Error type shared by the library and the command-line interface.

use thiserror::Error;

/// Errors reported by the solver pipeline.
///
/// The CLI maps variants to process exit codes: configuration errors exit
/// with 2, spectral-function failures with 3, unsupported deformations with
/// 4 and Riemann–Hilbert solver failures with 5.
#[derive(Debug, Error)]
pub enum NutmError {
    /// Invalid or inconsistent problem configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// Spectral-function computation failed (non-convergence, bad data).
    #[error("spectral function computation failed: {0}")]
    Spectral(String),
    /// The requested contour deformation is not available for this problem.
    #[error("deformation unsupported: {0}")]
    Deformation(String),
    /// The Riemann–Hilbert solve failed (singular system, non-convergence).
    #[error("Riemann-Hilbert solver failed: {0}")]
    Solver(String),
    /// I/O error while reading configuration or writing output.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl NutmError {
    /// Process exit code associated with this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            NutmError::Config(_) => 2,
            NutmError::Spectral(_) => 3,
            NutmError::Deformation(_) => 4,
            NutmError::Solver(_) => 5,
            NutmError::Io(_) => 2,
        }
    }
}
