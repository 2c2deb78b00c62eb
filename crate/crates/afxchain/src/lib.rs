//! Classification of ordered audio-effect chains from wet audio signals.
//!
//! A wet signal is embedded into either Euclidean space or a Poincaré ball
//! and classified with multinomial logistic regression in that geometry.
//! The crate bundles everything needed to run the experiment end to end:
//!
//! - [`geometry`]: closed-form Poincaré-ball operations (Möbius addition,
//!   exp/log maps, geodesic distance).
//! - [`mlr`]: Euclidean and hyperbolic multinomial logistic regression.
//! - [`autograd`]: a minimal reverse-mode differentiation engine over dense
//!   tensors, with fused kernels for the geometry operations.
//! - [`network`]: log-mel front end with attention pooling, FC projection
//!   stack, geometry mapping, and classifier head.
//! - [`optim`]: AdamW for Euclidean parameters, Riemannian Adam for
//!   ball-valued parameters, plateau LR halving, training loop.
//! - [`afx`]: delay / chorus / distortion DSP, ordered chain application,
//!   parameter randomization, and canonical chain enumeration.
//! - [`dataset`]: synthetic plucked-string dry signals, WAV ingestion,
//!   wet-signal rendering, split assignment, manifest persistence.
//! - [`metrics`]: confusion matrices, macro/micro F1, first-N / latest-N
//!   and presence-only variants, multi-seed aggregation.
//! - [`cli`]: the `gen` / `train` / `eval` / `apply` / `verify` / `chains`
//!   subcommands.

pub mod afx;
pub mod autograd;
pub mod cli;
pub mod dataset;
pub mod geometry;
pub mod metrics;
pub mod mlr;
pub mod network;
pub mod optim;
pub mod seeding;
pub mod verify;
pub mod wav;

/// Crate-wide error type.
///
/// The three variants map onto the CLI exit codes: `Training` and failed
/// verification exit 1, `Usage` exits 2, `Io` exits 3.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller violated an API contract: bad arguments, mismatched
    /// shapes or curvatures, malformed input files.
    #[error("usage error: {0}")]
    Usage(String),
    /// Training diverged or produced non-finite values.
    #[error("training error: {0}")]
    Training(String),
    /// An underlying I/O failure, annotated with the path involved.
    #[error("io error: {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn training(msg: impl Into<String>) -> Self {
        Error::Training(msg.into())
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
