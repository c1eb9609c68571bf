//! Finite-dimensional quantum information measures and a randomized
//! relation-checking lab.
//!
//! The crate is organized bottom-up:
//!
//! - [`operator`]: dense complex operators on labeled tensor-product
//!   spaces; validation, partial trace, purification, matrix functions.
//! - [`measurement`]: POVMs, projective decompositions, orthonormal and
//!   mutually unbiased bases, Naimark dilation, conditional ensembles.
//! - [`entropy`]: Shannon and spectrum entropies (von Neumann, Renyi,
//!   Tsallis, quadratic), relative entropy, conditional and mutual
//!   information.
//! - [`channel`]: isometric dilations, Kraus pairs, channel kets, duals
//!   of bipartite states, accessible-average consistency checks.
//! - [`measures`]: Holevo quantities, missing information, pinching
//!   channels, entropy and information biases, coherent information.
//! - [`lab`]: seeded instance sampling and relation evaluation with
//!   aggregate reporting.
//! - [`io`]: JSON interchange for states, POVMs, and channels; atomic
//!   report file replacement.

pub mod channel;
pub mod entropy;
pub mod io;
pub mod lab;
pub mod measurement;
pub mod measures;
pub mod operator;
mod rng;

pub use entropy::{EntropyKind, LogBase};
pub use operator::{
    CMat, CVec, DensityOperator, DimsProfile, HermitianOperator, PureState, C64,
};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("duplicate subsystem label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("invalid {what}: {report}")]
    Validation {
        what: &'static str,
        report: operator::ValidationReport,
    },
    #[error("value {value} outside the function domain")]
    Domain { value: f64 },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("element {index} is not rank one (residual {residual:.3e})")]
    NotRankOne { index: usize, residual: f64 },
    #[error("operator is not a channel ket (marginal residual {residual:.3e})")]
    NotChannelKet { residual: f64 },
    #[error("channel average disagrees with state marginal (residual {residual:.3e})")]
    MarginalMismatch { residual: f64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("evaluation aborted: {0}")]
    Abort(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
