//! Entropy-based tortuosity of sampled curves.
//!
//! A target curve is scored against a standard curve from the point-wise
//! distance differences between the two, mapped through a Gaussian tail
//! probability. Band-limited variants separate global shape from local
//! roughness. Around the score sit boundary extraction from segmentation
//! masks, classical baselines, two-group statistics and a noise-sweep
//! experiment.

pub mod baselines;
pub mod boundary;
pub mod curves;
pub mod entropy;
mod error;
pub mod pipeline;
pub mod reference;
pub mod sim;
pub mod spectral;
pub mod stats;
pub mod svg;
pub mod synth;

pub use error::{Error, Result};
