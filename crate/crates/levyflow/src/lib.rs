//! Monte Carlo transport of passive tracers in a synthetic turbulent
//! velocity field driven by heavy-tailed jump processes.
//!
//! The velocity field is a superposition of divergence-free sinusoidal
//! modes on an annular shell of wave vectors, each weighted by an
//! independent symmetric jump process: α-stable, exponentially tempered, or
//! truncated. Tracer characteristics are integrated with exact per-mode
//! Marcus jump maps, and the diagnostics reproduce the dichotomy between
//! anomalous `t^{1/α}` transport (stable driving) and classical `t^{1/2}`
//! diffusion (tempered/truncated driving).
//!
//! Entry points:
//! * [`noise`] — increment samplers and stable distribution functions;
//! * [`field`] — mode shells `K_η`, the mode fields `σ_k`, normalization;
//! * [`dynamics`] — the particle integrator and [`dynamics::run_ensemble`];
//! * [`stats`] — moment curves, slope fits, histograms, KS distances, σ̄;
//! * [`config`]/[`experiments`] — declarative experiment runs, also exposed
//!   by the `levyflow` binary and the `examples/` directory.

pub mod config;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod field;
pub mod noise;
pub mod quad;
pub mod report;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
