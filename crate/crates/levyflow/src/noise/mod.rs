//! Samplers and distribution functions for the driving jump processes.
//!
//! Three symmetric pure-jump drivers are supported, all built on the Lévy
//! density `c_α |z|^{-1-α}` of the standard symmetric α-stable law:
//!
//! * `Stable` — the unmodified α-stable process, sampled exactly by the
//!   Chambers-Mallows-Stuck transform;
//! * `Tempered` — Lévy density damped by `exp(-A|z|)`, sampled by
//!   exponential-tilting rejection on one-sided stable candidates;
//! * `Truncated` — jumps above a cut-off `ε` removed, sampled by a Gaussian
//!   approximation of the sub-`δ` jumps plus an exact compound-Poisson part
//!   on `(δ, ε]`.
//!
//! Scale conventions follow the characteristic function
//! `E exp(iξZ_t) = exp(-σ_α |ξ|^α t)`: `scale` is `σ_α` and transforms as
//! `λ^α` under spatial scaling by `λ`.

mod dist;
mod stable;
mod tempered;
mod truncated;

pub use dist::{fractional_abs_moment, levy_constant, stable_cdf, stable_density};
pub use stable::sample_stable_increment;
pub use tempered::sample_tempered_increment;
pub use truncated::sample_truncated_increment;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use serde::Serialize;

/// Tail treatment of the driving process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseKind {
    Stable,
    Tempered {
        /// Exponential damping rate `A` of large jumps.
        tempering: f64,
    },
    Truncated {
        /// Jump amplitude cut-off `ε`; no jumps larger than this survive.
        cutoff: f64,
        /// Gaussian-approximation boundary `δ` for small jumps, `0 < δ ≤ ε`.
        inner_threshold: f64,
    },
}

impl NoiseKind {
    pub fn label(&self) -> &'static str {
        match self {
            NoiseKind::Stable => "stable",
            NoiseKind::Tempered { .. } => "tempered",
            NoiseKind::Truncated { .. } => "truncated",
        }
    }
}

/// Full description of one scalar driving process.
///
/// `alpha` must lie in `(1, 2]`; the value `2` is accepted as the Brownian
/// anchor even though the jump regime of interest is `(1, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseSpec {
    alpha: f64,
    scale: f64,
    #[serde(flatten)]
    kind: NoiseKind,
}

impl NoiseSpec {
    pub fn stable(alpha: f64, scale: f64) -> Result<Self> {
        Self::validate_base(alpha, scale)?;
        Ok(NoiseSpec {
            alpha,
            scale,
            kind: NoiseKind::Stable,
        })
    }

    pub fn tempered(alpha: f64, scale: f64, tempering: f64) -> Result<Self> {
        Self::validate_base(alpha, scale)?;
        if alpha >= 2.0 {
            return Err(Error::Domain(
                "tempered noise requires alpha strictly inside (1, 2)".into(),
            ));
        }
        if !(tempering > 0.0) || !tempering.is_finite() {
            return Err(Error::Domain(format!(
                "tempering must be positive and finite, got {tempering}"
            )));
        }
        Ok(NoiseSpec {
            alpha,
            scale,
            kind: NoiseKind::Tempered { tempering },
        })
    }

    pub fn truncated(alpha: f64, scale: f64, cutoff: f64, inner_threshold: f64) -> Result<Self> {
        Self::validate_base(alpha, scale)?;
        if alpha >= 2.0 {
            return Err(Error::Domain(
                "truncated noise requires alpha strictly inside (1, 2)".into(),
            ));
        }
        if !(cutoff > 0.0) || !cutoff.is_finite() {
            return Err(Error::Domain(format!(
                "cutoff must be positive and finite, got {cutoff}"
            )));
        }
        if !(inner_threshold > 0.0) || inner_threshold > cutoff {
            return Err(Error::Domain(format!(
                "inner_threshold must satisfy 0 < inner_threshold <= cutoff, \
                 got inner_threshold={inner_threshold}, cutoff={cutoff}"
            )));
        }
        Ok(NoiseSpec {
            alpha,
            scale,
            kind: NoiseKind::Truncated {
                cutoff,
                inner_threshold,
            },
        })
    }

    /// Truncated spec with the default inner threshold `δ = ε/10`.
    pub fn truncated_default_inner(alpha: f64, scale: f64, cutoff: f64) -> Result<Self> {
        Self::truncated(alpha, scale, cutoff, cutoff / 10.0)
    }

    fn validate_base(alpha: f64, scale: f64) -> Result<()> {
        if !(alpha > 1.0 && alpha <= 2.0) {
            return Err(Error::Domain(format!(
                "alpha must lie in (1, 2], got {alpha}"
            )));
        }
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::Domain(format!(
                "scale must be positive and finite, got {scale}"
            )));
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }
}

/// One increment of the configured driver over a step of length `dt`.
#[inline]
pub fn sample_increment(spec: &NoiseSpec, dt: f64, rng: &mut RngStream) -> Result<f64> {
    match spec.kind {
        NoiseKind::Stable => sample_stable_increment(spec, dt, rng),
        NoiseKind::Tempered { .. } => sample_tempered_increment(spec, dt, rng),
        NoiseKind::Truncated { .. } => sample_truncated_increment(spec, dt, rng),
    }
}

/// A càdlàg sampling of one driver path on a uniform grid.
#[derive(Debug, Clone)]
pub struct NoisePath {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// Cumulative path of `⌈horizon/dt⌉ + 1` points starting at `Z_0 = 0`.
pub fn simulate_noise_path(
    spec: &NoiseSpec,
    horizon: f64,
    dt: f64,
    rng: &mut RngStream,
) -> Result<NoisePath> {
    if !(horizon > 0.0) {
        return Err(Error::Domain(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    if !(dt > 0.0 && dt <= horizon) {
        return Err(Error::Domain(format!(
            "dt must satisfy 0 < dt <= horizon, got dt={dt}, horizon={horizon}"
        )));
    }
    let n_steps = (horizon / dt).ceil() as usize;
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut values = Vec::with_capacity(n_steps + 1);
    times.push(0.0);
    values.push(0.0);
    let mut z = 0.0;
    for i in 1..=n_steps {
        z += sample_increment(spec, dt, rng)?;
        times.push(i as f64 * dt);
        values.push(z);
    }
    Ok(NoisePath { times, values })
}
