//! Chambers-Mallows-Stuck sampling of stable increments.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::{NoiseKind, NoiseSpec};

/// One increment of the standard α-stable driver over a step `dt`,
/// distributed as `(scale·dt)^{1/α} · S_α(1, 0, 0)`.
///
/// Consumes exactly two uniform draws: `U ~ Uniform(-π/2, π/2)` and
/// `W ~ Exponential(1)` feed the symmetric CMS transform. At `α = 2` the
/// transform degenerates, so a Box-Muller branch produces the Brownian
/// increment `N(0, 2·scale·dt)` from the same two uniforms.
pub fn sample_stable_increment(spec: &NoiseSpec, dt: f64, rng: &mut RngStream) -> Result<f64> {
    if spec.kind() != NoiseKind::Stable {
        return Err(Error::Domain(format!(
            "sample_stable_increment requires a stable spec, got {}",
            spec.kind().label()
        )));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Domain(format!("dt must be positive, got {dt}")));
    }
    let alpha = spec.alpha();
    let u1 = rng.uniform_open01();
    let u2 = rng.uniform_open01();
    if alpha == 2.0 {
        let z = (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos();
        return Ok((2.0 * spec.scale() * dt).sqrt() * z);
    }
    let u = PI * (u1 - 0.5);
    let w = -u2.ln();
    Ok((spec.scale() * dt).powf(1.0 / alpha) * cms_symmetric(alpha, u, w))
}

/// Symmetric CMS transform: `S_α(1, 0, 0)` from `U ~ Uniform(-π/2, π/2)` and
/// `W ~ Exp(1)`.
#[inline]
pub(crate) fn cms_symmetric(alpha: f64, u: f64, w: f64) -> f64 {
    let t1 = (alpha * u).sin() / u.cos().powf(1.0 / alpha);
    let t2 = (((1.0 - alpha) * u).cos() / w).powf((1.0 - alpha) / alpha);
    t1 * t2
}

/// Totally right-skewed CMS transform: `S_α(1, 1, 0)` for `α` in (1, 2),
/// zero-mean and spectrally positive.
#[inline]
pub(crate) fn cms_one_sided(alpha: f64, u: f64, w: f64) -> f64 {
    // For β = 1 and α in (1, 2): B = (πα/2 - π)/α and the scale correction
    // is |cos(πα/2)|^{-1/α}.
    let b = (PI * alpha / 2.0 - PI) / alpha;
    let s = (PI * alpha / 2.0).cos().abs().powf(-1.0 / alpha);
    let t1 = (alpha * (u + b)).sin() / u.cos().powf(1.0 / alpha);
    let t2 = ((u - alpha * (u + b)).cos() / w).powf((1.0 - alpha) / alpha);
    s * t1 * t2
}
