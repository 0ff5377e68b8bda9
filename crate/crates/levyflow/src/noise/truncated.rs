//! Truncated stable increments via small-jump Gaussian approximation.
//!
//! The truncated driver keeps the Lévy density `scale·c_α|z|^{-1-α}` only on
//! `|z| ≤ ε`. Jumps below the inner threshold `δ` are replaced by a Gaussian
//! matching their variance (valid because `σ(δ)/δ ≫ 1` for the thresholds
//! used here); jumps in `(δ, ε]` are simulated exactly as a symmetric
//! compound Poisson sum.

use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::dist::levy_constant_cached;
use super::{NoiseKind, NoiseSpec};

/// One increment of the truncated driver over a step `dt`:
/// `G + Σ s_i R_i` with `G ~ N(0, dt·σ²(δ))`,
/// `σ²(δ) = 2c δ^{2-α}/(2-α)`, jump count `~ Poisson(dt·Λ)`,
/// `Λ = (2c/α)(δ^{-α} - ε^{-α})`, magnitudes `R_i ∝ r^{-1-α}` on `(δ, ε]`
/// and independent symmetric signs.
pub fn sample_truncated_increment(spec: &NoiseSpec, dt: f64, rng: &mut RngStream) -> Result<f64> {
    let NoiseKind::Truncated {
        cutoff,
        inner_threshold,
    } = spec.kind()
    else {
        return Err(Error::Domain(format!(
            "sample_truncated_increment requires a truncated spec, got {}",
            spec.kind().label()
        )));
    };
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Domain(format!("dt must be positive, got {dt}")));
    }
    if inner_threshold > cutoff {
        return Err(Error::Domain(format!(
            "inner_threshold {inner_threshold} exceeds cutoff {cutoff}"
        )));
    }
    let alpha = spec.alpha();
    let c = spec.scale() * levy_constant_cached(alpha);

    let small_jump_var = 2.0 * c * inner_threshold.powf(2.0 - alpha) / (2.0 - alpha);
    let gauss: f64 = rng.sample::<f64, _>(StandardNormal) * (dt * small_jump_var).sqrt();

    let delta_pow = inner_threshold.powf(-alpha);
    let cutoff_pow = cutoff.powf(-alpha);
    let intensity = (2.0 * c / alpha) * (delta_pow - cutoff_pow);
    let mean_jumps = intensity * dt;
    if mean_jumps <= 0.0 {
        return Ok(gauss);
    }

    let n_jumps = Poisson::new(mean_jumps)
        .map_err(|e| Error::Domain(format!("invalid compound-Poisson intensity: {e}")))?
        .sample(rng) as u64;

    let span = delta_pow - cutoff_pow;
    let neg_inv_alpha = -1.0 / alpha;
    let mut jumps = 0.0;
    for _ in 0..n_jumps {
        let bits = rng.next_u64();
        // Top bit carries the sign; remaining 53 bits give u in (0, 1], so
        // the magnitude lies in the half-open support (δ, ε].
        let u = ((bits >> 11) + 1) as f64 * (1.0 / 9007199254740992.0);
        let r = jump_magnitude(delta_pow, span, neg_inv_alpha, u);
        jumps += if bits >> 63 == 0 { r } else { -r };
    }
    Ok(gauss + jumps)
}

/// Inverse-CDF map for the restricted Pareto density on `(δ, ε]`:
/// `r(u) = (δ^{-α} - u (δ^{-α} - ε^{-α}))^{-1/α}`.
#[inline]
pub(crate) fn jump_magnitude(delta_pow: f64, span: f64, neg_inv_alpha: f64, u: f64) -> f64 {
    (delta_pow - u * span).powf(neg_inv_alpha)
}
