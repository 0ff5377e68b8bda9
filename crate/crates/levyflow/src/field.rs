//! Deterministic spatial structure of the velocity field.
//!
//! The field is a superposition of divergence-free sinusoidal modes indexed
//! by the integer wave vectors of the annular shell
//! `K_η = {k ∈ Z²: 1/(2η) ≤ |k| ≤ 1/η}`. Wave vectors are raw integer
//! vectors compared against `1/η` directly (no 2π factor), so the reference
//! scale `η = 2π/20` activates the shells `|k|² ∈ {4, 5, 8, 9, 10}`.

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quad;

/// Sign convention of a mode: `Plus` modes carry the cosine profile, `Minus`
/// modes (the negated wave vectors) the sine profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Plus,
    Minus,
}

/// One activated wave vector with its derived parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WaveMode {
    pub k: [i64; 2],
    pub parity: Parity,
}

impl WaveMode {
    /// Builds the mode for `k`, deriving the parity from the half-lattice
    /// rule: `Plus` iff `k₁ > 0` or (`k₁ = 0` and `k₂ > 0`).
    pub fn new(k: [i64; 2]) -> Result<Self> {
        if k == [0, 0] {
            return Err(Error::Domain("wave vector must be nonzero".into()));
        }
        let parity = if k[0] > 0 || (k[0] == 0 && k[1] > 0) {
            Parity::Plus
        } else {
            Parity::Minus
        };
        Ok(WaveMode { k, parity })
    }

    pub fn norm(&self) -> f64 {
        ((self.k[0] * self.k[0] + self.k[1] * self.k[1]) as f64).sqrt()
    }
}

impl Serialize for WaveMode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tuple = serializer.serialize_tuple(3)?;
        tuple.serialize_element(&self.k[0])?;
        tuple.serialize_element(&self.k[1])?;
        tuple.serialize_element(match self.parity {
            Parity::Plus => "plus",
            Parity::Minus => "minus",
        })?;
        tuple.end()
    }
}

/// The activated shell at space scale `eta`, in deterministic lexicographic
/// order by `(k₁, k₂)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeSet {
    pub eta: f64,
    pub modes: Vec<WaveMode>,
}

impl ModeSet {
    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Test-oriented constructor that skips the shell-membership checks;
    /// used to build reduced fields (e.g. a single mode) inside the crate.
    pub(crate) fn custom(eta: f64, modes: Vec<WaveMode>) -> Self {
        ModeSet { eta, modes }
    }
}

/// Physical parameters of the velocity field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldParams {
    /// Average velocity `u` (length/time).
    pub u: f64,
    /// Relaxation time `τ`.
    pub tau: f64,
    /// Space scale `η` selecting the shell.
    pub eta: f64,
    /// Stability index of the driving processes.
    pub alpha: f64,
}

impl FieldParams {
    pub fn new(u: f64, tau: f64, eta: f64, alpha: f64) -> Result<Self> {
        if !(u > 0.0) || !(tau > 0.0) || !(eta > 0.0) {
            return Err(Error::Domain(format!(
                "field parameters must be positive: u={u}, tau={tau}, eta={eta}"
            )));
        }
        if !(alpha > 1.0 && alpha <= 2.0) {
            return Err(Error::Domain(format!(
                "alpha must lie in (1, 2], got {alpha}"
            )));
        }
        Ok(FieldParams { u, tau, eta, alpha })
    }
}

/// Exhaustive enumeration of `K_η`, closed annulus, both endpoints included.
pub fn build_mode_set(eta: f64) -> Result<ModeSet> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::Config(format!("eta must be positive, got {eta}")));
    }
    let lo_sq = 1.0 / (4.0 * eta * eta);
    let hi_sq = 1.0 / (eta * eta);
    let k_max = (1.0 / eta).floor() as i64 + 1;
    let mut modes = Vec::new();
    for k1 in -k_max..=k_max {
        for k2 in -k_max..=k_max {
            if k1 == 0 && k2 == 0 {
                continue;
            }
            let norm_sq = (k1 * k1 + k2 * k2) as f64;
            if norm_sq >= lo_sq && norm_sq <= hi_sq {
                modes.push(WaveMode::new([k1, k2])?);
            }
        }
    }
    if modes.is_empty() {
        return Err(Error::Config(format!(
            "no integer wave vectors in the shell [1/(2η), 1/η] for eta={eta}"
        )));
    }
    Ok(ModeSet { eta, modes })
}

/// Evaluates the divergence-free mode `σ_k` at `x`:
/// `√2 cos(k·x) k⊥/|k|` for `Plus`, `√2 sin(k·x) k⊥/|k|` for `Minus`,
/// with `k⊥ = (-k₂, k₁)`.
#[inline]
pub fn sigma_eval(mode: &WaveMode, x: [f64; 2]) -> [f64; 2] {
    let phase = mode.k[0] as f64 * x[0] + mode.k[1] as f64 * x[1];
    let profile = match mode.parity {
        Parity::Plus => phase.cos(),
        Parity::Minus => phase.sin(),
    };
    let amp = std::f64::consts::SQRT_2 * profile / mode.norm();
    [-amp * mode.k[1] as f64, amp * mode.k[0] as f64]
}

/// Normalizing constant `C(η, τ, α) = Card(K_η)^{-1/α} τ^{(α-1)/α}` using
/// the enumerated cardinality.
pub fn normalization_constant(eta: f64, tau: f64, alpha: f64) -> Result<f64> {
    let modes = build_mode_set(eta)?;
    normalization_for_card(modes.len(), tau, alpha)
}

/// Same constant from a known cardinality.
pub fn normalization_for_card(card: usize, tau: f64, alpha: f64) -> Result<f64> {
    if card == 0 {
        return Err(Error::Config("mode set is empty".into()));
    }
    if !(tau > 0.0) {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(Error::Domain(format!(
            "alpha must lie in (1, 2], got {alpha}"
        )));
    }
    Ok((card as f64).powf(-1.0 / alpha) * tau.powf((alpha - 1.0) / alpha))
}

/// Spatial average `⟨σ_k⟩^α = (1/2π) ∫_0^{2π} |sin t|^α dt` by quadrature.
pub fn spatial_average(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    // |sin| is symmetric over quarter periods.
    let quarter = quad::adaptive(
        &|t: f64| t.sin().powf(alpha),
        0.0,
        std::f64::consts::FRAC_PI_2,
        1e-13,
    );
    Ok(2.0 / std::f64::consts::PI * quarter)
}

/// Closed Γ-ratio form of the same average,
/// `Γ((α+1)/2) / (√π Γ(α/2 + 1))`, kept as an independent cross-check.
pub fn spatial_average_gamma_form(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    Ok(libm::tgamma((alpha + 1.0) / 2.0)
        / (std::f64::consts::PI.sqrt() * libm::tgamma(alpha / 2.0 + 1.0)))
}
