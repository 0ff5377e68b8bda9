//! Ensemble diagnostics: moment curves, power-law fits, histograms,
//! directional projections, Kolmogorov-Smirnov distances, and the scaling
//! fits for the limiting processes.

use crate::dynamics::TrajectoryEnsemble;
use crate::error::{Error, Result};
use crate::noise::NoiseKind;
use crate::rng::RngStream;
use serde::Serialize;

/// Bootstrap resamples behind every standard-error bar.
const BOOTSTRAP_RESAMPLES: usize = 200;
/// Stream id offset for bootstrap draws (below any particle stream block).
const BOOTSTRAP_STREAM: u64 = 0xB007;

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / std::f64::consts::SQRT_2))
}

/// `E|X_t|^β` estimates over the record times, with bootstrap errors.
#[derive(Debug, Clone, Serialize)]
pub struct MomentCurve {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub beta: f64,
    pub stderr: Vec<f64>,
    /// Set when the requested order is not below the stability index of a
    /// stable driver: the estimate is computed but formally divergent.
    pub divergent_moment_warning: bool,
}

/// Ordinary least-squares power-law fit on log-log axes.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SlopeFit {
    pub exponent: f64,
    pub log_intercept: f64,
    pub window: (f64, f64),
    pub r_squared: f64,
}

/// Normalized histogram estimate of a sample density.
#[derive(Debug, Clone, Serialize)]
pub struct PdfEstimate {
    pub bin_edges: Vec<f64>,
    pub densities: Vec<f64>,
    pub n_samples: usize,
}

impl PdfEstimate {
    pub fn bin_centers(&self) -> Vec<f64> {
        self.bin_edges
            .windows(2)
            .map(|w| 0.5 * (w[0] + w[1]))
            .collect()
    }
}

/// σ̄ estimates across a decreasing ladder of space scales with the fitted
/// multiplicative constant and η-exponent.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingSweep {
    pub etas: Vec<f64>,
    pub sigma_bars: Vec<f64>,
    /// Per-point constants `σ̄ / (u^{α/H} η^{1-α/H} τ^{(α-1)/H})`.
    pub lambdas: Vec<f64>,
    pub fitted_lambda: f64,
    pub fitted_eta_exponent: f64,
    pub h: f64,
}

/// Which limiting law the σ̄ inversion assumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitLaw {
    /// α-stable limit: σ̄ is the scale parameter of the 1-D law (the
    /// multiplier of a standard process is σ̄^{1/α}).
    Stable,
    /// Brownian limit: σ̄ is the standard-deviation multiplier.
    Gaussian,
}

/// Moment curve of a two-dimensional trajectory ensemble.
pub fn abs_moment_curve(ensemble: &TrajectoryEnsemble, beta: f64) -> Result<MomentCurve> {
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    let powered: Vec<Vec<f64>> = ensemble
        .positions
        .iter()
        .map(|slice| {
            slice
                .iter()
                .map(|p| (p[0] * p[0] + p[1] * p[1]).sqrt().powf(beta))
                .collect()
        })
        .collect();
    let mut curve = moment_curve_from_powers(
        &ensemble.times,
        &powered,
        beta,
        ensemble.config.seed,
    )?;
    curve.divergent_moment_warning = matches!(ensemble.config.noise.kind(), NoiseKind::Stable)
        && beta >= ensemble.config.noise.alpha();
    Ok(curve)
}

/// Moment curve of scalar samples indexed `[record][path]`, e.g. driver
/// paths `Z_t`.
pub fn abs_moment_curve_1d(
    times: &[f64],
    samples: &[Vec<f64>],
    beta: f64,
    seed: u64,
) -> Result<MomentCurve> {
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    let powered: Vec<Vec<f64>> = samples
        .iter()
        .map(|slice| slice.iter().map(|z| z.abs().powf(beta)).collect())
        .collect();
    moment_curve_from_powers(times, &powered, beta, seed)
}

fn moment_curve_from_powers(
    times: &[f64],
    powered: &[Vec<f64>],
    beta: f64,
    seed: u64,
) -> Result<MomentCurve> {
    if times.len() != powered.len() {
        return Err(Error::Estimation(format!(
            "{} record times but {} sample slices",
            times.len(),
            powered.len()
        )));
    }
    let n = powered.first().map_or(0, Vec::len);
    if n == 0 {
        return Err(Error::Estimation("no samples in the ensemble".into()));
    }
    let values: Vec<f64> = powered
        .iter()
        .map(|row| row.iter().sum::<f64>() / n as f64)
        .collect();

    // Bootstrap over paths: one shared index resampling per replicate.
    let mut rng = RngStream::for_aux(seed, BOOTSTRAP_STREAM);
    let mut accum = vec![(0.0f64, 0.0f64); times.len()];
    let mut indices = vec![0usize; n];
    for _ in 0..BOOTSTRAP_RESAMPLES {
        for slot in indices.iter_mut() {
            *slot = rng.below(n as u64) as usize;
        }
        for (t, row) in powered.iter().enumerate() {
            let mean = indices.iter().map(|&i| row[i]).sum::<f64>() / n as f64;
            accum[t].0 += mean;
            accum[t].1 += mean * mean;
        }
    }
    let r = BOOTSTRAP_RESAMPLES as f64;
    let stderr: Vec<f64> = accum
        .iter()
        .map(|&(s, s2)| ((s2 / r - (s / r) * (s / r)).max(0.0) * r / (r - 1.0)).sqrt())
        .collect();

    Ok(MomentCurve {
        times: times.to_vec(),
        values,
        beta,
        stderr,
        divergent_moment_warning: false,
    })
}

/// Least squares of `ln value` on `ln t` restricted to `window` (inclusive).
pub fn fit_loglog_slope(curve: &MomentCurve, window: (f64, f64)) -> Result<SlopeFit> {
    if !(window.0 < window.1) {
        return Err(Error::Fit(format!(
            "window must satisfy t_min < t_max, got {window:?}"
        )));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&t, &v) in curve.times.iter().zip(curve.values.iter()) {
        if t <= 0.0 || t < window.0 || t > window.1 {
            continue;
        }
        if !(v > 0.0) {
            return Err(Error::Fit(format!(
                "nonpositive moment value {v} at t={t} inside the fit window"
            )));
        }
        xs.push(t.ln());
        ys.push(v.ln());
    }
    if xs.len() < 5 {
        return Err(Error::Fit(format!(
            "need at least 5 curve points inside {window:?}, found {}",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    let xm = xs.iter().sum::<f64>() / n;
    let ym = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let syy: f64 = ys.iter().map(|y| (y - ym) * (y - ym)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("degenerate fit window (single time)".into()));
    }
    let exponent = sxy / sxx;
    let log_intercept = ym - exponent * xm;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - (exponent * x + log_intercept);
            e * e
        })
        .sum();
    let r_squared = if syy > 0.0 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(SlopeFit {
        exponent,
        log_intercept,
        window,
        r_squared,
    })
}

/// Equal-width histogram over the 0.1%-99.9% sample quantile range,
/// normalized to unit integral over that range.
pub fn estimate_pdf(samples: &[f64], n_bins: usize) -> Result<PdfEstimate> {
    if n_bins < 10 {
        return Err(Error::Estimation(format!(
            "need at least 10 bins, got {n_bins}"
        )));
    }
    if samples.len() < 100 {
        return Err(Error::Estimation(format!(
            "need at least 100 samples, got {}",
            samples.len()
        )));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("non-finite sample"));
    let quantile = |q: f64| {
        let idx = (q * (sorted.len() - 1) as f64).round() as usize;
        sorted[idx]
    };
    let lo = quantile(0.001);
    let hi = quantile(0.999);
    if !(hi > lo) {
        return Err(Error::Estimation(
            "degenerate sample range (all clipped values equal)".into(),
        ));
    }
    let width = (hi - lo) / n_bins as f64;
    let mut counts = vec![0usize; n_bins];
    let mut n_in = 0usize;
    for &x in &sorted {
        if x < lo || x > hi {
            continue;
        }
        let bin = (((x - lo) / width) as usize).min(n_bins - 1);
        counts[bin] += 1;
        n_in += 1;
    }
    let densities: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 / (n_in as f64 * width))
        .collect();
    let bin_edges: Vec<f64> = (0..=n_bins).map(|i| lo + i as f64 * width).collect();
    Ok(PdfEstimate {
        bin_edges,
        densities,
        n_samples: samples.len(),
    })
}

/// Projections `X_t · (cos θ, sin θ)` over all particles at a recorded time.
pub fn project_samples(ensemble: &TrajectoryEnsemble, theta: f64, t: f64) -> Result<Vec<f64>> {
    let idx = lookup_time(&ensemble.times, t)?;
    let (c, s) = (theta.cos(), theta.sin());
    Ok(ensemble.positions[idx]
        .iter()
        .map(|p| p[0] * c + p[1] * s)
        .collect())
}

fn lookup_time(times: &[f64], t: f64) -> Result<usize> {
    times
        .iter()
        .position(|&rt| (rt - t).abs() <= 1e-9 * t.abs().max(1.0))
        .ok_or_else(|| {
            Error::Lookup(format!(
                "t={t} is not a recorded time (range {:?}..{:?}, {} records)",
                times.first(),
                times.last(),
                times.len()
            ))
        })
}

/// One-sample Kolmogorov-Smirnov distance between the empirical law of
/// `samples` and a reference distribution function, both one-sided gaps
/// checked.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Estimation("no samples for the KS distance".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("non-finite sample"));
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - f).abs());
    }
    Ok(d)
}

/// Two-sample Kolmogorov-Smirnov distance between empirical laws.
pub fn ks_distance_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Estimation("empty sample in two-sample KS".into()));
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).expect("non-finite sample"));
    ys.sort_by(|p, q| p.partial_cmp(q).expect("non-finite sample"));
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(d)
}

/// Scale estimate of the limiting process from the first absolute moment of
/// the `e₁` projection at time `t`.
///
/// Stable case: inverts `E|Y| = (2Γ(1-1/α)/π)(σ̄ t)^{1/α}` so that σ̄ is the
/// scale parameter of the limiting 1-D law. Gaussian case: `E|Y| =
/// σ̄ √(2t/π)` makes σ̄ the standard-deviation multiplier.
pub fn estimate_sigma_bar(ensemble: &TrajectoryEnsemble, law: LimitLaw, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    let projections = project_samples(ensemble, 0.0, t)?;
    let m = projections.iter().map(|x| x.abs()).sum::<f64>() / projections.len() as f64;
    match law {
        LimitLaw::Stable => {
            let alpha = ensemble.config.field.alpha;
            let gamma = libm::tgamma(1.0 - 1.0 / alpha);
            Ok((m * std::f64::consts::PI / (2.0 * gamma)).powf(alpha) / t)
        }
        LimitLaw::Gaussian => Ok(m * (std::f64::consts::PI / 2.0).sqrt() / t.sqrt()),
    }
}

/// Fits the scaling relation `σ̄ = λ u^{α/H} η^{1-α/H} τ^{(α-1)/H}` to a
/// sweep of `(η, σ̄)` points: the η-exponent by least squares on log-log
/// axes, λ as the geometric mean of the per-point constants.
pub fn fit_lambda(
    sweep_data: &[(f64, f64)],
    u: f64,
    tau: f64,
    alpha: f64,
    h: f64,
) -> Result<ScalingSweep> {
    if !(u > 0.0 && tau > 0.0 && alpha > 1.0 && alpha <= 2.0 && h > 0.0) {
        return Err(Error::Domain(format!(
            "bad scaling parameters: u={u}, tau={tau}, alpha={alpha}, H={h}"
        )));
    }
    let mut points = sweep_data.to_vec();
    points.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("non-finite eta"));
    points.dedup_by(|a, b| a.0 == b.0);
    if points.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 distinct eta values, got {}",
            points.len()
        )));
    }
    for &(eta, sigma) in &points {
        if !(eta > 0.0) || !(sigma > 0.0) {
            return Err(Error::Fit(format!(
                "sweep points must be positive, got (eta={eta}, sigma_bar={sigma})"
            )));
        }
    }

    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let xm = xs.iter().sum::<f64>() / n;
    let ym = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let fitted_eta_exponent = sxy / sxx;

    let eta_power = 1.0 - alpha / h;
    let u_power = alpha / h;
    let tau_power = (alpha - 1.0) / h;
    let lambdas: Vec<f64> = points
        .iter()
        .map(|&(eta, sigma)| {
            sigma / (u.powf(u_power) * eta.powf(eta_power) * tau.powf(tau_power))
        })
        .collect();
    let fitted_lambda =
        (lambdas.iter().map(|l| l.ln()).sum::<f64>() / lambdas.len() as f64).exp();

    Ok(ScalingSweep {
        etas: points.iter().map(|p| p.0).collect(),
        sigma_bars: points.iter().map(|p| p.1).collect(),
        lambdas,
        fitted_lambda,
        fitted_eta_exponent,
        h,
    })
}
