//! Particle transport along the stochastic characteristics.
//!
//! Each driving increment acts through the unit-time flow of its mode field.
//! Along the flow of a single sinusoidal mode the phase `k·x` is conserved
//! (`σ_k ⊥ k`), so `σ_k` is constant on its own flow line and the jump flow
//! is the exact translation `x ↦ x + amplitude·σ_k(x)`. A step of size `dt`
//! samples one increment per mode and composes these exact per-mode maps;
//! the composition order is randomized per step by default to symmetrize
//! splitting error.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{
    build_mode_set, normalization_for_card, sigma_eval, FieldParams, ModeSet, WaveMode,
};
use crate::noise::{sample_increment, NoiseSpec};
use crate::rng::RngStream;

/// Order in which the per-mode maps are composed within one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeOrder {
    /// Lexicographic enumeration order; kept for debugging.
    FixedLex,
    /// Fresh uniform permutation each step, drawn from a dedicated stream.
    RandomPermutationPerStep,
}

/// Complete, seedable description of one ensemble experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub field: FieldParams,
    pub noise: NoiseSpec,
    pub horizon: f64,
    pub dt: f64,
    pub n_particles: usize,
    pub seed: u64,
    /// Increasing sample times in `[0, horizon]`, starting at 0 and ending
    /// at `horizon`. Recording snaps each entry to the nearest step index.
    pub record_times: Vec<f64>,
    pub mode_order: ModeOrder,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.horizon > 0.0) {
            return Err(Error::Config(format!(
                "horizon must be positive, got {}",
                self.horizon
            )));
        }
        if !(self.dt > 0.0 && self.dt <= self.horizon) {
            return Err(Error::Config(format!(
                "dt must satisfy 0 < dt <= horizon, got dt={}, horizon={}",
                self.dt, self.horizon
            )));
        }
        let steps = self.horizon / self.dt;
        if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
            return Err(Error::Config(format!(
                "horizon must be an integer multiple of dt, got horizon/dt = {steps}"
            )));
        }
        if self.n_particles == 0 {
            return Err(Error::Config("n_particles must be at least 1".into()));
        }
        if (self.field.alpha - self.noise.alpha()).abs() > 1e-12 {
            return Err(Error::Config(format!(
                "field.alpha ({}) must equal noise.alpha ({})",
                self.field.alpha,
                self.noise.alpha()
            )));
        }
        if self.record_times.is_empty() {
            return Err(Error::Config("record_times must not be empty".into()));
        }
        if self.record_times[0] != 0.0 {
            return Err(Error::Config(format!(
                "record_times must start at 0, got {}",
                self.record_times[0]
            )));
        }
        let last = *self.record_times.last().unwrap();
        if (last - self.horizon).abs() > 1e-9 * self.horizon {
            return Err(Error::Config(format!(
                "record_times must end at the horizon {}, got {last}",
                self.horizon
            )));
        }
        for w in self.record_times.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Config(format!(
                    "record_times must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    pub fn n_steps(&self) -> usize {
        (self.horizon / self.dt).round() as usize
    }

    /// Geometric record grid: t = 0, then `points_per_decade` points per
    /// decade from `t_min` to the horizon, snapped to the step grid and
    /// deduplicated.
    pub fn geometric_record_times(
        horizon: f64,
        dt: f64,
        t_min: f64,
        points_per_decade: u32,
    ) -> Vec<f64> {
        let n_steps = (horizon / dt).round().max(1.0) as usize;
        let grid_time = |i: usize| {
            if i == n_steps {
                horizon
            } else {
                i as f64 * dt
            }
        };
        let mut indices = std::collections::BTreeSet::new();
        indices.insert(0usize);
        let ratio = 10.0_f64.powf(1.0 / points_per_decade.max(1) as f64);
        let mut t = t_min.max(dt);
        while t < horizon * (1.0 + 1e-12) {
            let idx = ((t / dt).round() as usize).clamp(1, n_steps);
            indices.insert(idx);
            t *= ratio;
        }
        indices.insert(n_steps);
        indices.into_iter().map(grid_time).collect()
    }
}

/// Recorded particle positions: `positions[record][particle]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryEnsemble {
    pub config: SimConfig,
    /// Record times snapped to the step grid (what the positions were
    /// actually sampled at).
    pub times: Vec<f64>,
    pub positions: Vec<Vec<[f64; 2]>>,
}

/// Exact Marcus jump flow of a single mode: `x + amplitude·σ_k(x)`.
///
/// The map is volume-preserving (unit Jacobian determinant) and inverted by
/// negating the amplitude.
#[inline]
pub fn mode_jump_map(mode: &WaveMode, x: [f64; 2], amplitude: f64) -> [f64; 2] {
    let s = sigma_eval(mode, x);
    [x[0] + amplitude * s[0], x[1] + amplitude * s[1]]
}

/// Reference unit-time flow of `dy/ds = amplitude·σ_k(y)` by classical RK4
/// with `n_substeps` uniform substeps. Converges to [`mode_jump_map`] and is
/// kept off the hot path as a cross-check.
pub fn mode_flow_oracle(
    mode: &WaveMode,
    x: [f64; 2],
    amplitude: f64,
    n_substeps: u32,
) -> [f64; 2] {
    rk4_flow(
        |y| {
            let s = sigma_eval(mode, y);
            [amplitude * s[0], amplitude * s[1]]
        },
        x,
        n_substeps.max(1),
    )
}

/// RK4 integration of `dy/ds = v(y)` over `s ∈ [0, 1]`.
pub(crate) fn rk4_flow<V: Fn([f64; 2]) -> [f64; 2]>(v: V, x: [f64; 2], n_substeps: u32) -> [f64; 2] {
    let h = 1.0 / n_substeps as f64;
    let mut y = x;
    for _ in 0..n_substeps {
        let k1 = v(y);
        let k2 = v([y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = v([y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = v([y[0] + h * k3[0], y[1] + h * k3[1]]);
        y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    }
    y
}

/// One Wong-Zakai step: draws an increment per mode over `dt` and composes
/// the per-mode jump maps with amplitudes `u·C(η,τ,α)·ΔZ_k` in the
/// configured order.
pub fn step(
    x: [f64; 2],
    modes: &ModeSet,
    config: &SimConfig,
    mode_streams: &mut [RngStream],
    order_stream: &mut RngStream,
) -> Result<[f64; 2]> {
    assert_eq!(
        mode_streams.len(),
        modes.len(),
        "one stream per mode required"
    );
    let coupling =
        config.field.u * normalization_for_card(modes.len(), config.field.tau, config.field.alpha)?;
    let mut amplitudes = Vec::with_capacity(modes.len());
    for stream in mode_streams.iter_mut() {
        amplitudes.push(coupling * sample_increment(&config.noise, config.dt, stream)?);
    }
    let mut perm: Vec<u32> = (0..modes.len() as u32).collect();
    if config.mode_order == ModeOrder::RandomPermutationPerStep {
        shuffle(&mut perm, order_stream);
    }
    Ok(apply_maps(x, modes, &amplitudes, &perm))
}

#[inline]
fn apply_maps(mut x: [f64; 2], modes: &ModeSet, amplitudes: &[f64], perm: &[u32]) -> [f64; 2] {
    for &idx in perm {
        x = mode_jump_map(&modes.modes[idx as usize], x, amplitudes[idx as usize]);
    }
    x
}

fn shuffle(perm: &mut [u32], rng: &mut RngStream) {
    for j in (1..perm.len()).rev() {
        let k = rng.below(j as u64 + 1) as usize;
        perm.swap(j, k);
    }
}

/// Runs `n_particles` independent trajectories from the origin and records
/// positions at the configured sample times.
///
/// Per-particle, per-mode streams are derived deterministically from
/// `(seed, particle, mode)`, so the output does not depend on the level of
/// parallelism.
pub fn run_ensemble(config: &SimConfig) -> Result<TrajectoryEnsemble> {
    let modes = build_mode_set(config.field.eta)?;
    run_ensemble_with_modes(config, &modes)
}

pub(crate) fn run_ensemble_with_modes(
    config: &SimConfig,
    modes: &ModeSet,
) -> Result<TrajectoryEnsemble> {
    config.validate()?;
    if modes.is_empty() {
        return Err(Error::Config("mode set is empty".into()));
    }
    if modes.len() >= 0xFFFF {
        return Err(Error::Config(format!(
            "mode count {} exceeds the per-particle stream budget",
            modes.len()
        )));
    }
    let n_steps = config.n_steps();
    let record_indices: Vec<usize> = config
        .record_times
        .iter()
        .map(|&t| ((t / config.dt).round() as usize).min(n_steps))
        .collect();
    let times: Vec<f64> = record_indices
        .iter()
        .map(|&i| {
            if i == n_steps {
                config.horizon
            } else {
                i as f64 * config.dt
            }
        })
        .collect();
    let coupling = config.field.u
        * normalization_for_card(modes.len(), config.field.tau, config.field.alpha)?;

    let per_particle: Vec<Result<Vec<[f64; 2]>>> = (0..config.n_particles)
        .into_par_iter()
        .map(|p| simulate_particle(p, config, modes, n_steps, &record_indices, coupling))
        .collect();

    // Scan in index order so error reporting is deterministic too.
    let mut tracks = Vec::with_capacity(config.n_particles);
    for track in per_particle {
        tracks.push(track?);
    }

    let mut positions = vec![Vec::with_capacity(config.n_particles); record_indices.len()];
    for track in &tracks {
        for (slot, &pos) in positions.iter_mut().zip(track.iter()) {
            slot.push(pos);
        }
    }
    Ok(TrajectoryEnsemble {
        config: config.clone(),
        times,
        positions,
    })
}

fn simulate_particle(
    particle: usize,
    config: &SimConfig,
    modes: &ModeSet,
    n_steps: usize,
    record_indices: &[usize],
    coupling: f64,
) -> Result<Vec<[f64; 2]>> {
    let mut streams: Vec<RngStream> = (0..modes.len())
        .map(|m| RngStream::for_particle_mode(config.seed, particle as u64, m as u64))
        .collect();
    let mut order_rng = RngStream::for_order(config.seed, particle as u64);
    let randomize = config.mode_order == ModeOrder::RandomPermutationPerStep;

    let mut x = [0.0f64; 2];
    let mut recorded = Vec::with_capacity(record_indices.len());
    let mut next_record = 0;
    while next_record < record_indices.len() && record_indices[next_record] == 0 {
        recorded.push(x);
        next_record += 1;
    }

    let mut amplitudes = vec![0.0f64; modes.len()];
    let mut perm: Vec<u32> = (0..modes.len() as u32).collect();
    for i in 1..=n_steps {
        for (amp, stream) in amplitudes.iter_mut().zip(streams.iter_mut()) {
            let dz = sample_increment(&config.noise, config.dt, stream).map_err(|e| {
                Error::Sampler(format!("particle {particle}, step {i}: {e}"))
            })?;
            *amp = coupling * dz;
        }
        if randomize {
            shuffle(&mut perm, &mut order_rng);
        }
        x = apply_maps(x, modes, &amplitudes, &perm);
        while next_record < record_indices.len() && record_indices[next_record] == i {
            recorded.push(x);
            next_record += 1;
        }
    }
    Ok(recorded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::{stable_cdf, NoiseSpec};
    use crate::stats::ks_distance;
    use std::f64::consts::PI;

    fn reference_config(noise: NoiseSpec, n_particles: usize, dt: f64) -> SimConfig {
        let horizon = 1.0;
        SimConfig {
            field: FieldParams::new(1.0, 1.0, 2.0 * PI / 20.0, noise.alpha()).unwrap(),
            noise,
            horizon,
            dt,
            n_particles,
            seed: 99,
            record_times: SimConfig::geometric_record_times(horizon, dt, 1e-2, 32),
            mode_order: ModeOrder::RandomPermutationPerStep,
        }
    }

    #[test]
    fn jump_map_spot_values() {
        let mode = WaveMode::new([2, 0]).unwrap();
        let s = 0.37;
        let moved = mode_jump_map(&mode, [0.0, 0.0], s);
        assert!((moved[0]).abs() < 1e-15);
        assert!((moved[1] - s * 2.0_f64.sqrt()).abs() < 1e-15);
        // k·x is conserved exactly.
        assert_eq!(moved[0] * 2.0, 0.0);

        let fixed = mode_jump_map(&mode, [PI / 4.0, 0.0], 123.0);
        assert_eq!(fixed, [PI / 4.0, 0.0]);
    }

    #[test]
    fn jump_map_conserves_phase() {
        let mut rng = RngStream::new(4, 0);
        let modes = build_mode_set(2.0 * PI / 20.0).unwrap();
        for _ in 0..200 {
            let mode = modes.modes[rng.below(modes.len() as u64) as usize];
            let x = [4.0 * (rng.uniform() - 0.5), 4.0 * (rng.uniform() - 0.5)];
            let amp = 3.0 * (rng.uniform() - 0.5);
            let y = mode_jump_map(&mode, x, amp);
            let before = mode.k[0] as f64 * x[0] + mode.k[1] as f64 * x[1];
            let after = mode.k[0] as f64 * y[0] + mode.k[1] as f64 * y[1];
            assert!((before - after).abs() < 1e-12 * before.abs().max(1.0));
        }
    }

    #[test]
    fn oracle_matches_jump_map() {
        let mut rng = RngStream::new(5, 0);
        let modes = build_mode_set(2.0 * PI / 20.0).unwrap();
        for _ in 0..1000 {
            let mode = modes.modes[rng.below(modes.len() as u64) as usize];
            let x = [6.0 * (rng.uniform() - 0.5), 6.0 * (rng.uniform() - 0.5)];
            let amp = 4.0 * (rng.uniform() - 0.5);
            let exact = mode_jump_map(&mode, x, amp);
            let reference = mode_flow_oracle(&mode, x, amp, 8);
            let err = ((exact[0] - reference[0]).powi(2) + (exact[1] - reference[1]).powi(2))
                .sqrt();
            assert!(err < 1e-10, "mode {:?}, err {err}", mode.k);
        }
    }

    #[test]
    fn oracle_trivial_cases() {
        let mode = WaveMode::new([2, 0]).unwrap();
        assert_eq!(mode_flow_oracle(&mode, [0.3, -0.2], 0.0, 4), [0.3, -0.2]);
        // Constant right-hand side on the flow line: one substep is exact.
        let one = mode_flow_oracle(&mode, [0.0, 0.0], 1.0, 1);
        assert!((one[1] - 2.0_f64.sqrt()).abs() < 1e-15 && one[0].abs() < 1e-15);
    }

    #[test]
    fn rk4_is_fourth_order_on_a_composite_field() {
        // A two-mode composite field varies along its own flow, so the RK4
        // error is visible; the reference is a very fine integration.
        let a = WaveMode::new([1, 2]).unwrap();
        let b = WaveMode::new([2, -1]).unwrap();
        let v = |y: [f64; 2]| {
            let sa = sigma_eval(&a, y);
            let sb = sigma_eval(&b, y);
            [0.9 * sa[0] + 0.7 * sb[0], 0.9 * sa[1] + 0.7 * sb[1]]
        };
        let x0 = [0.3, -0.7];
        let reference = rk4_flow(v, x0, 512);
        let errors: Vec<f64> = [2u32, 4, 8, 16]
            .iter()
            .map(|&n| {
                let y = rk4_flow(v, x0, n);
                ((y[0] - reference[0]).powi(2) + (y[1] - reference[1]).powi(2)).sqrt()
            })
            .collect();
        // Least-squares slope of ln(err) against ln(1/n).
        let xs: Vec<f64> = [2.0f64, 4.0, 8.0, 16.0].iter().map(|n| -n.ln()).collect();
        let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
        let xm = xs.iter().sum::<f64>() / 4.0;
        let ym = ys.iter().sum::<f64>() / 4.0;
        let slope = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (x - xm) * (y - ym))
            .sum::<f64>()
            / xs.iter().map(|x| (x - xm) * (x - xm)).sum::<f64>();
        assert!((slope - 4.0).abs() < 0.3, "order {slope}, errors {errors:?}");
    }

    #[test]
    fn inverse_amplitude_composition_is_identity() {
        let mut rng = RngStream::new(6, 0);
        let modes = build_mode_set(2.0 * PI / 20.0).unwrap();
        for _ in 0..500 {
            let mode = modes.modes[rng.below(modes.len() as u64) as usize];
            let x = [8.0 * (rng.uniform() - 0.5), 8.0 * (rng.uniform() - 0.5)];
            let amp = 5.0 * (rng.uniform() - 0.5);
            let there = mode_jump_map(&mode, x, amp);
            let back = mode_jump_map(&mode, there, -amp);
            assert!((back[0] - x[0]).abs() < 1e-14 && (back[1] - x[1]).abs() < 1e-14);
        }
    }

    fn fd_jacobian_det<F: Fn([f64; 2]) -> [f64; 2]>(map: F, x: [f64; 2]) -> f64 {
        let h = 1e-6;
        let fxp = map([x[0] + h, x[1]]);
        let fxm = map([x[0] - h, x[1]]);
        let fyp = map([x[0], x[1] + h]);
        let fym = map([x[0], x[1] - h]);
        let j11 = (fxp[0] - fxm[0]) / (2.0 * h);
        let j21 = (fxp[1] - fxm[1]) / (2.0 * h);
        let j12 = (fyp[0] - fym[0]) / (2.0 * h);
        let j22 = (fyp[1] - fym[1]) / (2.0 * h);
        j11 * j22 - j12 * j21
    }

    #[test]
    fn jump_map_is_volume_preserving() {
        let mut rng = RngStream::new(7, 0);
        let modes = build_mode_set(2.0 * PI / 20.0).unwrap();
        for _ in 0..200 {
            let mode = modes.modes[rng.below(modes.len() as u64) as usize];
            let x = [5.0 * (rng.uniform() - 0.5), 5.0 * (rng.uniform() - 0.5)];
            let amp = 2.0 * (rng.uniform() - 0.5);
            let det = fd_jacobian_det(|p| mode_jump_map(&mode, p, amp), x);
            assert!((det - 1.0).abs() < 1e-6, "det {det}");
        }
    }

    #[test]
    fn composed_step_is_volume_preserving() {
        let modes = build_mode_set(2.0 * PI / 20.0).unwrap();
        let mut rng = RngStream::new(8, 0);
        let amplitudes: Vec<f64> = (0..modes.len())
            .map(|_| 0.4 * (rng.uniform() - 0.5))
            .collect();
        let perm: Vec<u32> = (0..modes.len() as u32).collect();
        for _ in 0..50 {
            let x = [5.0 * (rng.uniform() - 0.5), 5.0 * (rng.uniform() - 0.5)];
            let det = fd_jacobian_det(|p| apply_maps(p, &modes, &amplitudes, &perm), x);
            assert!((det - 1.0).abs() < 1e-6, "det {det}");
        }
    }

    #[test]
    fn zero_amplitude_composition_is_identity() {
        let modes = build_mode_set(2.0 * PI / 20.0).unwrap();
        let amplitudes = vec![0.0; modes.len()];
        let perm: Vec<u32> = (0..modes.len() as u32).collect();
        let x = [0.4, -1.3];
        assert_eq!(apply_maps(x, &modes, &amplitudes, &perm), x);
    }

    #[test]
    fn single_mode_step_equals_one_jump_map() {
        let noise = NoiseSpec::stable(1.5, 1.0).unwrap();
        let mut config = reference_config(noise, 1, 0.125);
        config.mode_order = ModeOrder::FixedLex;
        let modes = ModeSet::custom(1.0, vec![WaveMode::new([2, 0]).unwrap()]);
        let mut streams = vec![RngStream::for_particle_mode(config.seed, 0, 0)];
        let mut order = RngStream::for_order(config.seed, 0);
        let x = [0.2, 0.1];
        let stepped = step(x, &modes, &config, &mut streams, &mut order).unwrap();

        let mut replay = RngStream::for_particle_mode(config.seed, 0, 0);
        let dz = sample_increment(&config.noise, config.dt, &mut replay).unwrap();
        let coupling = config.field.u * normalization_for_card(1, 1.0, 1.5).unwrap();
        let expected = mode_jump_map(&modes.modes[0], x, coupling * dz);
        assert_eq!(stepped, expected);
    }

    #[test]
    fn single_step_ensemble_matches_manual_steps() {
        let noise = NoiseSpec::stable(1.5, 1.0).unwrap();
        let dt = 1.0;
        let config = SimConfig {
            record_times: vec![0.0, 1.0],
            ..reference_config(noise, 3, dt)
        };
        let ensemble = run_ensemble(&config).unwrap();
        assert_eq!(ensemble.positions.len(), 2);
        assert_eq!(ensemble.positions[0], vec![[0.0, 0.0]; 3]);

        let modes = build_mode_set(config.field.eta).unwrap();
        for p in 0..3 {
            let mut streams: Vec<RngStream> = (0..modes.len())
                .map(|m| RngStream::for_particle_mode(config.seed, p as u64, m as u64))
                .collect();
            let mut order = RngStream::for_order(config.seed, p as u64);
            let manual = step([0.0, 0.0], &modes, &config, &mut streams, &mut order).unwrap();
            assert_eq!(ensemble.positions[1][p], manual);
        }
    }

    #[test]
    fn ensemble_is_reproducible_across_worker_counts() {
        let noise = NoiseSpec::stable(1.5, 1.0).unwrap();
        let config = reference_config(noise, 40, 0.05);
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| run_ensemble(&config).unwrap())
        };
        let single = run(1);
        let quad = run(4);
        assert_eq!(single.positions, quad.positions);
        assert_eq!(single.times, quad.times);
    }

    #[test]
    fn validation_rejects_inconsistent_configs() {
        let noise = NoiseSpec::stable(1.5, 1.0).unwrap();
        let good = reference_config(noise, 10, 0.1);
        assert!(good.validate().is_ok());

        let mut zero_particles = good.clone();
        zero_particles.n_particles = 0;
        assert!(zero_particles.validate().is_err());

        let mut alpha_mismatch = good.clone();
        alpha_mismatch.field.alpha = 1.7;
        assert!(alpha_mismatch.validate().is_err());

        let mut off_grid = good.clone();
        off_grid.dt = 0.3;
        assert!(off_grid.validate().is_err());

        let mut bad_records = good.clone();
        bad_records.record_times = vec![0.1, 1.0];
        assert!(bad_records.validate().is_err());
    }

    #[test]
    fn record_grid_is_snapped_and_deduplicated() {
        let times = SimConfig::geometric_record_times(1.0, 0.01, 0.01, 32);
        assert_eq!(times[0], 0.0);
        assert_eq!(*times.last().unwrap(), 1.0);
        for w in times.windows(2) {
            assert!(w[1] > w[0]);
            // Every time sits on the step grid.
            let steps = w[1] / 0.01;
            assert!((steps - steps.round()).abs() < 1e-9);
        }
    }

    #[test]
    fn single_mode_transport_projects_to_a_stable_law() {
        // On the line k·x = 0 the single-mode flow reduces to
        // X_t = u C √2 Z_t along k⊥/|k|, so the projection is 1-D stable
        // with scale (u C √2)^α · t.
        let alpha = 1.5;
        let noise = NoiseSpec::stable(alpha, 1.0).unwrap();
        let horizon = 1.0;
        let dt = 0.1;
        let config = SimConfig {
            field: FieldParams::new(1.0, 1.0, 1.0, alpha).unwrap(),
            noise,
            horizon,
            dt,
            n_particles: 10_000,
            seed: 314,
            record_times: vec![0.0, horizon],
            mode_order: ModeOrder::FixedLex,
        };
        let modes = ModeSet::custom(1.0, vec![WaveMode::new([2, 0]).unwrap()]);
        let ensemble = run_ensemble_with_modes(&config, &modes).unwrap();
        let final_slice = &ensemble.positions[1];
        let projections: Vec<f64> = final_slice.iter().map(|p| p[1]).collect();
        let scale = (2.0_f64.sqrt()).powf(alpha) * horizon;
        let d = ks_distance(&projections, |x| stable_cdf(alpha, scale, x).unwrap()).unwrap();
        assert!(d < 0.02, "ks distance {d}");
    }
}
