//! Splittable, counter-based random streams.
//!
//! Every stochastic component draws from an [`RngStream`] identified by a
//! `(seed, stream_id)` pair. Streams with distinct ids use distinct ChaCha
//! nonces, so they never share keystream blocks and are statistically
//! independent; the same `(seed, stream_id, draw index)` always reproduces
//! the same value regardless of what other streams were consumed.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Slot reserved for the per-particle mode-order stream (Fisher-Yates draws).
const ORDER_SLOT: u64 = 0xFFFF;
/// Modes occupy slots `0..ORDER_SLOT` within a particle's id block.
const SLOTS_PER_PARTICLE: u64 = 1 << 16;

/// A deterministic random stream.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut key = [0u8; 32];
        let mut state = seed;
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(stream_id);
        RngStream {
            seed,
            stream_id,
            rng,
        }
    }

    /// Stream feeding mode `mode_index` of particle `particle` in an ensemble.
    pub fn for_particle_mode(seed: u64, particle: u64, mode_index: u64) -> Self {
        debug_assert!(mode_index < ORDER_SLOT);
        Self::new(seed, (particle + 1) * SLOTS_PER_PARTICLE + mode_index)
    }

    /// Stream feeding the per-step mode-order permutation of `particle`.
    pub fn for_order(seed: u64, particle: u64) -> Self {
        Self::new(seed, (particle + 1) * SLOTS_PER_PARTICLE + ORDER_SLOT)
    }

    /// Stream for auxiliary consumers (bootstrap resampling, path index `i`).
    pub fn for_aux(seed: u64, index: u64) -> Self {
        Self::new(seed, index)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw in the open interval (0, 1).
    #[inline]
    pub fn uniform_open01(&mut self) -> f64 {
        // 53 significant bits; offset by half an ulp to exclude both endpoints.
        let bits = self.rng.next_u64() >> 11;
        (bits as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }

    /// Uniform draw in [0, 1).
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        let bits = self.rng.next_u64() >> 11;
        bits as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform integer in `0..n`.
    #[inline]
    pub fn below(&mut self, n: u64) -> u64 {
        // Multiply-shift with rejection of the biased band.
        debug_assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let v = self.rng.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}
