//! Seeded random instances.
//!
//! A hand-rolled SplitMix64 keeps generated channels bit-identical across
//! platforms and releases, which the file-generation command and the
//! seeded test suites rely on.

use crate::prob::{Channel, Distribution};

/// SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// A random full-support distribution: i.i.d. uniform weights, normalized.
pub fn random_distribution(n: usize, rng: &mut SplitMix64) -> Distribution {
    let weights: Vec<f64> = (0..n).map(|_| rng.next_f64() + 1e-12).collect();
    Distribution::from_weights(weights).expect("positive weights normalize")
}

/// A random channel: rows drawn i.i.d. uniform then normalized.
pub fn random_channel(x_size: usize, y_size: usize, rng: &mut SplitMix64) -> Channel {
    let rows: Vec<Distribution> = (0..x_size)
        .map(|_| random_distribution(y_size, rng))
        .collect();
    Channel::from_rows(rows).expect("normalized rows")
}
