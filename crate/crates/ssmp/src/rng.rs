//! Deterministic random number generation.
//!
//! Reproducibility is a hard requirement: a benchmark configuration with a
//! fixed seed must produce byte-identical output regardless of worker count
//! or library version. To that end the crate carries its own small generator
//! rather than depending on an external RNG whose stream might change across
//! releases: a SplitMix64 stream for uniform bits and the Box-Muller
//! transform for Gaussian variates. Both choices are fixed for the life of
//! the output format.

/// SplitMix64 generator (Steele, Lea, Flood 2014 mixing function).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
    spare_gaussian: Option<f64>,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed, spare_gaussian: None }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        mix(self.state)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, bound)`. `bound` must be nonzero.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Standard normal variate via Box-Muller; pairs are generated at once
    /// and the spare is cached.
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare_gaussian.take() {
            return z;
        }
        // u1 in (0, 1] so the logarithm stays finite.
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.next_f64();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        self.spare_gaussian = Some(radius * angle.sin());
        radius * angle.cos()
    }

    /// Random sign, +1.0 or -1.0.
    pub fn next_sign(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 { 1.0 } else { -1.0 }
    }
}

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive an independent stream seed from a master seed and up to three
/// coordinates (grid index, trial index, purpose). The derivation is a chain
/// of SplitMix64 finalizers, so streams for distinct coordinates are
/// decorrelated and the mapping is order-independent across workers.
pub fn derive_seed(master: u64, a: u64, b: u64, c: u64) -> u64 {
    let mut z = mix(master ^ 0x243f_6a88_85a3_08d3);
    z = mix(z ^ a.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = mix(z ^ b.wrapping_mul(0xc2b2_ae3d_27d4_eb4f));
    z = mix(z ^ c.wrapping_mul(0x1656_67b1_9e37_79f9));
    z
}
