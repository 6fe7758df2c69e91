//! Seeded, platform-independent random and quasi-random sources.
//!
//! Monte-Carlo estimates in this crate must reproduce bit for bit across
//! platforms and thread counts, so instead of pulling in a generator whose
//! stream might change between versions we use SplitMix64, a 64-bit
//! shift-multiply generator with fixed published constants:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output = z ^ (z >> 31)
//! ```
//!
//! Parallel loops split the work into fixed-size batches and derive one
//! independent stream per batch as `SplitMix64::new(seed).split(batch_index)`,
//! so the sample set depends only on `(seed, batch layout)`, never on the
//! thread count.

/// 64-bit shift-multiply PRNG (SplitMix64).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Derives an independent stream for a work item; used to hand one
    /// generator to each Monte-Carlo batch.
    pub fn split(&self, index: u64) -> Self {
        let mut g = SplitMix64::new(self.state ^ 0xA5A5_A5A5_A5A5_A5A5);
        let a = g.next_u64();
        Self {
            state: a ^ index.wrapping_mul(0xD605_0B95_19B5_6A17),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform integer in [0, n).
    pub fn next_below(&mut self, n: u64) -> u64 {
        // Rejection keeps the draw exactly uniform.
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Uniform in [-1, 1)².
    pub fn next_vec2(&mut self) -> [f64; 2] {
        [2.0 * self.next_f64() - 1.0, 2.0 * self.next_f64() - 1.0]
    }
}

/// Additive low-discrepancy sequence on the unit square (the R2 sequence,
/// built on the plastic number 1.32471795…); used where a deterministic
/// quasi-uniform probe set is wanted instead of pseudo-random draws.
pub fn r2_point(k: u64) -> (f64, f64) {
    const A1: f64 = 0.754_877_666_246_692_7;
    const A2: f64 = 0.569_840_290_998_053_2;
    let k = k as f64;
    ((0.5 + A1 * k).fract(), (0.5 + A2 * k).fract())
}
