//! Counter-based splittable random stream.
//!
//! The generator is a keyed SplitMix64: output `n` of a stream with key
//! `k` is `mix(k + (n+1)*GAMMA)` where `mix` is the Stafford "variant 13"
//! finalizer. Output depends only on `(key, position)`, so any draw can
//! be reproduced without replaying the stream, and disjoint substreams
//! are cheap: `substream(i)` re-keys with an independent mix of `(key, i)`.
//!
//! The scheme fixes the reproducibility contract used throughout the
//! crate:
//!
//! * an EA run expands its root seed into one substream per generation,
//!   and generation `t` consumes exactly `dimension` draws;
//! * Monte Carlo estimators expand a root seed into one substream per
//!   fixed-size chunk, so hit counts are exact integer sums independent
//!   of how chunks are scheduled across workers;
//! * Gaussian variates come from the inverse-cdf transform (one uniform
//!   draw each), never from rejection sampling, so draw counts are fixed.
//!
//! Determinism is promised within a build, not across languages.

use crate::special::normal_quantile;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const STREAM_GAMMA: u64 = 0xD1B5_4A32_D192_ED03;

/// Stafford variant 13 finalizer.
fn mix_stafford13(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Murmur3 finalizer; used for re-keying so substream derivation and
/// in-stream output go through different mixes.
fn mix_murmur3(mut z: u64) -> u64 {
    z ^= z >> 33;
    z = z.wrapping_mul(0xFF51_AFD7_ED55_8CCD);
    z ^= z >> 33;
    z = z.wrapping_mul(0xC4CE_B9FE_1A85_EC53);
    z ^ (z >> 33)
}

/// A counter-based pseudorandom stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    /// Stream keyed by a user-facing seed.
    pub fn from_seed(seed: u64) -> Self {
        CounterRng {
            key: mix_murmur3(seed ^ GOLDEN_GAMMA),
            counter: 0,
        }
    }

    /// Disjoint child stream `index` of this stream. Children of distinct
    /// indices, and streams derived at different depths, never share a key
    /// except by 64-bit accident.
    pub fn substream(&self, index: u64) -> Self {
        let child = mix_murmur3(
            self.key ^ mix_stafford13((index.wrapping_add(1)).wrapping_mul(STREAM_GAMMA)),
        );
        CounterRng {
            key: child,
            counter: 0,
        }
    }

    /// The stream key; a substream's key doubles as a derived seed.
    pub fn key(&self) -> u64 {
        self.key
    }

    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix_stafford13(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN_GAMMA)))
    }

    /// Uniform in the open interval (0, 1): (n + 0.5) / 2^53 over the top
    /// 53 bits, so the inverse-cdf transform below never sees 0 or 1.
    pub fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform in [lo, hi).
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * ((self.next_u64() >> 11) as f64) * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Standard normal variate via the inverse cdf; exactly one draw.
    pub fn next_standard_normal(&mut self) -> f64 {
        normal_quantile(self.next_open01())
    }
}

/// Derived per-run seed `index` under a root seed.
pub fn derive_seed(root: u64, index: u64) -> u64 {
    CounterRng::from_seed(root).substream(index).key()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_is_a_pure_function_of_position() {
        let mut a = CounterRng::from_seed(42);
        let first: Vec<u64> = (0..16).map(|_| a.next_u64()).collect();
        let mut b = CounterRng::from_seed(42);
        let second: Vec<u64> = (0..16).map(|_| b.next_u64()).collect();
        assert_eq!(first, second);
    }

    #[test]
    fn substreams_differ_from_parent_and_each_other() {
        let root = CounterRng::from_seed(7);
        let keys: Vec<u64> = (0..1000).map(|i| root.substream(i).key()).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), keys.len(), "substream key collision");
        assert!(!keys.contains(&root.key()));
    }

    #[test]
    fn sequential_seeds_are_decorrelated() {
        // Raw small seeds must not produce correlated outputs.
        let mut x = CounterRng::from_seed(1);
        let mut y = CounterRng::from_seed(2);
        let same = (0..64)
            .filter(|_| (x.next_u64() ^ y.next_u64()).count_ones() < 16)
            .count();
        assert_eq!(same, 0, "adjacent seeds share low-Hamming outputs");
    }

    #[test]
    fn open01_avoids_endpoints_and_looks_uniform() {
        let mut rng = CounterRng::from_seed(999);
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let u = rng.next_open01();
            assert!(u > 0.0 && u < 1.0);
            sum += u;
        }
        let mean = sum / n as f64;
        // sd of the mean is 1/sqrt(12 n) ~ 9.1e-4
        assert!((mean - 0.5).abs() < 4.0 * 9.2e-4, "mean {mean}");
    }

    #[test]
    fn standard_normal_moments() {
        let mut rng = CounterRng::from_seed(2023);
        let n = 200_000;
        let (mut s1, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let z = rng.next_standard_normal();
            s1 += z;
            s2 += z * z;
        }
        let mean = s1 / n as f64;
        let var = s2 / n as f64 - mean * mean;
        assert!(mean.abs() < 4.0 / (n as f64).sqrt(), "mean {mean}");
        assert!((var - 1.0).abs() < 4.0 * (2.0 / n as f64).sqrt(), "var {var}");
    }
}
