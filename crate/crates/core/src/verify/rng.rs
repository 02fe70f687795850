//! The simulator's generator, spelled out so streams are reproducible in
//! any language: SplitMix64 for seeding, xorshift64* for the stream.
//!
//! ```text
//! splitmix64(z): z += 0x9E3779B97F4A7C15
//!                z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!                z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!                return z ^ (z >> 31)
//! stream state  = splitmix64(seed ^ splitmix64(worker)), or the golden
//!                 gamma if that is zero
//! next():        x ^= x >> 12; x ^= x << 25; x ^= x >> 27
//!                return x * 0x2545F4914F6CDD1D
//! uniform():     (next() >> 11) * 2^-53
//! ```
//! All arithmetic is wrapping on u64.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn from_state(state: u64) -> Self {
        XorShift64Star {
            state: if state == 0 { GOLDEN_GAMMA } else { state },
        }
    }

    /// Independent stream `worker` derived from a user seed.
    pub fn stream(seed: u64, worker: u64) -> Self {
        XorShift64Star::from_state(splitmix64(seed ^ splitmix64(worker)))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
