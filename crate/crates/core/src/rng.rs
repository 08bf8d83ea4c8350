//! Seedable splitmix64 stream.
//!
//! The state advances by a fixed odd increment per draw, so the state after
//! `k` draws is `seed + k * GOLDEN_GAMMA` (wrapping). Workers use this to jump
//! straight to any position of a single logical stream.

/// Additive state increment per draw.
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// 2^-53, the spacing of the unit-interval outputs.
const UNIT_SCALE: f64 = 1.0 / (1u64 << 53) as f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    /// The generator positioned `draws` steps further along the same stream.
    pub fn advanced(&self, draws: u64) -> Self {
        Self {
            state: self.state.wrapping_add(draws.wrapping_mul(GOLDEN_GAMMA)),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix(self.state)
    }

    /// Uniform draw in `[0, 1)` built from the top 53 bits of `next_u64`.
    #[inline]
    pub fn next_unit(&mut self) -> f64 {
        unit_from_bits(self.next_u64())
    }
}

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Maps raw generator output onto `[0, 1)`; every result is exactly representable.
#[inline]
pub fn unit_from_bits(value: u64) -> f64 {
    (value >> 11) as f64 * UNIT_SCALE
}
