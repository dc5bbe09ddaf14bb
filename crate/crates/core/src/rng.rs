//! Seeded randomness with a fixed, portable stream discipline.
//!
//! All randomness comes from ChaCha20 (`rand_chacha::ChaCha20Rng`) keyed by
//! the 64-bit seed in little-endian order followed by 24 zero bytes. Distinct
//! consumers use distinct ChaCha stream ids, so independent draws never
//! share keystream:
//!
//! | stream            | consumer                                    |
//! |-------------------|---------------------------------------------|
//! | `0`               | [`identity_from_seed`](crate::concat::identity_from_seed) |
//! | `1`               | experiment setup (fixed identity, fixed j)  |
//! | `2 + b`           | trial block `b` of a Monte Carlo experiment |
//!
//! Integers below a bound `n` are drawn by rejection: take `next_u64()`,
//! retry while it falls in the final partial copy of `[0, n)`, return the
//! value mod `n`. 128-bit draws take the high word first.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

pub const IDENTITY_STREAM: u64 = 0;
pub const SETUP_STREAM: u64 = 1;
pub const FIRST_TRIAL_STREAM: u64 = 2;

pub fn stream(seed: u64, stream_id: u64) -> ChaCha20Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    let mut rng = ChaCha20Rng::from_seed(key);
    rng.set_stream(stream_id);
    rng
}

/// Uniform in `[0, n)`, `n >= 1`.
pub fn below_u64<R: RngCore + ?Sized>(rng: &mut R, n: u64) -> u64 {
    assert!(n > 0);
    // 2^64 mod n
    let waste = (u64::MAX % n + 1) % n;
    loop {
        let x = rng.next_u64();
        if waste == 0 || x <= u64::MAX - waste {
            return x % n;
        }
    }
}

/// Uniform in `[0, n)`, `n >= 1`.
pub fn below_u128<R: RngCore + ?Sized>(rng: &mut R, n: u128) -> u128 {
    assert!(n > 0);
    if n <= u64::MAX as u128 + 1 {
        if n == u64::MAX as u128 + 1 {
            return rng.next_u64() as u128;
        }
        return below_u64(rng, n as u64) as u128;
    }
    let waste = (u128::MAX % n + 1) % n;
    loop {
        let hi = rng.next_u64() as u128;
        let lo = rng.next_u64() as u128;
        let x = (hi << 64) | lo;
        if waste == 0 || x <= u128::MAX - waste {
            return x % n;
        }
    }
}
