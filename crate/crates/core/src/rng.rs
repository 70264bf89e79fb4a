//! Deterministic seeding and random exact inputs.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::SquareMat;
use crate::scalar::{gaussian, rational, Scalar};

pub type SeededRng = ChaCha8Rng;

/// SplitMix64 finalizer, used to derive independent per-index seeds.
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(base: u64, index: u64) -> u64 {
    mix(mix(base) ^ index.wrapping_mul(0xD134_2543_DE82_EF95))
}

pub fn rng_for(base: u64, index: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, index))
}

/// Random Gaussian rational with numerators in `-9..=9` and denominators in `1..=4`.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    gaussian(
        rational(rng.random_range(-9..=9), rng.random_range(1..=4)),
        rational(rng.random_range(-9..=9), rng.random_range(1..=4)),
    )
}

/// Random invertible exact matrix.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SquareMat<Scalar> {
    loop {
        let m = SquareMat::from_fn(n, |_, _| random_scalar(rng));
        if !m.det().is_zero() {
            return m;
        }
    }
}
