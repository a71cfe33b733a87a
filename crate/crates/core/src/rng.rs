//! Seeded randomness for generic-element choices. ChaCha keeps streams
//! identical across platforms.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Scalar;

pub const DEFAULT_SEED: u64 = 42;

/// Number of fresh random draws attempted before giving up.
pub const RETRIES: usize = 8;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform sample in `[-1, 1]`.
pub fn unit<T: Scalar>(rng: &mut SeededRng) -> T {
    T::lit(rng.random_range(-1.0..=1.0))
}

pub fn vector<T: Scalar>(rng: &mut SeededRng, n: usize) -> DVector<T> {
    DVector::from_fn(n, |_, _| unit(rng))
}

pub fn matrix<T: Scalar>(rng: &mut SeededRng, r: usize, c: usize) -> DMatrix<T> {
    DMatrix::from_fn(r, c, |_, _| unit(rng))
}

/// Random combination of the columns of `basis`.
pub fn element_of<T: Scalar>(rng: &mut SeededRng, basis: &DMatrix<T>) -> DVector<T> {
    basis * vector(rng, basis.ncols())
}
