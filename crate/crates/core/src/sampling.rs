//! Seeded random interactions for the verification suites.

use crate::interaction::UnitaryInteraction;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// φ uniform on [0, π), |α| = √u, independent uniform phases for α and β.
pub fn random_interaction<R: Rng>(rng: &mut R) -> UnitaryInteraction {
    let phi = rng.random::<f64>() * PI;
    let u: f64 = rng.random();
    let alpha = Complex64::from_polar(u.sqrt(), 2.0 * PI * rng.random::<f64>());
    let beta = Complex64::from_polar((1.0 - u).sqrt(), 2.0 * PI * rng.random::<f64>());
    UnitaryInteraction::from_parameters(phi, alpha, beta).expect("unit modulus by construction")
}

pub fn random_interactions(seed: u64, count: usize) -> Vec<UnitaryInteraction> {
    let mut r = rng(seed);
    (0..count).map(|_| random_interaction(&mut r)).collect()
}
