#![allow(dead_code)]

use kron_heig::tensor::SymTensor;
use kron_heig::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Orbit values iid uniform on [−1, 1].
pub fn random_tensor(order: usize, dim: usize, seed: u64) -> SymTensor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orbits: Vec<(Vec<usize>, f64)> = SymTensor::zeros(order, dim)
        .unwrap()
        .orbits()
        .map(|(idx, _)| (idx, rng.random_range(-1.0..=1.0)))
        .collect();
    SymTensor::build_symmetric(order, dim, orbits).unwrap()
}

pub fn random_vec(dim: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

/// Greedy one-to-one matching; `INFINITY` when the sizes differ.
pub fn multiset_distance(p: &[Complex64], q: &[Complex64]) -> f64 {
    if p.len() != q.len() {
        return f64::INFINITY;
    }
    let mut left: Vec<Complex64> = q.to_vec();
    let mut worst = 0.0f64;
    for a in p {
        let (k, d) = left
            .iter()
            .enumerate()
            .map(|(k, b)| (k, (a - b).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        worst = worst.max(d);
        left.swap_remove(k);
    }
    worst
}

/// Symmetric Hausdorff distance between two point sets.
pub fn set_distance(p: &[Complex64], q: &[Complex64]) -> f64 {
    let one = |p: &[Complex64], q: &[Complex64]| {
        p.iter()
            .map(|a| q.iter().map(|b| (a - b).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0f64, f64::max)
    };
    one(p, q).max(one(q, p))
}

pub fn real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}
