//! Eigenpair and spectrum summary types shared by the quartic and homotopy
//! routes.

use num_complex::Complex64;
use serde::Serialize;

use crate::tensor::{hadamard_power, SymTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EigKind {
    H,
    Z,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigPair {
    pub lambda: Complex64,
    /// Unit 2-norm, largest-magnitude component real and positive.
    pub x: Vec<Complex64>,
    pub residual: f64,
    pub kind: EigKind,
    /// Number of solution paths (or polynomial roots) that landed on this pair.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DetCheck {
    pub product_of_eigenvalues: Complex64,
    pub hyperdeterminant: f64,
}

impl DetCheck {
    pub fn error(&self) -> f64 {
        (self.product_of_eigenvalues - self.hyperdeterminant).norm()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumSummary {
    pub eigenpairs: Vec<EigPair>,
    pub spectral_radius: f64,
    pub expected_count: usize,
    pub found_count: usize,
    pub det_check: Option<DetCheck>,
    /// Set when fewer eigenpairs than `expected_count` were found.
    pub incomplete: bool,
}

impl SpectrumSummary {
    pub(crate) fn new(mut eigenpairs: Vec<EigPair>, expected_count: usize) -> Self {
        sort_eigenpairs(&mut eigenpairs);
        let spectral_radius = eigenpairs.iter().fold(0.0f64, |m, p| m.max(p.lambda.norm()));
        let found_count = eigenpairs.len();
        Self {
            eigenpairs,
            spectral_radius,
            expected_count,
            found_count,
            det_check: None,
            incomplete: found_count < expected_count,
        }
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.eigenpairs.iter().map(|p| p.lambda).collect()
    }

    /// The eigenpair achieving the spectral radius.
    pub fn dominant(&self) -> Option<&EigPair> {
        self.eigenpairs.first()
    }
}

/// Descending modulus, then ascending real and imaginary parts.
pub(crate) fn sort_eigenpairs(pairs: &mut [EigPair]) {
    pairs.sort_by(|p, q| {
        q.lambda
            .norm()
            .total_cmp(&p.lambda.norm())
            .then(p.lambda.re.total_cmp(&q.lambda.re))
            .then(p.lambda.im.total_cmp(&q.lambda.im))
    });
}

/// `n (m - 1)^{n - 1}`, the number of H-eigenvalues counted with multiplicity.
pub fn expected_h_count(dim: usize, order: usize) -> usize {
    dim * (order - 1).pow(dim as u32 - 1)
}

/// `‖A x^{m-1} - λ x^{[m-1]}‖₂`.
pub fn h_residual(a: &SymTensor, lambda: Complex64, x: &[Complex64]) -> f64 {
    let ax = a.contract(x).expect("dimension checked by caller");
    let xp = hadamard_power(x, a.order() as u32 - 1);
    ax.iter()
        .zip(&xp)
        .map(|(l, r)| (l - lambda * r).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Scales `x` to unit norm and rotates its phase so the component of largest
/// magnitude is real and positive.
pub fn canonicalize(x: &[Complex64]) -> Vec<Complex64> {
    let nrm = norm(x);
    let pivot = x
        .iter()
        .copied()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.norm().total_cmp(&b.norm()).then(j.cmp(i)))
        .map(|(_, z)| z)
        .unwrap_or(Complex64::new(1.0, 0.0));
    let phase = if pivot.norm() > 0.0 {
        pivot.conj() / pivot.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    x.iter().map(|z| z * phase / nrm).collect()
}

/// `min_t ‖x̂ - t ŷ‖` over complex `t`, where hats denote unit vectors.
pub fn projective_distance(x: &[Complex64], y: &[Complex64]) -> f64 {
    let nx = norm(x);
    let ny = norm(y);
    // <y, x> / (|x| |y|^2) is the optimal multiplier for the unit x.
    let inner: Complex64 = x.iter().zip(y).map(|(a, b)| b.conj() * a).sum();
    let t = inner / (nx * ny * ny);
    x.iter()
        .zip(y)
        .map(|(a, b)| (a / nx - b * t).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
