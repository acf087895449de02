//! Real Z-eigenpairs (`A x^{m−1} = λ x`, `‖x‖ = 1`) by the shifted symmetric
//! higher-order power method, and the Kronecker factorization check for
//! them.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homotopy::system::rng_for;
use crate::tensor::{kron, kron_vec, SymTensor};

#[derive(Clone, Debug, Serialize)]
pub struct ZEigPair {
    pub lambda: f64,
    pub x: Vec<f64>,
    /// `‖A x^{m−1} − λ x‖`.
    pub residual: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Shift of the power iteration. Positive shifts climb to local maxima of
/// `x·A x^{m−1}` on the sphere, negative ones descend to local minima.
#[derive(Clone, Copy, Debug)]
pub enum Shift {
    Fixed(f64),
    /// Recomputed at every iterate from a Gershgorin bound on the Hessian
    /// `m(m−1) A x^{m−2}`, just large enough to keep the shifted objective
    /// convex (concave when minimizing). Usually far smaller than
    /// [`default_shift`], hence fewer iterations.
    Adaptive {
        maximize: bool,
    },
}

/// `1 + m · max|a| · n^{m−1}`, large enough to make the shifted objective
/// convex on the sphere.
impl Shift {
    fn maximizes(&self) -> bool {
        match *self {
            Shift::Fixed(s) => s >= 0.0,
            Shift::Adaptive { maximize } => maximize,
        }
    }
}

pub fn default_shift(a: &SymTensor) -> f64 {
    1.0 + a.order() as f64 * a.max_abs() * (a.dim() as f64).powi(a.order() as i32 - 1)
}

/// Convexity margin of the adaptive shift.
const ADAPTIVE_TAU: f64 = 1e-6;

/// Adaptive shift at `x`: `max(0, (τ − μ)/m)` with `μ` a lower bound on the
/// smallest Hessian eigenvalue, negated bound when minimizing.
fn adaptive_shift(a: &SymTensor, x: &[f64], maximize: bool) -> Result<f64> {
    let n = a.dim();
    let m = a.order() as f64;
    let xc: Vec<num_complex::Complex64> = x.iter().map(|&v| v.into()).collect();
    let mat = a.contract_to_matrix(&xc)?;
    let h = |i: usize, j: usize| m * (m - 1.0) * mat[i * n + j].re;
    let sign = if maximize { 1.0 } else { -1.0 };
    // Gershgorin bound on the extreme eigenvalue of ±H
    let mu = (0..n)
        .map(|i| {
            let off: f64 = (0..n).filter(|&j| j != i).map(|j| h(i, j).abs()).sum();
            sign * h(i, i) - off
        })
        .fold(f64::INFINITY, f64::min);
    Ok(sign * ((ADAPTIVE_TAU - mu) / m).max(0.0))
}

pub const LAMBDA_TOL: f64 = 1e-13;
/// Residual a run must also reach to count as converged.
pub const RESIDUAL_TOL: f64 = 1e-11;

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

pub fn z_residual(a: &SymTensor, lambda: f64, x: &[f64]) -> f64 {
    let ax = a.contract_real(x).expect("dimension checked by caller");
    ax.iter()
        .zip(x)
        .map(|(l, r)| (l - lambda * r).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// One shifted power step from unit `x`; returns the new unit iterate and
/// its eigenvalue estimate.
fn step(
    a: &SymTensor,
    x: &[f64],
    ax: &[f64],
    alpha: f64,
    maximize: bool,
) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut y: Vec<f64> = ax.iter().zip(x).map(|(g, v)| sign * (g + alpha * v)).collect();
    let ny = norm(&y);
    if ny <= 1e-300 || !ny.is_finite() {
        return Err(Error::ZeroIterate);
    }
    y.iter_mut().for_each(|v| *v /= ny);
    let ay = a.contract_real(&y)?;
    let lambda = dot(&y, &ay);
    Ok((y, ay, lambda))
}

/// SS-HOPM from `start`. Stops when successive eigenvalue estimates differ
/// by less than [`LAMBDA_TOL`] and the residual is below [`RESIDUAL_TOL`].
pub fn sshopm(a: &SymTensor, shift: Shift, start: &[f64], max_iters: usize) -> Result<ZEigPair> {
    sshopm_trace(a, shift, start, max_iters).map(|(p, _)| p)
}

/// Like [`sshopm`], also returning the eigenvalue estimate of every iterate.
pub fn sshopm_trace(
    a: &SymTensor,
    shift: Shift,
    start: &[f64],
    max_iters: usize,
) -> Result<(ZEigPair, Vec<f64>)> {
    if start.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: start.len(),
        });
    }
    let n0 = norm(start);
    if n0 <= 0.0 || !n0.is_finite() {
        return Err(Error::ZeroIterate);
    }
    let mut x: Vec<f64> = start.iter().map(|v| v / n0).collect();
    let mut ax = a.contract_real(&x)?;
    let mut lambda = dot(&x, &ax);
    let mut trace = vec![lambda];

    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iters {
        let residual = z_residual(a, lambda, &x);
        if residual < RESIDUAL_TOL && iterations > 0 {
            let prev = trace[trace.len() - 2];
            if (lambda - prev).abs() < LAMBDA_TOL {
                converged = true;
                break;
            }
        }
        iterations += 1;
        let alpha = match shift {
            Shift::Fixed(s) => s,
            Shift::Adaptive { maximize } => adaptive_shift(a, &x, maximize)?,
        };
        let (y, ay, l) = step(a, &x, &ax, alpha, shift.maximizes())?;
        x = y;
        ax = ay;
        lambda = l;
        trace.push(lambda);
    }
    if !converged {
        let prev = trace[trace.len().saturating_sub(2)];
        converged = (lambda - prev).abs() < LAMBDA_TOL && z_residual(a, lambda, &x) < RESIDUAL_TOL;
    }
    let residual = z_residual(a, lambda, &x);
    Ok((
        ZEigPair {
            lambda,
            x,
            residual,
            converged,
            iterations,
        },
        trace,
    ))
}

pub const DEFAULT_STARTS: usize = 20;
pub const DEFAULT_MAX_ITERS: usize = 10_000;

/// Random unit start vectors, deterministic in `seed`.
pub fn random_starts(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng_for(seed, 3);
    (0..count)
        .map(|_| loop {
            let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
            let nv = norm(&v);
            if nv > 1e-3 {
                break v.into_iter().map(|c| c / nv).collect();
            }
        })
        .collect()
}

/// Largest-|λ| Z-eigenpair over `starts` random starts, each run with both
/// shift signs. Ties go to the earliest start (maximizing run first).
///
/// For odd order `(λ, x)` and `(−λ, −x)` are both eigenpairs; the one with
/// `λ ≥ 0` is returned.
pub fn dominant_zeig(a: &SymTensor, starts: usize, seed: u64) -> Result<ZEigPair> {
    let runs: Vec<(ZEigPair, usize)> = random_starts(a.dim(), starts, seed)
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, s)| {
            [true, false]
                .into_iter()
                .enumerate()
                .filter_map(move |(j, maximize)| {
                    sshopm(a, Shift::Adaptive { maximize }, s, DEFAULT_MAX_ITERS)
                        .ok()
                        .filter(|p| p.converged)
                        .map(|p| (p, 2 * k + j))
                })
        })
        .collect();
    runs.into_iter()
        .reduce(|best, cur| {
            if cur.0.lambda.abs() > best.0.lambda.abs() {
                cur
            } else {
                best
            }
        })
        .map(|(mut p, _)| {
            if a.order() % 2 == 1 && p.lambda < 0.0 {
                p.lambda = -p.lambda;
                p.x.iter_mut().for_each(|v| *v = -*v);
            }
            p
        })
        .ok_or(Error::NoConvergedRun)
}

#[derive(Clone, Debug, Serialize)]
pub struct KronZCheck {
    pub lambda: f64,
    pub residual: f64,
    pub pass: bool,
}

pub const KRON_Z_TOL: f64 = 1e-8;

/// Checks that `(λ_A λ_B, v ⊗ u)` is a Z-eigenpair of `B ⊗ A`.
pub fn verify_kron_zeig(a: &SymTensor, b: &SymTensor, u: &ZEigPair, v: &ZEigPair) -> Result<KronZCheck> {
    let c = kron(b, a)?;
    let w = kron_vec(&v.x, &u.x);
    let lambda = u.lambda * v.lambda;
    let residual = z_residual(&c, lambda, &w);
    Ok(KronZCheck {
        lambda,
        residual,
        pass: residual < KRON_Z_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary_cubic::BinaryCubic;

    #[test]
    fn diagonal_fixed_point() {
        let d = SymTensor::diagonal(3, &[2.0, 5.0]).unwrap();
        let p = sshopm(&d, Shift::Fixed(6.0), &[0.1, 1.0], 10_000).unwrap();
        assert!(p.converged);
        assert!((p.lambda - 5.0).abs() < 1e-12);
        assert!(p.x[0].abs() < 1e-6 && (p.x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvector_start_is_fixed() {
        let a = BinaryCubic::new(0.3, -0.3, 0.0, 1.0).to_tensor();
        // e2 is a Z-eigenvector with λ = 1
        for shift in [
            Shift::Fixed(default_shift(&a)),
            Shift::Adaptive { maximize: true },
        ] {
            let p = sshopm(&a, shift, &[0.0, 1.0], 100).unwrap();
            assert!(p.converged);
            assert_eq!(p.x, vec![0.0, 1.0]);
            assert_eq!(p.lambda, 1.0);
        }
    }

    #[test]
    fn diagonal_dominant() {
        let d = SymTensor::diagonal(3, &[0.4, 1.7]).unwrap();
        let p = dominant_zeig(&d, 10, 3).unwrap();
        assert!((p.lambda - 1.7).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let a = BinaryCubic::new(0.3, -0.3, 0.0, 1.0).to_tensor();
        assert!(matches!(
            sshopm(&a, Shift::Fixed(1.0), &[0.0, 0.0], 10),
            Err(Error::ZeroIterate)
        ));
        assert!(matches!(
            sshopm(&a, Shift::Fixed(1.0), &[1.0], 10),
            Err(Error::DimensionMismatch { .. })
        ));
        // zero tensor with zero shift sends any start to the zero vector
        let z = SymTensor::zeros(3, 2).unwrap();
        assert!(matches!(
            sshopm(&z, Shift::Fixed(0.0), &[1.0, 0.0], 10),
            Err(Error::ZeroIterate)
        ));
    }

    #[test]
    fn not_scale_invariant() {
        let a = BinaryCubic::new(0.7, -0.2, -0.2, -0.8).to_tensor();
        let p = dominant_zeig(&a, 20, 0).unwrap();
        let x2: Vec<f64> = p.x.iter().map(|v| 2.0 * v).collect();
        let ax = a.contract_real(&p.x).unwrap();
        let ax2 = a.contract_real(&x2).unwrap();
        for i in 0..2 {
            assert!((ax2[i] - 4.0 * ax[i]).abs() < 1e-14);
        }
        // (λ, 2x) is not a Z-eigenpair: A(2x)² = 4λx ≠ λ(2x)
        assert!(z_residual(&a, p.lambda, &x2) > 0.5 * p.lambda.abs());
    }

    #[test]
    fn kron_check_on_diagonals_is_exact() {
        let da = SymTensor::diagonal(3, &[0.5, 2.0]).unwrap();
        let db = SymTensor::diagonal(3, &[-1.5, 0.25]).unwrap();
        let u = sshopm(&da, Shift::Fixed(10.0), &[0.0, 1.0], 100).unwrap();
        let v = sshopm(&db, Shift::Fixed(10.0), &[1.0, 0.0], 100).unwrap();
        let check = verify_kron_zeig(&da, &db, &u, &v).unwrap();
        assert!(check.pass);
        assert_eq!(check.residual, 0.0);
        assert_eq!(check.lambda, -3.0);
    }
}
