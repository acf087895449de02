//! End-to-end reproduction of the 2 x 2 x 2 counterexample as a list of
//! named pass/fail checks.

use num_complex::Complex64;
use serde::Serialize;

use crate::binary_cubic::BinaryCubic;
use crate::error::Result;
use crate::fixtures;
use crate::homotopy::{h_spectrum, HomotopyConfig};
use crate::spectrum::{projective_distance, SpectrumSummary};
use crate::tensor::{kron, reshape_singular_values};
use crate::zeig::{dominant_zeig, verify_kron_zeig, DEFAULT_STARTS};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Inputs of the reproduction. [`Inputs::reference`] is the reference pair;
/// tests may substitute altered tensors to exercise the failure path.
#[derive(Clone, Copy, Debug)]
pub struct Inputs {
    pub a: BinaryCubic,
    pub b: BinaryCubic,
    pub seed: u64,
}

impl Inputs {
    pub fn reference() -> Self {
        Self {
            a: fixtures::A,
            b: fixtures::B,
            seed: 0,
        }
    }

    /// The reference pair with `A(1,1,1)` moved from 0.3 to 0.31.
    pub fn corrupted() -> Self {
        Self {
            a: BinaryCubic {
                a: 0.31,
                ..fixtures::A
            },
            ..Self::reference()
        }
    }
}

/// Max distance from each expected value to its nearest found value, after
/// checking the counts agree.
fn match_values(found: &[Complex64], expected: &[Complex64]) -> f64 {
    if found.len() != expected.len() {
        return f64::INFINITY;
    }
    expected
        .iter()
        .map(|e| found.iter().map(|f| (f - e).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0f64, f64::max)
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

fn quartic_check(name: &'static str, t: &BinaryCubic, q: &[(i64, i64); 5]) -> Check {
    let want = fixtures::quartic_coeffs(q);
    let got = t.char_poly();
    let err = if got.degree() == 4 {
        got.coeffs()
            .iter()
            .zip(want)
            .map(|(c, w)| (c - w).norm())
            .fold(0.0f64, f64::max)
    } else {
        f64::INFINITY
    };
    check(name, err <= 1e-12, format!("max coefficient error {err:.3e}"))
}

fn spectrum_check(name: &'static str, s: &SpectrumSummary, expected: &[Complex64]) -> Check {
    let err = match_values(&s.eigenvalues(), expected);
    check(
        name,
        err <= 1e-9,
        format!("{} eigenvalues, max error {err:.3e}", s.found_count),
    )
}

fn det_check(name: &'static str, t: &BinaryCubic, s: &SpectrumSummary, want: f64) -> Check {
    let hd = t.hyperdet();
    let prod: Complex64 = s.eigenvalues().iter().product();
    let pass = (hd - want).abs() <= 1e-12 && (prod - hd).norm() <= 1e-8;
    check(
        name,
        pass,
        format!(
            "hyperdet {hd:.12}, product of eigenvalues {:.12}{:+.1e}i",
            prod.re, prod.im
        ),
    )
}

/// Runs every check. Errors are only returned for failures unrelated to the
/// numbers themselves; a solver that misses a value shows up as a failed
/// check.
pub fn run(inputs: &Inputs) -> Result<Report> {
    let mut checks = Vec::new();
    let (ta, tb) = (inputs.a.to_tensor(), inputs.b.to_tensor());
    let c = kron(&tb, &ta)?;

    let worst = fixtures::C_ENTRIES
        .iter()
        .map(|(idx, v)| {
            let i: Vec<usize> = idx.iter().map(|k| k - 1).collect();
            (c.get(&i) - v).abs()
        })
        .fold(0.0f64, f64::max);
    checks.push(check(
        "kron entries",
        worst <= 1e-15,
        format!("max entry error {worst:.3e}"),
    ));

    checks.push(quartic_check("quartic A", &inputs.a, &fixtures::QUARTIC_A));
    checks.push(quartic_check("quartic B", &inputs.b, &fixtures::QUARTIC_B));

    let cfg = HomotopyConfig::with_seed(inputs.seed);
    let quart_a = inputs.a.h_spectrum()?;
    let quart_b = inputs.b.h_spectrum()?;
    let hom_a = h_spectrum(&ta, &cfg)?.summary;
    let hom_b = h_spectrum(&tb, &cfg)?.summary;
    let (ea, eb) = (fixtures::eigenvalues_a(), fixtures::eigenvalues_b());
    checks.push(spectrum_check("spectrum A (quartic)", &quart_a, &ea));
    checks.push(spectrum_check("spectrum A (homotopy)", &hom_a, &ea));
    checks.push(spectrum_check("spectrum B (quartic)", &quart_b, &eb));
    checks.push(spectrum_check("spectrum B (homotopy)", &hom_b, &eb));
    checks.push(det_check("det A", &inputs.a, &quart_a, fixtures::HYPERDET_A));
    checks.push(det_check("det B", &inputs.b, &quart_b, fixtures::HYPERDET_B));

    let hom_c = h_spectrum(&c, &cfg)?.summary;
    let x_ref: Vec<Complex64> = fixtures::C_EIGENVECTOR.iter().map(|&v| v.into()).collect();
    let hit = hom_c
        .eigenpairs
        .iter()
        .map(|p| {
            (
                (p.lambda - fixtures::C_EIGENVALUE).norm(),
                projective_distance(&p.x, &x_ref),
            )
        })
        .min_by(|p, q| p.0.total_cmp(&q.0));
    let max_res = hom_c.eigenpairs.iter().map(|p| p.residual).fold(0.0f64, f64::max);
    let (dl, dx) = hit.unwrap_or((f64::INFINITY, f64::INFINITY));
    checks.push(check(
        "C eigenpair",
        dl <= 1e-6 && dx <= 1e-6 && max_res < 1e-8,
        format!("|Δλ| {dl:.3e}, vector distance {dx:.3e}, max residual {max_res:.3e}"),
    ));
    checks.push(check(
        "C eigenvalue count",
        hom_c.found_count == 32 && !hom_c.incomplete,
        format!(
            "{} of {} distinct eigenpairs",
            hom_c.found_count, hom_c.expected_count
        ),
    ));

    let product = quart_a.spectral_radius * quart_b.spectral_radius;
    let gap = hom_c.spectral_radius - product;
    let want_gap = fixtures::RHO_C - fixtures::RHO_A * fixtures::RHO_B;
    checks.push(check(
        "strict inequality",
        gap > 0.0 && (gap - want_gap).abs() <= 1e-9,
        format!(
            "rho(C) = {:.12} > rho(A) rho(B) = {:.12}, gap {gap:.6e}",
            hom_c.spectral_radius, product
        ),
    ));

    let svals = hom_c
        .dominant()
        .and_then(|p| reshape_singular_values(&p.x, ta.dim(), tb.dim()).ok());
    let sv_err = svals
        .as_ref()
        .map(|s| {
            s.iter()
                .zip(fixtures::C_RESHAPE_SVALS)
                .map(|(g, w)| (g - w).abs())
                .fold(0.0f64, f64::max)
        })
        .unwrap_or(f64::INFINITY);
    checks.push(check(
        "reshape singular values",
        sv_err <= 5e-3,
        match &svals {
            Some(s) => format!("({:.6}, {:.6})", s[0], s[1]),
            None => "dominant eigenvector is not real".into(),
        },
    ));

    let z = dominant_zeig(&ta, DEFAULT_STARTS, inputs.seed)
        .and_then(|u| Ok((u, dominant_zeig(&tb, DEFAULT_STARTS, inputs.seed)?)))
        .and_then(|(u, v)| verify_kron_zeig(&ta, &tb, &u, &v));
    checks.push(match z {
        Ok(k) => check(
            "Z-eigen factorization",
            k.pass,
            format!("lambda {:.12}, residual {:.3e}", k.lambda, k.residual),
        ),
        Err(e) => check("Z-eigen factorization", false, e.to_string()),
    });

    Ok(Report { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_passes() {
        let r = run(&Inputs::reference()).unwrap();
        for c in &r.checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
        assert_eq!(r.checks.len(), 14);
    }

    #[test]
    fn corrupted_fails_named_checks() {
        let r = run(&Inputs::corrupted()).unwrap();
        assert!(!r.passed());
        let names: Vec<_> = r.failures().map(|c| c.name).collect();
        assert!(names.contains(&"kron entries"));
        assert!(names.contains(&"quartic A"));
        assert!(!names.contains(&"quartic B"));
    }
}
