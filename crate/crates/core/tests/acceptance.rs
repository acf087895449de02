//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{multiset_distance, random_tensor, set_distance};
use kron_heig::homotopy::{h_spectrum, HomotopyConfig};
use kron_heig::search::{run_search, sample_pair, SamplingClass};
use kron_heig::spectrum::projective_distance;
use kron_heig::tensor::{kron, reshape_singular_values, SymTensor};
use kron_heig::zeig::{dominant_zeig, verify_kron_zeig, DEFAULT_STARTS};
use kron_heig::{cli, fixtures, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed of the uniform search; 29 of 200 pairs are counterexamples.
const SEARCH_SEED: u64 = 0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn within(elapsed: Duration, limit: Duration, msg: String) -> Outcome {
    ensure(elapsed < limit, format!("{msg}, {elapsed:.2?} (limit {limit:?})"))
}

fn product_spectrum() -> kron_heig::spectrum::SpectrumSummary {
    let c = kron(&fixtures::tensor_b(), &fixtures::tensor_a()).unwrap();
    h_spectrum(&c, &HomotopyConfig::default()).unwrap().summary
}

fn quartics() -> Outcome {
    let mut worst = 0.0f64;
    for (t, q) in [
        (fixtures::A, &fixtures::QUARTIC_A),
        (fixtures::B, &fixtures::QUARTIC_B),
    ] {
        let p = t.char_poly();
        if p.degree() != 4 {
            return Err(format!("degree {}", p.degree()));
        }
        for (c, w) in p.coeffs().iter().zip(fixtures::quartic_coeffs(q)) {
            worst = worst.max((c - w).norm());
        }
    }
    ensure(worst <= 1e-12, format!("max coefficient error {worst:.2e}"))
}

fn spectra_both_routes() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (t, want) in [
        (fixtures::A, fixtures::eigenvalues_a()),
        (fixtures::B, fixtures::eigenvalues_b()),
    ] {
        let q = t.h_spectrum().map_err(|e| e.to_string())?.eigenvalues();
        let h = h_spectrum(&t.to_tensor(), &HomotopyConfig::default())
            .map_err(|e| e.to_string())?
            .summary
            .eigenvalues();
        worst = worst
            .max(multiset_distance(&q, &want))
            .max(multiset_distance(&h, &want));
    }
    let msg = format!("max eigenvalue error {worst:.2e}");
    ensure(worst <= 1e-9, msg.clone())?;
    within(start.elapsed(), Duration::from_secs(1), msg)
}

fn hyperdeterminants() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, t, want) in [
        ("A", fixtures::A, fixtures::HYPERDET_A),
        ("B", fixtures::B, fixtures::HYPERDET_B),
    ] {
        let hd = t.hyperdet();
        let q: Complex64 = t.h_spectrum().unwrap().eigenvalues().iter().product();
        let h: Complex64 = h_spectrum(&t.to_tensor(), &HomotopyConfig::default())
            .unwrap()
            .summary
            .eigenvalues()
            .iter()
            .product();
        let err = (q - hd).norm().max((h - hd).norm());
        ok &= (hd - want).abs() <= 1e-12 && err <= 1e-8;
        notes.push(format!("det {name} = {hd:.6}, product error {err:.1e}"));
    }
    ensure(ok, notes.join("; "))
}

fn product_eigenpair() -> Outcome {
    let start = Instant::now();
    let s = product_spectrum();
    let elapsed = start.elapsed();
    let x = common::real(&fixtures::C_EIGENVECTOR);
    let best = s
        .eigenpairs
        .iter()
        .min_by(|p, q| {
            (p.lambda - fixtures::C_EIGENVALUE)
                .norm()
                .total_cmp(&(q.lambda - fixtures::C_EIGENVALUE).norm())
        })
        .ok_or("no eigenpairs")?;
    let dl = (best.lambda - fixtures::C_EIGENVALUE).norm();
    let dm = (best.lambda.norm() - fixtures::RHO_C).abs();
    let dx = projective_distance(&best.x, &x);
    let max_res = s.eigenpairs.iter().map(|p| p.residual).fold(0.0f64, f64::max);
    let msg = format!(
        "lambda {:.12} (|err| {dl:.1e}), vector distance {dx:.1e}, max residual {max_res:.1e}, {} of 32 eigenpairs",
        best.lambda.re, s.found_count
    );
    ensure(
        dl <= 1e-6 && dm <= 1e-6 && dx < 1e-6 && max_res < 1e-8 && s.found_count == 32,
        msg.clone(),
    )?;
    within(elapsed, Duration::from_secs(30), msg)
}

fn strict_inequality() -> Outcome {
    let rho_a = fixtures::A.h_spectrum().unwrap().spectral_radius;
    let rho_b = fixtures::B.h_spectrum().unwrap().spectral_radius;
    let rho_c = product_spectrum().spectral_radius;
    let gap = rho_c - rho_a * rho_b;
    let want = fixtures::RHO_C - fixtures::RHO_A * fixtures::RHO_B;
    ensure(
        gap > 0.0 && (gap - want).abs() < 1e-9 && (rho_a * rho_b - fixtures::RHO_B).abs() < 1e-12,
        format!(
            "rho(C) {rho_c:.12} > rho(A) rho(B) {:.12}, gap {gap:.4e}",
            rho_a * rho_b
        ),
    )
}

fn reshape_values() -> Outcome {
    let s = product_spectrum();
    let dom = s.dominant().ok_or("no eigenpairs")?;
    let sv = reshape_singular_values(&dom.x, 2, 2).map_err(|e| e.to_string())?;
    let err = (sv[0] - 0.995).abs().max((sv[1] - 0.105).abs());
    ensure(
        err <= 5e-3,
        format!("singular values ({:.4}, {:.4})", sv[0], sv[1]),
    )
}

fn z_factorization() -> Outcome {
    let mut pairs: Vec<(SymTensor, SymTensor)> = (0..50u64)
        .map(|s| {
            let (a, b) = sample_pair(1000 + s, SamplingClass::Uniform);
            (a.to_tensor(), b.to_tensor())
        })
        .collect();
    pairs.push((fixtures::tensor_a(), fixtures::tensor_b()));
    let mut worst = 0.0f64;
    for (k, (a, b)) in pairs.iter().enumerate() {
        let u = dominant_zeig(a, DEFAULT_STARTS, k as u64).map_err(|e| format!("pair {k}: {e}"))?;
        let v = dominant_zeig(b, DEFAULT_STARTS, k as u64).map_err(|e| format!("pair {k}: {e}"))?;
        let c = verify_kron_zeig(a, b, &u, &v).map_err(|e| e.to_string())?;
        worst = worst.max(c.residual);
    }
    ensure(
        worst < 1e-8,
        format!("{} pairs, max residual {worst:.1e}", pairs.len()),
    )
}

fn diagonal_corollary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let da: Vec<f64> = (0..2).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let db: Vec<f64> = (0..2).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let c = kron(
            &SymTensor::diagonal(3, &db).unwrap(),
            &SymTensor::diagonal(3, &da).unwrap(),
        )
        .unwrap();
        let s = h_spectrum(&c, &HomotopyConfig::default())
            .map_err(|e| e.to_string())?
            .summary;
        let products: Vec<Complex64> = db
            .iter()
            .flat_map(|b| da.iter().map(move |a| Complex64::new(a * b, 0.0)))
            .collect();
        worst = worst.max(set_distance(&s.eigenvalues(), &products));
    }
    ensure(
        worst <= 1e-7,
        format!("20 pairs, max distance to pairwise products {worst:.1e}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for s in 0..100u64 {
        let (t, _) = sample_pair(5000 + s, SamplingClass::Uniform);
        let q = t.h_spectrum().map_err(|e| e.to_string())?.eigenvalues();
        let h = h_spectrum(&t.to_tensor(), &HomotopyConfig::with_seed(s))
            .map_err(|e| e.to_string())?
            .summary
            .eigenvalues();
        let d = multiset_distance(&q, &h);
        if d > 1e-7 {
            return Err(format!("tensor {s} {:?}: distance {d:.1e}", t.as_array()));
        }
        worst = worst.max(d);
    }
    Ok(format!("100 tensors, max multiset distance {worst:.1e}"))
}

fn eigenvalue_count() -> Outcome {
    let mut complete = 0;
    let mut notes = Vec::new();
    for s in 0..10u64 {
        let t = random_tensor(3, 4, 700 + s);
        let res = h_spectrum(&t, &HomotopyConfig::with_seed(s)).map_err(|e| e.to_string())?;
        if res.summary.found_count == 32 {
            complete += 1;
        } else {
            notes.push(format!(
                "tensor {s}: {} found, {} converged / {} diverged / {} stalled paths",
                res.summary.found_count, res.stats.converged, res.stats.diverged, res.stats.stalled
            ));
        }
    }
    let mut msg = format!("{complete} of 10 tensors with all 32 eigenpairs");
    if !notes.is_empty() {
        msg = format!("{msg} ({})", notes.join("; "));
    }
    ensure(complete >= 9, msg)
}

fn search_finds_counterexample() -> Outcome {
    let start = Instant::now();
    let (_, summary) = run_search(SamplingClass::Uniform, 200, SEARCH_SEED);
    let msg = format!(
        "{} of {} pairs, max gap {:.3e}, {} skipped",
        summary.counterexamples, summary.evaluated, summary.max_gap, summary.skipped
    );
    ensure(
        summary.counterexamples >= 1 && summary.max_gap > 1e-8,
        msg.clone(),
    )?;
    within(start.elapsed(), Duration::from_secs(600), msg)
}

fn verify_command() -> Outcome {
    let start = Instant::now();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(["kron-heig", "verify-paper"], &mut out, &mut err);
    let elapsed = start.elapsed();
    let passed = String::from_utf8_lossy(&out)
        .lines()
        .filter(|l| l.starts_with("PASS"))
        .count();
    ensure(
        code == 0,
        format!(
            "exit {code}, {passed} checks passed {}",
            String::from_utf8_lossy(&err).trim()
        ),
    )?;
    within(
        elapsed,
        Duration::from_secs(60),
        format!("exit 0, {passed} checks passed"),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("characteristic quartics", quartics),
        ("eigenvalues by both routes", spectra_both_routes),
        ("hyperdeterminant = product of eigenvalues", hyperdeterminants),
        ("dominant eigenpair of the product", product_eigenpair),
        ("strict inequality", strict_inequality),
        ("reshaped eigenvector singular values", reshape_values),
        ("Z-eigen Kronecker factorization", z_factorization),
        ("diagonal corollary", diagonal_corollary),
        ("homotopy vs quartic oracle", oracle_equivalence),
        ("eigenvalue count n(m-1)^(n-1)", eigenvalue_count),
        ("random search", search_finds_counterexample),
        ("verify-paper", verify_command),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag}  {name}: {detail} [{:.2?}]",
            k + 1,
            start.elapsed()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
