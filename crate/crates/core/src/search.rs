//! Random search for pairs `(A, B)` of 2 x 2 x 2 tensors whose Kronecker
//! product has H-spectral radius above `ρ(A)·ρ(B)`.
//!
//! The product `B ⊗ A` always has every `λ_A λ_B` among its H-eigenvalues,
//! so `ρ(B ⊗ A) ≥ ρ(A)·ρ(B)`; a strictly positive gap is a counterexample to
//! multiplicativity.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binary_cubic::BinaryCubic;
use crate::error::{Error, Result};
use crate::homotopy::system::rng_for;
use crate::homotopy::{h_spectrum, HomotopyConfig};
use crate::tensor::{kron, reshape_singular_values, SymTensor};

/// Gaps at or below this are treated as rounding noise.
pub const GAP_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingClass {
    /// Orbit values iid uniform on `[−1, 1]`.
    Uniform,
    /// Orbit values iid uniform on `[0.05, 1]`.
    Positive,
    /// `A(1,1,1)`, `A(2,2,2)` uniform on `[0.5, 1]`, the two mixed orbits
    /// uniform on `[−off_diagonal, off_diagonal]`.
    DiagonalDominant { off_diagonal: f64 },
}

impl SamplingClass {
    pub const DIAGONAL_DOMINANT: Self = Self::DiagonalDominant { off_diagonal: 0.1 };

    fn sample(&self, rng: &mut impl Rng) -> BinaryCubic {
        match *self {
            Self::Uniform => {
                let mut v = || rng.random_range(-1.0..=1.0);
                BinaryCubic::new(v(), v(), v(), v())
            }
            Self::Positive => {
                let mut v = || rng.random_range(0.05..=1.0);
                BinaryCubic::new(v(), v(), v(), v())
            }
            Self::DiagonalDominant { off_diagonal } => {
                let a = rng.random_range(0.5..=1.0);
                let (b, c) = if off_diagonal > 0.0 {
                    (
                        rng.random_range(-off_diagonal..=off_diagonal),
                        rng.random_range(-off_diagonal..=off_diagonal),
                    )
                } else {
                    (0.0, 0.0)
                };
                let d = rng.random_range(0.5..=1.0);
                BinaryCubic::new(a, b, c, d)
            }
        }
    }
}

impl FromStr for SamplingClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "positive" => Ok(Self::Positive),
            "diagonal-dominant" => Ok(Self::DIAGONAL_DOMINANT),
            other => Err(format!(
                "unknown sampling class `{other}` (expected uniform, positive or diagonal-dominant)"
            )),
        }
    }
}

impl fmt::Display for SamplingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Uniform => write!(f, "uniform"),
            Self::Positive => write!(f, "positive"),
            Self::DiagonalDominant { off_diagonal } => write!(f, "diagonal-dominant({off_diagonal})"),
        }
    }
}

/// Two random 2 x 2 x 2 symmetric tensors, reproducible from `seed`.
pub fn sample_pair(seed: u64, class: SamplingClass) -> (BinaryCubic, BinaryCubic) {
    let mut rng = rng_for(seed, 4);
    let a = class.sample(&mut rng);
    let b = class.sample(&mut rng);
    (a, b)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchRecord {
    pub index: usize,
    pub seed: u64,
    pub tensor_a: BinaryCubic,
    pub tensor_b: BinaryCubic,
    pub rho_a: f64,
    pub rho_b: f64,
    pub rho_c: f64,
    /// `rho_c − rho_a·rho_b`.
    pub gap: f64,
    pub is_counterexample: bool,
    /// Eigenvalue of `B ⊗ A` achieving `rho_c`.
    pub lambda_c: Complex64,
    /// Singular values of the maximizing eigenvector reshaped to 2 x 2, when
    /// that eigenvector is real.
    pub reshape_svals: Option<[f64; 2]>,
    /// Number of distinct eigenpairs found for `B ⊗ A` (32 when complete).
    pub found_c: usize,
}

/// Why a sample produced no record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Skipped {
    pub index: usize,
    pub seed: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchOutcome {
    Record(SearchRecord),
    Skipped(Skipped),
}

/// Compares `ρ_H(B ⊗ A)` (homotopy) with `ρ_H(A)·ρ_H(B)` (quartic route).
pub fn evaluate_pair(a: &SymTensor, b: &SymTensor, seed: u64) -> Result<SearchRecord> {
    let ca = BinaryCubic::from_tensor(a)?;
    let cb = BinaryCubic::from_tensor(b)?;
    let rho_a = ca.h_spectrum()?.spectral_radius;
    let rho_b = cb.h_spectrum()?.spectral_radius;
    let c = kron(b, a)?;
    let spectrum = h_spectrum(&c, &HomotopyConfig::with_seed(seed))?.summary;
    let dom = spectrum.dominant().ok_or(Error::Unsupported {
        what: "search",
        requirement: "at least one eigenpair of the Kronecker product",
    })?;
    let rho_c = spectrum.spectral_radius;
    let gap = rho_c - rho_a * rho_b;
    let reshape_svals = reshape_singular_values(&dom.x, a.dim(), b.dim())
        .ok()
        .map(|s| [s[0], s[1]]);
    Ok(SearchRecord {
        index: 0,
        seed,
        tensor_a: ca,
        tensor_b: cb,
        rho_a,
        rho_b,
        rho_c,
        gap,
        is_counterexample: gap > GAP_TOL,
        lambda_c: dom.lambda,
        reshape_svals,
        found_c: spectrum.found_count,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchSummary {
    pub class: SamplingClass,
    pub seed: u64,
    pub samples: usize,
    pub evaluated: usize,
    pub skipped: usize,
    pub counterexamples: usize,
    pub frequency: f64,
    pub max_gap: f64,
    pub best: Option<SearchRecord>,
}

/// Per-sample seed derived from the search seed (splitmix64 finalizer).
pub fn sample_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn evaluate_index(class: SamplingClass, seed: u64, index: usize) -> SearchOutcome {
    let s = sample_seed(seed, index);
    let (a, b) = sample_pair(s, class);
    match evaluate_pair(&a.to_tensor(), &b.to_tensor(), s) {
        Ok(mut r) => {
            r.index = index;
            SearchOutcome::Record(r)
        }
        Err(e) => SearchOutcome::Skipped(Skipped {
            index,
            seed: s,
            reason: e.to_string(),
        }),
    }
}

/// Evaluates `samples` random pairs, handing each outcome to `emit` in
/// sample order as soon as its batch is done.
pub fn run_search_streaming<F>(class: SamplingClass, samples: usize, seed: u64, mut emit: F) -> SearchSummary
where
    F: FnMut(&SearchOutcome),
{
    let batch = (2 * rayon::current_num_threads()).max(1);
    let mut summary = SearchSummary {
        class,
        seed,
        samples,
        evaluated: 0,
        skipped: 0,
        counterexamples: 0,
        frequency: 0.0,
        max_gap: f64::NEG_INFINITY,
        best: None,
    };
    let mut start = 0;
    while start < samples {
        let end = (start + batch).min(samples);
        let outcomes: Vec<SearchOutcome> = (start..end)
            .into_par_iter()
            .map(|i| evaluate_index(class, seed, i))
            .collect();
        for o in &outcomes {
            emit(o);
            match o {
                SearchOutcome::Record(r) => {
                    summary.evaluated += 1;
                    if r.is_counterexample {
                        summary.counterexamples += 1;
                    }
                    if r.gap > summary.max_gap {
                        summary.max_gap = r.gap;
                        summary.best = Some(r.clone());
                    }
                }
                SearchOutcome::Skipped(_) => summary.skipped += 1,
            }
        }
        start = end;
    }
    if summary.evaluated > 0 {
        summary.frequency = summary.counterexamples as f64 / summary.evaluated as f64;
    } else {
        summary.max_gap = 0.0;
    }
    summary
}

/// Collecting variant of [`run_search_streaming`].
pub fn run_search(class: SamplingClass, samples: usize, seed: u64) -> (Vec<SearchOutcome>, SearchSummary) {
    let mut out = Vec::with_capacity(samples);
    let summary = run_search_streaming(class, samples, seed, |o| out.push(o.clone()));
    (out, summary)
}

/// JSON-lines: one outcome per line, then the summary.
pub fn write_jsonl<W: Write>(outcomes: &[SearchOutcome], summary: &SearchSummary, mut w: W) -> Result<()> {
    for o in outcomes {
        serde_json::to_writer(&mut w, o)?;
        writeln!(w)?;
    }
    write_summary_line(summary, w)
}

pub fn write_summary_line<W: Write>(summary: &SearchSummary, mut w: W) -> Result<()> {
    serde_json::to_writer(
        &mut w,
        &serde_json::json!({ "kind": "summary", "summary": summary }),
    )?;
    writeln!(w)?;
    Ok(())
}

pub const CSV_HEADER: [&str; 14] = [
    "seed",
    "a_a",
    "a_b",
    "a_c",
    "a_d",
    "b_a",
    "b_b",
    "b_c",
    "b_d",
    "rho_a",
    "rho_b",
    "rho_c",
    "gap",
    "counterexample",
];

/// CSV export of the evaluated records (skipped samples are omitted).
pub fn write_csv<W: Write>(records: &[SearchRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    out.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in records {
        let mut row = vec![r.seed.to_string()];
        row.extend(r.tensor_a.as_array().iter().map(|v| v.to_string()));
        row.extend(r.tensor_b.as_array().iter().map(|v| v.to_string()));
        row.extend([r.rho_a, r.rho_b, r.rho_c, r.gap].iter().map(|v| v.to_string()));
        row.push(r.is_counterexample.to_string());
        out.write_record(&row).map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}
