//! All complex H-eigenpairs of a small symmetric tensor by homotopy
//! continuation.
//!
//! The target system is `A x^{m−1} − λ x^{[m−1]} = 0` together with a random
//! affine normalization `b·x = 1`. It is reached from a total-degree start
//! system (`mⁿ` paths) through the γ-homotopy `(1 − t)·γ·G + t·F`. Paths are
//! independent and tracked in parallel; endpoints are sorted before
//! clustering so the result does not depend on scheduling.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binary_cubic::BinaryCubic;
use crate::error::{Error, Result};
use crate::spectrum::{
    canonicalize, expected_h_count, h_residual, projective_distance, DetCheck, EigKind, EigPair,
    SpectrumSummary,
};
use crate::tensor::SymTensor;

pub mod system;
pub mod tracker;

pub use system::{EigSystem, PolySystem, StartSystem};
pub use tracker::{Homotopy, PathResult, PathStatus, TrackerConfig};

/// Largest eigenvalue count `n (m − 1)^{n − 1}` accepted by [`h_spectrum`].
pub const MAX_EXPECTED_COUNT: usize = 200;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomotopyConfig {
    pub seed: u64,
    pub tracker: TrackerConfig,
    /// Endpoints closer than this in both `λ` and projective eigenvector
    /// distance are merged.
    pub cluster_tol: f64,
    /// Extra attempts with fresh seeds while eigenpairs are missing.
    pub retries: usize,
    /// Eigenpairs with a unit-norm residual above this are discarded.
    pub max_residual: f64,
}

impl Default for HomotopyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            tracker: TrackerConfig::default(),
            cluster_tol: 1e-6,
            retries: 3,
            max_residual: 1e-8,
        }
    }
}

impl HomotopyConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PathStats {
    pub attempts: usize,
    pub tracked: usize,
    pub converged: usize,
    pub diverged: usize,
    pub stalled: usize,
    /// Converged endpoints whose unit-norm eigen residual was too large.
    pub rejected: usize,
}

/// A solved homotopy: the spectrum plus path bookkeeping.
#[derive(Clone, Debug, Serialize)]
pub struct HSpectrum {
    pub summary: SpectrumSummary,
    pub stats: PathStats,
}

/// Everything needed to track the paths for one seed.
pub struct Solver {
    pub system: EigSystem,
    pub start: StartSystem,
    pub gamma: Complex64,
}

impl Solver {
    pub fn new(tensor: &SymTensor, seed: u64) -> Self {
        let system = EigSystem::new(tensor.clone(), seed);
        let start = StartSystem::for_system(&system, seed);
        let mut rng = system::rng_for(seed, 2);
        let gamma = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        Self { system, start, gamma }
    }

    pub fn homotopy(&self) -> Homotopy<'_, StartSystem, EigSystem> {
        Homotopy::new(&self.start, &self.system, self.gamma)
    }

    /// Tracks every start point; the output order matches
    /// [`StartSystem::start_points`].
    pub fn track_all(&self, cfg: &TrackerConfig) -> Vec<PathResult> {
        let hom = self.homotopy();
        self.start
            .start_points()
            .par_iter()
            .map(|p| hom.track(p, cfg))
            .collect()
    }
}

/// A converged endpoint moved to the unit sphere.
#[derive(Clone, Debug)]
struct Candidate {
    lambda: Complex64,
    x: Vec<Complex64>,
    residual: f64,
}

/// All H-eigenpairs of `a`, clustered, with retry on missing eigenpairs.
pub fn h_spectrum(a: &SymTensor, cfg: &HomotopyConfig) -> Result<HSpectrum> {
    let expected = expected_h_count(a.dim(), a.order());
    if expected > MAX_EXPECTED_COUNT {
        return Err(Error::Intractable {
            count: expected,
            limit: MAX_EXPECTED_COUNT,
        });
    }
    let mut pool: Vec<Candidate> = Vec::new();
    let mut stats = PathStats::default();
    let mut pairs = Vec::new();
    for attempt in 0..=cfg.retries {
        let seed = cfg
            .seed
            .wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let solver = Solver::new(a, seed);
        let results = solver.track_all(&cfg.tracker);
        stats.attempts += 1;
        stats.tracked += results.len();
        for r in results {
            match r.status {
                PathStatus::Converged => stats.converged += 1,
                PathStatus::Diverged => {
                    stats.diverged += 1;
                    continue;
                }
                PathStatus::Stalled => {
                    stats.stalled += 1;
                    continue;
                }
            }
            let n = a.dim();
            let x = canonicalize(&r.endpoint[..n]);
            let lambda = r.endpoint[n];
            let residual = h_residual(a, lambda, &x);
            if residual < cfg.max_residual && x.iter().all(|v| v.is_finite()) {
                pool.push(Candidate { lambda, x, residual });
            } else {
                stats.rejected += 1;
            }
        }
        pairs = cluster(pool.clone(), cfg.cluster_tol);
        if pairs.len() >= expected {
            break;
        }
    }
    let mut summary = SpectrumSummary::new(pairs, expected);
    if a.order() == 3 && a.dim() == 2 {
        let t = BinaryCubic::from_tensor(a)?;
        summary.det_check = Some(DetCheck {
            product_of_eigenvalues: summary.eigenpairs.iter().map(|p| p.lambda).product(),
            hyperdeterminant: t.hyperdet(),
        });
    }
    Ok(HSpectrum { summary, stats })
}

/// Greedy clustering of sorted candidates by `λ` and projective distance.
/// The representative of each cluster is its smallest-residual member.
fn cluster(mut cands: Vec<Candidate>, tol: f64) -> Vec<EigPair> {
    cands.sort_by(|p, q| {
        p.lambda
            .re
            .total_cmp(&q.lambda.re)
            .then(p.lambda.im.total_cmp(&q.lambda.im))
            .then_with(|| {
                p.x.iter()
                    .zip(&q.x)
                    .map(|(a, b)| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
    });
    let mut groups: Vec<(Candidate, usize)> = Vec::new();
    for c in cands {
        let hit = groups.iter_mut().find(|(rep, _)| {
            (rep.lambda - c.lambda).norm() <= tol * (1.0 + c.lambda.norm())
                && projective_distance(&rep.x, &c.x) <= tol
        });
        match hit {
            Some((rep, count)) => {
                *count += 1;
                if c.residual < rep.residual {
                    *rep = c;
                }
            }
            None => groups.push((c, 1)),
        }
    }
    groups
        .into_iter()
        .map(|(c, count)| EigPair {
            lambda: c.lambda,
            x: c.x,
            residual: c.residual,
            kind: EigKind::H,
            multiplicity: count,
        })
        .collect()
}
