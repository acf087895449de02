//! Predictor-corrector path tracking for `H(z, t) = (1 − t)·γ·G(z) + t·F(z)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::system::PolySystem;
use crate::linalg::solve_in_place;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrackerConfig {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Paths with `‖z‖` above this are declared diverged.
    pub divergence_threshold: f64,
    /// At `t = 1 − endgame_gap`, paths with `‖z‖` above this are heading to
    /// infinity and skip sharpening.
    pub endgame_divergence: f64,
    /// Tracking stops at `t = 1 − endgame_gap` and hands over to Newton on `F`.
    pub endgame_gap: f64,
    pub max_corrector_iters: usize,
    /// Relative size of the final corrector update needed to accept a step.
    pub corrector_tol: f64,
    /// Each Newton update must shrink by at least this factor.
    pub contraction: f64,
    pub sharpen_tol: f64,
    pub sharpen_max_iters: usize,
    /// Endpoint residual below which a path counts as converged.
    pub accept_residual: f64,
    /// A path that stalls at `t ≥ 1 − rescue_window` still gets the
    /// sharpening phase; singular endpoints are typically reached this way.
    pub rescue_window: f64,
    pub max_steps: usize,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        Self {
            initial_step: 0.01,
            min_step: 1e-7,
            max_step: 0.1,
            divergence_threshold: 1e8,
            endgame_divergence: 1e4,
            endgame_gap: 1e-6,
            max_corrector_iters: 3,
            corrector_tol: 1e-9,
            contraction: 0.5,
            sharpen_tol: 1e-12,
            sharpen_max_iters: 60,
            accept_residual: 1e-10,
            rescue_window: 1e-2,
            max_steps: 50_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PathStatus {
    Converged,
    Diverged,
    Stalled,
}

#[derive(Clone, Debug, Serialize)]
pub struct PathResult {
    /// `(x₁, …, xₙ, λ)` at the end of tracking.
    pub endpoint: Vec<Complex64>,
    pub status: PathStatus,
    pub steps: usize,
    pub final_residual: f64,
    /// Value of `t` reached before the sharpening phase.
    pub t_reached: f64,
}

/// Linear homotopy from `γ·G` at `t = 0` to `F` at `t = 1`.
pub struct Homotopy<'a, G: PolySystem, F: PolySystem> {
    pub start: &'a G,
    pub target: &'a F,
    pub gamma: Complex64,
}

struct Workspace {
    f: Vec<Complex64>,
    jf: Vec<Complex64>,
    g: Vec<Complex64>,
    jg: Vec<Complex64>,
}

impl Workspace {
    fn new(size: usize) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self {
            f: vec![zero; size],
            jf: vec![zero; size * size],
            g: vec![zero; size],
            jg: vec![zero; size * size],
        }
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl<G: PolySystem, F: PolySystem> Homotopy<'_, G, F> {
    pub fn new<'a>(start: &'a G, target: &'a F, gamma: Complex64) -> Homotopy<'a, G, F> {
        assert_eq!(start.size(), target.size(), "start and target sizes differ");
        Homotopy { start, target, gamma }
    }

    fn size(&self) -> usize {
        self.target.size()
    }

    /// Fills `h = H(z, t)`, `jac = H_z(z, t)` and returns them with `H_t`
    /// written into `ht`.
    fn eval(
        &self,
        ws: &mut Workspace,
        z: &[Complex64],
        t: f64,
        h: &mut [Complex64],
        jac: &mut [Complex64],
        ht: &mut [Complex64],
    ) {
        self.start.eval_jac(z, &mut ws.g, &mut ws.jg);
        self.target.eval_jac(z, &mut ws.f, &mut ws.jf);
        let s = self.gamma * (1.0 - t);
        for i in 0..h.len() {
            h[i] = s * ws.g[i] + ws.f[i] * t;
            ht[i] = ws.f[i] - self.gamma * ws.g[i];
        }
        for ((j, g), f) in jac.iter_mut().zip(&ws.jg).zip(&ws.jf) {
            *j = s * g + f * t;
        }
    }

    /// `dz/dt = −H_z⁻¹ H_t`.
    fn velocity(&self, ws: &mut Workspace, z: &[Complex64], t: f64) -> Option<Vec<Complex64>> {
        let n = self.size();
        let mut h = vec![Complex64::new(0.0, 0.0); n];
        let mut jac = vec![Complex64::new(0.0, 0.0); n * n];
        let mut ht = vec![Complex64::new(0.0, 0.0); n];
        self.eval(ws, z, t, &mut h, &mut jac, &mut ht);
        for v in ht.iter_mut() {
            *v = -*v;
        }
        solve_in_place(&mut jac, &mut ht, n)?;
        Some(ht)
    }

    /// Classical RK4 step of the Davidenko equation.
    fn predict(&self, ws: &mut Workspace, z: &[Complex64], t: f64, dt: f64) -> Option<Vec<Complex64>> {
        let axpy = |a: f64, k: &[Complex64]| -> Vec<Complex64> {
            z.iter().zip(k).map(|(zi, ki)| zi + ki * a).collect()
        };
        let k1 = self.velocity(ws, z, t)?;
        let k2 = self.velocity(ws, &axpy(dt / 2.0, &k1), t + dt / 2.0)?;
        let k3 = self.velocity(ws, &axpy(dt / 2.0, &k2), t + dt / 2.0)?;
        let k4 = self.velocity(ws, &axpy(dt, &k3), t + dt)?;
        Some(
            (0..z.len())
                .map(|i| z[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0))
                .collect(),
        )
    }

    /// Newton on `H(·, t)`; every update must contract by `cfg.contraction`
    /// and the last one must be below `cfg.corrector_tol` relative to `z`.
    fn correct(&self, ws: &mut Workspace, z: &mut [Complex64], t: f64, cfg: &TrackerConfig) -> bool {
        let n = self.size();
        let mut h = vec![Complex64::new(0.0, 0.0); n];
        let mut jac = vec![Complex64::new(0.0, 0.0); n * n];
        let mut ht = vec![Complex64::new(0.0, 0.0); n];
        let mut prev = f64::INFINITY;
        for _ in 0..cfg.max_corrector_iters {
            self.eval(ws, z, t, &mut h, &mut jac, &mut ht);
            if solve_in_place(&mut jac, &mut h, n).is_none() {
                return false;
            }
            let step = norm(&h);
            if step > cfg.contraction * prev {
                return false;
            }
            for (zi, d) in z.iter_mut().zip(&h) {
                *zi -= d;
            }
            if step <= cfg.corrector_tol * (1.0 + norm(z)) {
                return true;
            }
            prev = step;
        }
        false
    }

    /// Tracks one path from a root of `G` at `t = 0` toward `t = 1`.
    pub fn track(&self, start: &[Complex64], cfg: &TrackerConfig) -> PathResult {
        let mut ws = Workspace::new(self.size());
        let mut z = start.to_vec();
        let mut t = 0.0;
        let mut dt = cfg.initial_step.clamp(cfg.min_step, cfg.max_step);
        let t_end = 1.0 - cfg.endgame_gap;
        let mut steps = 0;
        let mut streak = 0;
        let mut stalled = false;

        while t < t_end {
            if norm(&z) > cfg.divergence_threshold || steps >= cfg.max_steps {
                stalled = steps >= cfg.max_steps;
                break;
            }
            let h = dt.min(t_end - t);
            let accepted = match self.predict(&mut ws, &z, t, h) {
                Some(mut cand) => {
                    if self.correct(&mut ws, &mut cand, t + h, cfg) {
                        z = cand;
                        true
                    } else {
                        false
                    }
                }
                None => false,
            };
            steps += 1;
            if accepted {
                t += h;
                streak += 1;
                if streak >= 3 {
                    dt = (dt * 2.0).min(cfg.max_step);
                    streak = 0;
                }
            } else {
                streak = 0;
                dt /= 2.0;
                if dt < cfg.min_step {
                    stalled = true;
                    break;
                }
            }
        }

        let t_reached = t;
        let too_big = norm(&z) > cfg.endgame_divergence || !z.iter().all(|v| v.is_finite());
        if too_big {
            return PathResult {
                final_residual: f64::INFINITY,
                endpoint: z,
                status: PathStatus::Diverged,
                steps,
                t_reached,
            };
        }
        if stalled && t < 1.0 - cfg.rescue_window {
            let final_residual = norm(&self.target.eval(&z));
            return PathResult {
                endpoint: z,
                status: PathStatus::Stalled,
                steps,
                final_residual,
                t_reached,
            };
        }

        let (z, final_residual) = sharpen(self.target, z, cfg);
        let status = if final_residual < cfg.accept_residual && norm(&z) <= cfg.divergence_threshold {
            PathStatus::Converged
        } else if norm(&z) > cfg.endgame_divergence || !final_residual.is_finite() {
            PathStatus::Diverged
        } else {
            PathStatus::Stalled
        };
        PathResult {
            endpoint: z,
            status,
            steps,
            final_residual,
            t_reached,
        }
    }
}

/// Plain Newton on the target system. Iterates until the update is at
/// rounding level or the residual stops improving, keeping the best iterate.
pub fn sharpen<F: PolySystem>(target: &F, z: Vec<Complex64>, cfg: &TrackerConfig) -> (Vec<Complex64>, f64) {
    let n = target.size();
    let mut f = vec![Complex64::new(0.0, 0.0); n];
    let mut jac = vec![Complex64::new(0.0, 0.0); n * n];
    target.eval_jac(&z, &mut f, &mut jac);
    let mut best_res = norm(&f);
    let mut best = z.clone();
    let mut cur = z;
    let mut worse = 0;
    for _ in 0..cfg.sharpen_max_iters {
        if solve_in_place(&mut jac, &mut f, n).is_none() {
            break;
        }
        let step = norm(&f);
        for (zi, d) in cur.iter_mut().zip(&f) {
            *zi -= d;
        }
        if !cur.iter().all(|v| v.is_finite()) {
            break;
        }
        target.eval_jac(&cur, &mut f, &mut jac);
        let res = norm(&f);
        if res < best_res {
            best_res = res;
            best.copy_from_slice(&cur);
            worse = 0;
        } else {
            worse += 1;
            if worse >= 3 {
                break;
            }
        }
        if step <= 4.0 * f64::EPSILON * (1.0 + norm(&cur)) && res < cfg.sharpen_tol {
            break;
        }
    }
    (best, best_res)
}
