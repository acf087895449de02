//! Closed-form H-spectrum of symmetric 2 x 2 x 2 tensors.
//!
//! Such a tensor is a binary cubic form with orbit values
//! `a = A(1,1,1)`, `b = A(1,1,2)`, `c = A(1,2,2)`, `d = A(2,2,2)`. Its
//! hyperdeterminant is the cubic discriminant
//!
//! ```text
//! Δ = a²d² − 6abcd + 4ac³ + 4b³d − 3b²c²
//! ```
//!
//! and the H-eigenvalues are the four roots of `Δ(A − λI)`, obtained by
//! substituting `a → a − λ`, `d → d − λ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{AberthOptions, CPoly};
use crate::spectrum::{self, canonicalize, DetCheck, EigKind, EigPair, SpectrumSummary};
use crate::tensor::SymTensor;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinaryCubic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl BinaryCubic {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_tensor(t: &SymTensor) -> Result<Self> {
        if t.order() != 3 || t.dim() != 2 {
            return Err(Error::Unsupported {
                what: "binary cubic view",
                requirement: "a 3-mode tensor of dimension 2",
            });
        }
        Ok(Self {
            a: t.get(&[0, 0, 0]),
            b: t.get(&[0, 0, 1]),
            c: t.get(&[0, 1, 1]),
            d: t.get(&[1, 1, 1]),
        })
    }

    pub fn to_tensor(&self) -> SymTensor {
        SymTensor::build_symmetric(
            3,
            2,
            vec![
                (vec![0, 0, 0], self.a),
                (vec![0, 0, 1], self.b),
                (vec![0, 1, 1], self.c),
                (vec![1, 1, 1], self.d),
            ],
        )
        .expect("valid 2 x 2 x 2 generators")
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn hyperdet(&self) -> f64 {
        let Self { a, b, c, d } = *self;
        a * a * d * d - 6.0 * a * b * c * d + 4.0 * a * c.powi(3) + 4.0 * b.powi(3) * d - 3.0 * b * b * c * c
    }

    /// `Δ(A − λI)` expanded as a monic quartic in `λ`.
    pub fn char_poly(&self) -> CPoly {
        let Self { a, b, c, d } = *self;
        let shifted_a = CPoly::from_real(&[a, -1.0]);
        let shifted_d = CPoly::from_real(&[d, -1.0]);
        let ad = shifted_a.mul(&shifted_d);
        let re = |v: f64| Complex64::new(v, 0.0);
        ad.mul(&ad)
            .add(&ad.scale(re(-6.0 * b * c)))
            .add(&shifted_a.scale(re(4.0 * c.powi(3))))
            .add(&shifted_d.scale(re(4.0 * b.powi(3))))
            .add(&CPoly::from_real(&[-3.0 * b * b * c * c]))
    }

    /// The four roots of the characteristic quartic, each with a recovered
    /// eigenvector.
    pub fn h_spectrum(&self) -> Result<SpectrumSummary> {
        let p = self.char_poly();
        let roots = p.polish_clusters(&roots_with_retry(&p)?, 1e-3);
        let tensor = self.to_tensor();
        let pairs = roots
            .iter()
            .map(|&lambda| {
                let x = self.recover_vector(lambda)?;
                Ok(EigPair {
                    residual: spectrum::h_residual(&tensor, lambda, &x),
                    lambda,
                    x,
                    kind: EigKind::H,
                    multiplicity: 1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut summary = SpectrumSummary::new(pairs, 4);
        summary.det_check = Some(DetCheck {
            product_of_eigenvalues: roots.iter().product(),
            hyperdeterminant: self.hyperdet(),
        });
        Ok(summary)
    }

    /// Eigenvector for an eigenvalue `lambda`.
    ///
    /// Writing `t = x₁/x₂`, the two H-eigen equations become
    /// `(a−λ)t² + 2bt + c = 0` and `bt² + 2ct + (d−λ) = 0`. Roots of either
    /// quadratic, plus the coordinate vectors for the `x₂ = 0` and `x₁ = 0`
    /// cases, are scored against both equations and the best one is kept.
    /// When both quadratics vanish identically (`A = λI`) the Jacobian of the
    /// system is zero and every vector qualifies; `e₁` is returned.
    pub fn recover_vector(&self, lambda: Complex64) -> Result<Vec<Complex64>> {
        let Self { a, b, c, d } = *self;
        let re = |v: f64| Complex64::new(v, 0.0);
        let q1 = [re(a) - lambda, re(2.0 * b), re(c)];
        let q2 = [re(b), re(2.0 * c), re(d) - lambda];
        let scale = [a, b, c, d]
            .iter()
            .fold(lambda.norm(), |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE);

        let one = re(1.0);
        let zero = re(0.0);
        let mut candidates = vec![vec![one, zero], vec![zero, one]];
        for q in [&q1, &q2] {
            for t in quadratic_roots(q[0], q[1], q[2], scale) {
                candidates.push(vec![t, one]);
            }
        }

        let residual = |x: &[Complex64]| {
            let x = canonicalize(x);
            let (x1, x2) = (x[0], x[1]);
            let r1 = q1[0] * x1 * x1 + q1[1] * x1 * x2 + q1[2] * x2 * x2;
            let r2 = q2[0] * x1 * x1 + q2[1] * x1 * x2 + q2[2] * x2 * x2;
            (r1.norm_sqr() + r2.norm_sqr()).sqrt()
        };
        let (best, best_res) = candidates
            .into_iter()
            .filter(|x| x.iter().all(|z| z.is_finite()))
            .map(|x| {
                let r = residual(&x);
                (x, r)
            })
            .min_by(|(_, r), (_, s)| r.total_cmp(s))
            .expect("coordinate candidates always present");

        if best_res <= 1e-6 * scale.max(1.0) {
            return Ok(canonicalize(&best));
        }
        Err(Error::NotAnEigenvalue {
            lambda: lambda.to_string(),
            residual: best_res,
        })
    }
}

/// Roots in `t` of `α t² + β t + γ`, dropping to the linear case when `α` is
/// negligible relative to `scale`. Identically zero input has no roots.
fn quadratic_roots(alpha: Complex64, beta: Complex64, gamma: Complex64, scale: f64) -> Vec<Complex64> {
    let tiny = 1e-14 * scale;
    if alpha.norm() <= tiny {
        if beta.norm() <= tiny {
            return vec![];
        }
        return vec![-gamma / beta];
    }
    let disc = (beta * beta - alpha * gamma * 4.0).sqrt();
    // pick the sign that avoids cancellation
    let s = if (beta.conj() * disc).re >= 0.0 { 1.0 } else { -1.0 };
    let q = -(beta + disc * s) / 2.0;
    if q.norm() == 0.0 {
        return vec![Complex64::new(0.0, 0.0); 2];
    }
    vec![q / alpha, gamma / q]
}

fn roots_with_retry(p: &CPoly) -> Result<Vec<Complex64>> {
    let mut last = None;
    for offset in [0.4, 1.1, 2.3] {
        let opts = AberthOptions {
            angle_offset: offset,
            ..Default::default()
        };
        match p.all_roots_with(&opts) {
            Ok(r) => return Ok(r),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}
