//! Univariate polynomials with complex coefficients and an Aberth–Ehrlich
//! simultaneous root finder.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients at or below this magnitude are trimmed from the top.
const TRIM: f64 = 1e-300;

/// Polynomial `c_0 + c_1 z + ... + c_d z^d` in ascending coefficient order.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoly {
    coeffs: Vec<Complex64>,
}

impl CPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= TRIM) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic polynomial `prod (z - r_k)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Self::from_real(&[1.0]);
        for &r in roots {
            p = p.mul(&Self::new(vec![-r, Complex64::new(1.0, 0.0)]));
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().expect("nonempty")
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::from_real(&[0.0]);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Self::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(zero) + other.coeffs.get(k).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading();
        if lead.norm() <= TRIM {
            return Err(Error::DegeneratePolynomial);
        }
        Ok(self.scale(lead.inv()))
    }

    fn max_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Product of all roots via Vieta, `(-1)^d c_0 / c_d`.
    pub fn product_of_roots(&self) -> Result<Complex64> {
        let d = self.degree();
        let lead = self.leading();
        if d == 0 || lead.norm() <= TRIM {
            return Err(Error::DegeneratePolynomial);
        }
        let sign = if d.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(self.coeffs[0] / lead * sign)
    }

    /// All `degree` roots, counted with multiplicity, sorted by real then
    /// imaginary part.
    pub fn all_roots(&self) -> Result<Vec<Complex64>> {
        self.all_roots_with(&AberthOptions::default())
    }

    pub fn all_roots_with(&self, opts: &AberthOptions) -> Result<Vec<Complex64>> {
        if self.degree() == 0 {
            return Err(Error::DegeneratePolynomial);
        }
        let p = self.monic()?;
        let mut roots = aberth(&p, opts)?;
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(roots)
    }
}

impl CPoly {
    /// Repeated roots come out of simultaneous iteration with error of
    /// order `ε^{1/k}`. Each group of `roots` within `tol·(1 + |z|)` of one
    /// another is replaced by a root of `p^{(k−1)}` (simple at a `k`-fold
    /// root of `p`) found by Newton from the group centroid. The merge is kept
    /// only if `p, p′, …, p^{(k−2)}` also vanish there to rounding level, so
    /// distinct close roots are left untouched.
    pub fn polish_clusters(&self, roots: &[Complex64], tol: f64) -> Vec<Complex64> {
        let n = roots.len();
        let mut seen = vec![false; n];
        let mut out = roots.to_vec();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            let mut members = vec![i];
            let mut k = 0;
            while k < members.len() {
                let zk = roots[members[k]];
                for j in 0..n {
                    if !seen[j] && (roots[j] - zk).norm() <= tol * (1.0 + zk.norm()) {
                        seen[j] = true;
                        members.push(j);
                    }
                }
                k += 1;
            }
            if members.len() < 2 {
                continue;
            }
            let mut derivs = vec![self.clone()];
            for _ in 1..members.len() {
                let next = derivs.last().expect("non-empty").derivative();
                derivs.push(next);
            }
            let d = derivs.pop().expect("k >= 2");
            let dd = d.derivative();
            let centroid = members.iter().map(|&j| roots[j]).sum::<Complex64>() / members.len() as f64;
            let mut z = centroid;
            for _ in 0..50 {
                let den = dd.eval(z);
                if den.norm() == 0.0 {
                    break;
                }
                let step = d.eval(z) / den;
                z -= step;
                if step.norm() <= 1e-16 * (1.0 + z.norm()) {
                    break;
                }
            }
            let vanishes = |q: &CPoly| {
                let bound: f64 = q
                    .coeffs
                    .iter()
                    .rev()
                    .fold(0.0, |acc, c| acc * z.norm() + c.norm());
                q.eval(z).norm() <= 1e-12 * bound
            };
            if z.is_finite()
                && (z - centroid).norm() <= tol * (1.0 + centroid.norm())
                && derivs.iter().all(vanishes)
            {
                for &j in &members {
                    out[j] = z;
                }
            }
        }
        out
    }
}

impl fmt::Display for CPoly {
    /// Ascending powers of `z`; a precision (`{:.6}`) applies to every
    /// coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let precision = f.precision();
        let num = |v: f64| match precision {
            Some(p) => format!("{v:.p$}"),
            None => format!("{v}"),
        };
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.norm() == 0.0 && self.degree() > 0 {
                continue;
            }
            let body = if c.im == 0.0 {
                let sign = if c.re < 0.0 { "-" } else { "+" };
                if first {
                    write!(f, "{}", if c.re < 0.0 { "-" } else { "" })?;
                } else {
                    write!(f, " {sign} ")?;
                }
                num(c.re.abs())
            } else {
                if !first {
                    write!(f, " + ")?;
                }
                format!(
                    "({}{}{}i)",
                    num(c.re),
                    if c.im < 0.0 { "-" } else { "+" },
                    num(c.im.abs())
                )
            };
            first = false;
            write!(f, "{body}")?;
            match k {
                0 => {}
                1 => write!(f, "·z")?,
                _ => write!(f, "·z^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct AberthOptions {
    pub max_iters: usize,
    /// Angular offset of the initial guesses on the Cauchy-bound circle.
    pub angle_offset: f64,
    /// Per-root relative correction threshold.
    pub tol: f64,
}

impl Default for AberthOptions {
    fn default() -> Self {
        Self {
            max_iters: 500,
            angle_offset: 0.4,
            tol: 1e-14,
        }
    }
}

/// Aberth–Ehrlich iteration on a monic polynomial.
///
/// A root is frozen once its correction is below `tol * (1 + |z|)` or
/// `|p(z)|` falls under the rounding-error bound of Horner's scheme, the
/// latter being the only test a multiple root can pass.
fn aberth(p: &CPoly, opts: &AberthOptions) -> Result<Vec<Complex64>> {
    let n = p.degree();
    let c = p.coeffs();
    if n == 1 {
        return Ok(vec![-c[0]]);
    }
    let dp = p.derivative();
    let abs_coeffs: Vec<f64> = c.iter().map(|z| z.norm()).collect();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + opts.angle_offset))
        .collect();
    let mut done = vec![false; n];
    let eps = f64::EPSILON;

    for _ in 0..opts.max_iters {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let zk = z[k];
            let pz = p.eval(zk);
            let bound = {
                let r = zk.norm();
                abs_coeffs.iter().rev().fold(0.0, |acc, &a| acc * r + a) * 4.0 * (n as f64) * eps
            };
            if pz.norm() <= bound {
                done[k] = true;
                continue;
            }
            let dpz = dp.eval(zk);
            let ratio = pz / dpz;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (zk - z[j]).inv()).sum();
            let mut corr = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !corr.is_finite() {
                // derivative vanished or two iterates collided; nudge off
                corr = Complex64::from_polar(1e-3 * (1.0 + zk.norm()), k as f64 + 0.5);
            }
            z[k] = zk - corr;
            if corr.norm() < opts.tol * (1.0 + z[k].norm()) {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            let scale = p.max_coeff();
            if z.iter()
                .all(|&r| p.eval(r).norm() <= 1e-10 * scale * (1.0 + r.norm()).powi(n as i32))
            {
                return Ok(z);
            }
            break;
        }
    }
    Err(Error::RootsNotConverged {
        iterations: opts.max_iters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polished_double_and_triple_roots() {
        let roots = [
            c(0.9, 0.0),
            c(0.9, 0.0),
            c(-0.4, 0.0),
            c(-0.4, 0.0),
            c(-0.4, 0.0),
            c(2.0, 1.0),
        ];
        let p = CPoly::from_roots(&roots);
        let raw = p.all_roots().unwrap();
        let fixed = p.polish_clusters(&raw, 1e-3);
        for r in &roots {
            let d = fixed.iter().map(|z| (z - r).norm()).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-13, "{r}: {d:e}");
        }
        // well separated roots are untouched
        let q = CPoly::from_roots(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let qr = q.all_roots().unwrap();
        assert_eq!(q.polish_clusters(&qr, 1e-6), qr);
        // close but distinct roots are not merged
        let close = [c(1.0, 0.0), c(1.0 + 1e-4, 0.0), c(-2.0, 0.0)];
        let pc = CPoly::from_roots(&close);
        let rc = pc.all_roots().unwrap();
        assert_eq!(pc.polish_clusters(&rc, 1e-3), rc);
        // quadruple root
        let p4 = CPoly::from_roots(&[c(1.0, 0.0); 4]);
        let r4 = p4.polish_clusters(&p4.all_roots().unwrap(), 1e-3);
        assert!(r4.iter().all(|z| (z - 1.0).norm() < 1e-14), "{r4:?}");
    }
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn char_a() -> CPoly {
        CPoly::from_real(&[-9.0 / 500.0, -84.0 / 125.0, 229.0 / 100.0, -13.0 / 5.0, 1.0])
    }

    fn char_b() -> CPoly {
        CPoly::from_real(&[279.0 / 625.0, -9.0 / 125.0, -27.0 / 20.0, 1.0 / 5.0, 1.0])
    }

    fn assert_multiset(found: &[Complex64], expected: &[Complex64], tol: f64) {
        assert_eq!(found.len(), expected.len());
        let mut used = vec![false; found.len()];
        for e in expected {
            let j = (0..found.len())
                .filter(|&j| !used[j])
                .min_by(|&i, &j| (found[i] - e).norm().total_cmp(&(found[j] - e).norm()))
                .unwrap();
            assert!((found[j] - e).norm() < tol, "{e} not found in {found:?}");
            used[j] = true;
        }
    }

    #[test]
    fn eval_examples() {
        assert!(char_a().eval(c(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(CPoly::from_real(&[-1.0, 0.0, 1.0]).eval(c(1.0, 0.0)), c(0.0, 0.0));
        assert_eq!(char_b().eval(c(0.0, 0.0)), c(279.0 / 625.0, 0.0));
    }

    #[test]
    fn reference_quartic_roots() {
        let ra = char_a().all_roots().unwrap();
        assert_multiset(
            &ra,
            &[
                c(1.0, 0.0),
                c(0.812327806563, 0.264915863899),
                c(0.812327806563, -0.264915863899),
                c(-0.024655613126, 0.0),
            ],
            1e-9,
        );
        let rb = char_b().all_roots().unwrap();
        assert_multiset(
            &rb,
            &[
                c(-0.70932967445, 0.0),
                c(0.771909217754, 0.111810698762),
                c(0.771909217754, -0.111810698762),
                c(-1.034488761057, 0.0),
            ],
            1e-9,
        );
    }

    #[test]
    fn cube_roots_of_unity() {
        let r = CPoly::from_real(&[-1.0, 0.0, 0.0, 1.0]).all_roots().unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert_multiset(&r, &[c(1.0, 0.0), c(-0.5, h), c(-0.5, -h)], 1e-13);
    }

    #[test]
    fn double_roots_converge() {
        // ((z - 2)(z - 5))^2
        let p = CPoly::from_real(&[100.0, -140.0, 69.0, -14.0, 1.0]);
        let r = p.all_roots().unwrap();
        assert_multiset(&r, &[c(2.0, 0.0), c(2.0, 0.0), c(5.0, 0.0), c(5.0, 0.0)], 1e-6);
    }

    #[test]
    fn vieta_products() {
        assert!((char_a().product_of_roots().unwrap() - c(-9.0 / 500.0, 0.0)).norm() < 1e-15);
        assert!((char_b().product_of_roots().unwrap() - c(279.0 / 625.0, 0.0)).norm() < 1e-15);
        assert_eq!(
            CPoly::from_real(&[-6.0, 11.0, -6.0, 1.0])
                .product_of_roots()
                .unwrap(),
            c(6.0, 0.0)
        );
        assert!(matches!(
            CPoly::from_real(&[3.0]).product_of_roots(),
            Err(Error::DegeneratePolynomial)
        ));
    }

    #[test]
    fn trimming_and_degree() {
        let p = CPoly::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(CPoly::new(vec![]).degree(), 0);
        assert!(CPoly::from_real(&[0.0]).all_roots().is_err());
    }

    #[test]
    fn iteration_cap_reports_failure() {
        let opts = AberthOptions {
            max_iters: 1,
            ..Default::default()
        };
        assert!(matches!(
            char_a().all_roots_with(&opts),
            Err(Error::RootsNotConverged { iterations: 1 })
        ));
    }

    fn unit_disc() -> impl Strategy<Value = Complex64> {
        (0.0f64..1.0, 0.0f64..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn root_product_matches_vieta(
            lower in proptest::collection::vec(unit_disc(), 1..=8),
            lead in (0.5f64..1.0, 0.0f64..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t)),
        ) {
            let mut coeffs = lower;
            coeffs.push(lead);
            let p = CPoly::new(coeffs);
            let roots = p.all_roots().unwrap();
            prop_assert_eq!(roots.len(), p.degree());
            let prod: Complex64 = roots.iter().product();
            let vieta = p.product_of_roots().unwrap();
            prop_assert!((prod - vieta).norm() <= 1e-8 * (1.0 + vieta.norm()));
        }

        #[test]
        fn roots_reconstruct_monic_polynomial(
            lower in proptest::collection::vec(unit_disc(), 1..=8),
            lead in (0.5f64..1.0, 0.0f64..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t)),
        ) {
            let mut coeffs = lower;
            coeffs.push(lead);
            let p = CPoly::new(coeffs).monic().unwrap();
            let rebuilt = CPoly::from_roots(&p.all_roots().unwrap());
            for (a, b) in rebuilt.coeffs().iter().zip(p.coeffs()) {
                prop_assert!((a - b).norm() < 1e-7);
            }
        }

        #[test]
        fn real_polynomials_have_conjugate_closed_roots(
            coeffs in proptest::collection::vec(-1.0f64..1.0, 2..=8),
            lead in 0.5f64..1.0,
        ) {
            let mut coeffs = coeffs;
            coeffs.push(lead);
            let roots = CPoly::from_real(&coeffs).all_roots().unwrap();
            for r in &roots {
                let closest = roots
                    .iter()
                    .map(|s| (s - r.conj()).norm())
                    .fold(f64::INFINITY, f64::min);
                prop_assert!(closest < 1e-8, "{} has no conjugate partner in {:?}", r, roots);
            }
        }
    }
}
