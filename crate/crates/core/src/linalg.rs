//! Dense complex linear solves for the small Newton systems in the tracker.

use num_complex::Complex64;

/// Solves `A y = b` in place by Gaussian elimination with partial pivoting.
/// `a` is row-major `n x n` and is overwritten; the solution replaces `b`.
/// Returns `None` on an exactly zero or non-finite pivot.
pub(crate) fn solve_in_place(a: &mut [Complex64], b: &mut [Complex64], n: usize) -> Option<()> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    for col in 0..n {
        let (piv, piv_abs) = (col..n)
            .map(|r| (r, a[r * n + col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if piv_abs == 0.0 || !piv_abs.is_finite() {
            return None;
        }
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            b.swap(col, piv);
        }
        let inv = a[col * n + col].inv();
        for r in (col + 1)..n {
            let f = a[r * n + col] * inv;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in col..n {
                let v = a[col * n + k];
                a[r * n + k] -= f * v;
            }
            let v = b[col];
            b[r] -= f * v;
        }
    }
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc -= a[row * n + k] * b[k];
        }
        b[row] = acc / a[row * n + row];
    }
    b.iter().all(|z| z.is_finite()).then_some(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solves_needing_pivot() {
        let mut a = vec![c(0.0, 0.0), c(2.0, 1.0), c(1.0, -1.0), c(3.0, 0.0)];
        let orig = a.clone();
        let x = vec![c(0.5, 2.0), c(-1.0, 0.25)];
        let mut b: Vec<_> = (0..2)
            .map(|i| orig[i * 2] * x[0] + orig[i * 2 + 1] * x[1])
            .collect();
        solve_in_place(&mut a, &mut b, 2).unwrap();
        for (got, want) in b.iter().zip(&x) {
            assert!((got - want).norm() < 1e-14);
        }
    }

    #[test]
    fn singular_is_none() {
        let mut a = vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)];
        let mut b = vec![c(1.0, 0.0), c(1.0, 0.0)];
        assert!(solve_in_place(&mut a, &mut b, 2).is_none());
    }
}
