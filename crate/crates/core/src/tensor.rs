//! Dense symmetric tensors, contraction and the tensor Kronecker product.
//!
//! All indices in the Rust API are zero-based. The JSON file format in
//! [`json`] is one-based.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub mod json;

/// A real tensor of order `m` with every mode of size `n`, stored densely in
/// row-major order and invariant under every permutation of its indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor {
    order: usize,
    dim: usize,
    data: Vec<f64>,
}

impl SymTensor {
    /// All-zero tensor.
    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        check_shape(order, dim)?;
        Ok(Self {
            order,
            dim,
            data: vec![0.0; dim.pow(order as u32)],
        })
    }

    /// Builds a symmetric tensor from one value per symmetry orbit.
    ///
    /// Every permutation of each generator tuple receives the generator's
    /// value; entries not reached by any generator are zero. Two generators in
    /// the same orbit must agree exactly.
    pub fn build_symmetric<I>(order: usize, dim: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        let mut tensor = Self::zeros(order, dim)?;
        let mut orbits: HashMap<Vec<usize>, f64> = HashMap::new();
        for (idx, value) in generators {
            tensor.check_index(&idx)?;
            let mut key = idx.clone();
            key.sort_unstable();
            match orbits.get(&key) {
                Some(&prev) if prev != value => {
                    return Err(Error::ConflictingOrbit {
                        idx,
                        first: prev,
                        second: value,
                    })
                }
                Some(_) => {}
                None => {
                    orbits.insert(key, value);
                }
            }
        }
        let mut idx = vec![0; order];
        let mut key = vec![0; order];
        for flat in 0..tensor.data.len() {
            tensor.unflatten_into(flat, &mut idx);
            key.copy_from_slice(&idx);
            key.sort_unstable();
            if let Some(&v) = orbits.get(&key) {
                tensor.data[flat] = v;
            }
        }
        Ok(tensor)
    }

    /// Wraps a dense row-major array, rejecting it unless it is exactly
    /// symmetric.
    pub fn from_dense(order: usize, dim: usize, data: Vec<f64>) -> Result<Self> {
        check_shape(order, dim)?;
        let len = dim.pow(order as u32);
        if data.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: data.len(),
            });
        }
        let t = Self { order, dim, data };
        if let Some(idx) = t.first_asymmetry() {
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            return Err(Error::ConflictingOrbit {
                first: t.get(&sorted),
                second: t.get(&idx),
                idx,
            });
        }
        Ok(t)
    }

    /// Diagonal tensor with ones at `(i, i, ..., i)`.
    pub fn identity(order: usize, dim: usize) -> Result<Self> {
        Self::diagonal(order, &vec![1.0; dim])
    }

    /// Diagonal tensor with `diag[i]` at `(i, i, ..., i)`.
    pub fn diagonal(order: usize, diag: &[f64]) -> Result<Self> {
        let mut t = Self::zeros(order, diag.len())?;
        let stride: usize = (0..order).map(|k| diag.len().pow(k as u32)).sum();
        for (i, &d) in diag.iter().enumerate() {
            t.data[i * stride] = d;
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Entry at a zero-based index tuple. Panics if the tuple is malformed.
    pub fn get(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.order, "index arity");
        self.data[self.flatten(idx)]
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Iterates orbit representatives (nondecreasing index tuples) in
    /// lexicographic order together with their values.
    pub fn orbits(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        OrbitIter::new(self.order, self.dim).map(move |idx| {
            let v = self.get(&idx);
            (idx, v)
        })
    }

    /// Returns `true` when every entry equals the entry at its sorted index.
    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<Vec<usize>> {
        let mut idx = vec![0; self.order];
        let mut sorted = vec![0; self.order];
        for flat in 0..self.data.len() {
            self.unflatten_into(flat, &mut idx);
            sorted.copy_from_slice(&idx);
            sorted.sort_unstable();
            if self.data[self.flatten(&sorted)] != self.data[flat] {
                return Some(idx);
            }
        }
        None
    }

    /// `[A x^{m-1}]_i`: contracts modes 2..m against `x`.
    pub fn contract(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.contract_modes(x, self.order - 1)
    }

    /// `A x^{m-2}` as a row-major `n x n` matrix. The Jacobian of
    /// `x -> A x^{m-1}` is `(m - 1)` times this matrix.
    pub fn contract_to_matrix(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.contract_modes(x, self.order - 2)
    }

    /// Contracts the trailing `times` modes against `x`, leaving a tensor with
    /// `order - times` modes in row-major order.
    pub fn contract_modes(&self, x: &[Complex64], times: usize) -> Result<Vec<Complex64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        assert!(times <= self.order);
        let n = self.dim;
        let mut cur: Vec<Complex64> = self.data.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        for _ in 0..times {
            cur = cur
                .chunks_exact(n)
                .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
                .collect();
        }
        Ok(cur)
    }

    /// Real-vector contraction used by the Z-eigen routines.
    pub fn contract_real(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let n = self.dim;
        let mut cur = self.data.clone();
        for _ in 1..self.order {
            cur = cur
                .chunks_exact(n)
                .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
                .collect();
        }
        Ok(cur)
    }

    /// `A - lambda * I` for a real shift.
    pub fn shift_diagonal(&self, lambda: f64) -> Self {
        let mut t = self.clone();
        let stride: usize = (0..self.order).map(|k| self.dim.pow(k as u32)).sum();
        for i in 0..self.dim {
            t.data[i * stride] -= lambda;
        }
        t
    }

    /// Scales every entry, keeping symmetry.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            order: self.order,
            dim: self.dim,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.order {
            return Err(Error::IndexArity {
                idx: idx.to_vec(),
                order: self.order,
                found: idx.len(),
            });
        }
        if idx.iter().any(|&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange {
                idx: idx.to_vec(),
                dim: self.dim,
            });
        }
        Ok(())
    }

    fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    fn unflatten_into(&self, mut flat: usize, idx: &mut [usize]) {
        for slot in idx.iter_mut().rev() {
            *slot = flat % self.dim;
            flat /= self.dim;
        }
    }
}

fn check_shape(order: usize, dim: usize) -> Result<()> {
    if order < 2 || dim < 1 {
        return Err(Error::InvalidShape { order, dim });
    }
    Ok(())
}

/// Tensor Kronecker product `B ⊗ A`.
///
/// Index `i` of the result (zero-based) splits as `i = b * n_A + a` in every
/// mode, and the entry is `B(b_1..b_m) * A(a_1..a_m)`, matching
/// `kron_vec(v, u)` on vectors.
pub fn kron(b: &SymTensor, a: &SymTensor) -> Result<SymTensor> {
    if a.order != b.order {
        return Err(Error::OrderMismatch {
            left: b.order,
            right: a.order,
        });
    }
    let order = a.order;
    let dim = a.dim * b.dim;
    let mut out = SymTensor::zeros(order, dim)?;
    let mut idx = vec![0; order];
    let mut ia = vec![0; order];
    let mut ib = vec![0; order];
    for flat in 0..out.data.len() {
        out.unflatten_into(flat, &mut idx);
        for t in 0..order {
            ib[t] = idx[t] / a.dim;
            ia[t] = idx[t] % a.dim;
        }
        out.data[flat] = b.get(&ib) * a.get(&ia);
    }
    Ok(out)
}

/// Vector Kronecker product `v ⊗ u`: component `j * len(u) + i` is `v_j u_i`.
pub fn kron_vec<T>(v: &[T], u: &[T]) -> Vec<T>
where
    T: Copy + std::ops::Mul<Output = T>,
{
    v.iter()
        .flat_map(|&vj| u.iter().map(move |&ui| vj * ui))
        .collect()
}

/// Componentwise `p`-th power `x^{[p]}`.
pub fn hadamard_power(x: &[Complex64], p: u32) -> Vec<Complex64> {
    x.iter().map(|z| z.powu(p)).collect()
}

/// Singular values (descending) of the `rows x cols` matrix whose
/// column-major entries are `x`.
///
/// Uses one-sided Jacobi rotations, which keeps tiny singular values accurate
/// (a rank-one input gives a second value at rounding level).
pub fn reshape_singular_values(x: &[Complex64], rows: usize, cols: usize) -> Result<Vec<f64>> {
    if rows * cols != x.len() {
        return Err(Error::DimensionMismatch {
            expected: rows * cols,
            found: x.len(),
        });
    }
    let scale = x.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let max_imag = x.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    if max_imag > 1e-8 * scale.max(1.0) {
        return Err(Error::NotReal { max_imag });
    }
    // Work on whichever orientation has fewer columns.
    let (nc, mut cols_data) = if cols <= rows {
        let c: Vec<Vec<f64>> = (0..cols)
            .map(|j| (0..rows).map(|i| x[j * rows + i].re).collect())
            .collect();
        (cols, c)
    } else {
        let c: Vec<Vec<f64>> = (0..rows)
            .map(|i| (0..cols).map(|j| x[j * rows + i].re).collect())
            .collect();
        (rows, c)
    };
    const TOL: f64 = 1e-14;
    const MAX_SWEEPS: usize = 60;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..nc {
            for q in (p + 1)..nc {
                let alpha: f64 = cols_data[p].iter().map(|v| v * v).sum();
                let beta: f64 = cols_data[q].iter().map(|v| v * v).sum();
                let gamma: f64 = cols_data[p].iter().zip(&cols_data[q]).map(|(a, b)| a * b).sum();
                if gamma == 0.0 || gamma.abs() <= TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (lo, hi) = cols_data.split_at_mut(q);
                for (xp, xq) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (a, b) = (*xp, *xq);
                    *xp = c * a - s * b;
                    *xq = s * a + c * b;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols_data
        .iter()
        .map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Nondecreasing index tuples of length `order` over `0..dim`, in
/// lexicographic order.
pub(crate) struct OrbitIter {
    dim: usize,
    next: Option<Vec<usize>>,
}

impl OrbitIter {
    pub(crate) fn new(order: usize, dim: usize) -> Self {
        Self {
            dim,
            next: Some(vec![0; order]),
        }
    }
}

impl Iterator for OrbitIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut k = succ.len();
        while k > 0 && succ[k - 1] == self.dim - 1 {
            k -= 1;
        }
        if k > 0 {
            let v = succ[k - 1] + 1;
            for slot in &mut succ[k - 1..] {
                *slot = v;
            }
            self.next = Some(succ);
        }
        Some(cur)
    }
}
