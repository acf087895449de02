use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::tensor::SymTensor;

/// A square polynomial system `F: ℂᴺ → ℂᴺ` with an analytic Jacobian.
pub trait PolySystem: Sync {
    fn size(&self) -> usize;

    /// Writes `F(z)` into `f` and the row-major Jacobian into `jac`.
    fn eval_jac(&self, z: &[Complex64], f: &mut [Complex64], jac: &mut [Complex64]);

    fn eval(&self, z: &[Complex64]) -> Vec<Complex64> {
        let n = self.size();
        let mut f = vec![Complex64::new(0.0, 0.0); n];
        let mut jac = vec![Complex64::new(0.0, 0.0); n * n];
        self.eval_jac(z, &mut f, &mut jac);
        f
    }
}

/// Deterministic RNG for a `(seed, stream)` pair.
pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Complex number with modulus uniform on `[lo, hi]` and uniform phase.
pub(crate) fn random_complex(rng: &mut impl Rng, lo: f64, hi: f64) -> Complex64 {
    let r = rng.random_range(lo..=hi);
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, theta)
}

/// The H-eigen system in unknowns `z = (x₁, …, xₙ, λ)`:
///
/// ```text
/// F_i(z)   = [A x^{m−1}]_i − λ x_i^{m−1}     i = 1..n
/// F_{n+1}  = b·x − 1
/// ```
///
/// The affine chart `b·x = 1` with random `b` picks one representative of
/// each eigenvector's scaling class.
#[derive(Clone, Debug)]
pub struct EigSystem {
    tensor: SymTensor,
    normalization: Vec<Complex64>,
}

impl EigSystem {
    pub fn new(tensor: SymTensor, seed: u64) -> Self {
        let mut rng = rng_for(seed, 0);
        let normalization = (0..tensor.dim())
            .map(|_| random_complex(&mut rng, 0.5, 1.5))
            .collect();
        Self {
            tensor,
            normalization,
        }
    }

    pub fn tensor(&self) -> &SymTensor {
        &self.tensor
    }

    pub fn normalization(&self) -> &[Complex64] {
        &self.normalization
    }

    /// Point `(x, λ)` rescaled onto the chart `b·x = 1`. `None` when `x`
    /// lies on the chart's hyperplane at infinity.
    pub fn chart_point(&self, x: &[Complex64], lambda: Complex64) -> Option<Vec<Complex64>> {
        let bx: Complex64 = self.normalization.iter().zip(x).map(|(b, v)| b * v).sum();
        if bx.norm() < 1e-14 {
            return None;
        }
        let mut z: Vec<Complex64> = x.iter().map(|v| v / bx).collect();
        z.push(lambda);
        Some(z)
    }
}

impl PolySystem for EigSystem {
    fn size(&self) -> usize {
        self.tensor.dim() + 1
    }

    fn eval_jac(&self, z: &[Complex64], f: &mut [Complex64], jac: &mut [Complex64]) {
        let n = self.tensor.dim();
        let m = self.tensor.order();
        let size = n + 1;
        let x = &z[..n];
        let lambda = z[n];
        // M = A x^{m-2}; A x^{m-1} = M x; d(A x^{m-1})/dx = (m-1) M
        let mat = self.tensor.contract_to_matrix(x).expect("system dimension");
        let p = (m - 1) as f64;
        for i in 0..n {
            let row = &mat[i * n..(i + 1) * n];
            let ax: Complex64 = row.iter().zip(x).map(|(a, v)| a * v).sum();
            let xpow = x[i].powu(m as u32 - 2);
            f[i] = ax - lambda * xpow * x[i];
            for j in 0..n {
                jac[i * size + j] = row[j] * p;
            }
            jac[i * size + i] -= lambda * xpow * p;
            jac[i * size + n] = -xpow * x[i];
        }
        let bx: Complex64 = self.normalization.iter().zip(x).map(|(b, v)| b * v).sum();
        f[n] = bx - 1.0;
        jac[n * size..n * size + n].copy_from_slice(&self.normalization);
        jac[n * size + n] = Complex64::new(0.0, 0.0);
    }
}

/// Total-degree start system
///
/// ```text
/// G_i(z)   = x_i^m − c_i      i = 1..n
/// G_{n+1}  = λ − c_{n+1}
/// ```
///
/// whose `mⁿ` roots are known in closed form.
#[derive(Clone, Debug)]
pub struct StartSystem {
    degree: u32,
    constants: Vec<Complex64>,
}

impl StartSystem {
    pub fn new(dim: usize, degree: u32, seed: u64) -> Self {
        let mut rng = rng_for(seed, 1);
        Self {
            degree,
            constants: (0..=dim).map(|_| random_complex(&mut rng, 0.5, 1.5)).collect(),
        }
    }

    pub fn for_system(sys: &EigSystem, seed: u64) -> Self {
        Self::new(sys.tensor.dim(), sys.tensor.order() as u32, seed)
    }

    pub fn constants(&self) -> &[Complex64] {
        &self.constants
    }

    /// All `mⁿ` roots, enumerated with the first coordinate's root index
    /// varying slowest.
    pub fn start_points(&self) -> Vec<Vec<Complex64>> {
        let n = self.constants.len() - 1;
        let m = self.degree as usize;
        let roots: Vec<Vec<Complex64>> = self.constants[..n]
            .iter()
            .map(|c| {
                let base = c.powf(1.0 / m as f64);
                (0..m)
                    .map(|k| base * Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64))
                    .collect()
            })
            .collect();
        let total = m.pow(n as u32);
        (0..total)
            .map(|mut k| {
                let mut z = vec![Complex64::new(0.0, 0.0); n + 1];
                for i in (0..n).rev() {
                    z[i] = roots[i][k % m];
                    k /= m;
                }
                z[n] = self.constants[n];
                z
            })
            .collect()
    }
}

impl PolySystem for StartSystem {
    fn size(&self) -> usize {
        self.constants.len()
    }

    fn eval_jac(&self, z: &[Complex64], f: &mut [Complex64], jac: &mut [Complex64]) {
        let size = self.constants.len();
        let n = size - 1;
        jac.fill(Complex64::new(0.0, 0.0));
        for i in 0..n {
            let p = z[i].powu(self.degree - 1);
            f[i] = p * z[i] - self.constants[i];
            jac[i * size + i] = p * self.degree as f64;
        }
        f[n] = z[n] - self.constants[n];
        jac[n * size + n] = Complex64::new(1.0, 0.0);
    }
}
