//! The 2 x 2 x 2 pair whose Kronecker product breaks H-eigenvalue
//! multiplicativity, together with reference values for it.

use num_complex::Complex64;

use crate::binary_cubic::BinaryCubic;
use crate::tensor::SymTensor;

/// `A(1,1,1) = 0.3`, `A(1,1,2) = −0.3`, `A(1,2,2) = 0`, `A(2,2,2) = 1`.
pub const A: BinaryCubic = BinaryCubic {
    a: 0.3,
    b: -0.3,
    c: 0.0,
    d: 1.0,
};

/// `B(1,1,1) = 0.7`, `B(1,1,2) = −0.2`, `B(1,2,2) = −0.2`, `B(2,2,2) = −0.8`.
pub const B: BinaryCubic = BinaryCubic {
    a: 0.7,
    b: -0.2,
    c: -0.2,
    d: -0.8,
};

pub fn tensor_a() -> SymTensor {
    A.to_tensor()
}

pub fn tensor_b() -> SymTensor {
    B.to_tensor()
}

/// The 20 orbit values of `B ⊗ A` (1-based indices).
pub const C_ENTRIES: [([usize; 3], f64); 20] = [
    ([1, 1, 1], 0.21),
    ([1, 1, 2], -0.21),
    ([1, 1, 3], -0.06),
    ([1, 1, 4], 0.06),
    ([1, 2, 2], 0.0),
    ([1, 2, 3], 0.06),
    ([1, 2, 4], -0.0),
    ([1, 3, 3], -0.06),
    ([1, 3, 4], 0.06),
    ([1, 4, 4], -0.0),
    ([2, 2, 2], 0.7),
    ([2, 2, 3], -0.0),
    ([2, 2, 4], -0.2),
    ([2, 3, 3], 0.06),
    ([2, 3, 4], -0.0),
    ([2, 4, 4], -0.2),
    ([3, 3, 3], -0.24),
    ([3, 3, 4], 0.24),
    ([3, 4, 4], -0.0),
    ([4, 4, 4], -0.8),
];

/// Rational quartic coefficients `(numerator, denominator)`, constant term
/// first.
pub const QUARTIC_A: [(i64, i64); 5] = [(-9, 500), (-84, 125), (229, 100), (-13, 5), (1, 1)];
pub const QUARTIC_B: [(i64, i64); 5] = [(279, 625), (-9, 125), (-27, 20), (1, 5), (1, 1)];

pub fn quartic_coeffs(q: &[(i64, i64); 5]) -> [f64; 5] {
    q.map(|(n, d)| n as f64 / d as f64)
}

pub const HYPERDET_A: f64 = -9.0 / 500.0;
pub const HYPERDET_B: f64 = 279.0 / 625.0;

pub fn eigenvalues_a() -> [Complex64; 4] {
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.812327806563, 0.264915863899),
        Complex64::new(0.812327806563, -0.264915863899),
        Complex64::new(-0.024655613126, 0.0),
    ]
}

pub fn eigenvalues_b() -> [Complex64; 4] {
    [
        Complex64::new(-0.70932967445, 0.0),
        Complex64::new(0.771909217754, 0.111810698762),
        Complex64::new(0.771909217754, -0.111810698762),
        Complex64::new(-1.034488761057, 0.0),
    ]
}

pub const RHO_A: f64 = 1.0;
pub const RHO_B: f64 = 1.034488761057;

/// Dominant H-eigenvector of `B ⊗ A`, 12 digits.
pub const C_EIGENVECTOR: [f64; 4] = [0.099076279319, 0.427548807059, -0.034228101784, 0.89789439552];
/// Magnitude of its eigenvalue. With the entries above and this vector the
/// eigenvalue itself is negative, see [`C_EIGENVALUE`].
pub const RHO_C: f64 = 1.035240007957;
pub const C_EIGENVALUE: f64 = -RHO_C;

/// Singular values of [`C_EIGENVECTOR`] reshaped to 2 x 2, to 3 digits.
pub const C_RESHAPE_SVALS: [f64; 2] = [0.995, 0.105];
