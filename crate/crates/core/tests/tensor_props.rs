mod common;

use common::{random_tensor, real};
use kron_heig::fixtures;
use kron_heig::tensor::{hadamard_power, json, kron, kron_vec, SymTensor};
use kron_heig::{Complex64, Error};
use proptest::prelude::*;

fn complex_vec(dim: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim)
        .prop_map(|v| v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect())
}

fn max_diff(p: &[Complex64], q: &[Complex64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max)
}

#[test]
fn reference_product_entries() {
    let c = kron(&fixtures::tensor_b(), &fixtures::tensor_a()).unwrap();
    assert_eq!(c.order(), 3);
    assert_eq!(c.dim(), 4);
    for (idx, v) in fixtures::C_ENTRIES {
        let i: Vec<usize> = idx.iter().map(|k| k - 1).collect();
        assert!((c.get(&i) - v).abs() <= 1e-15, "{idx:?}");
    }
    assert!(c.is_symmetric());
}

#[test]
fn kron_edge_cases() {
    let i2 = SymTensor::identity(3, 2).unwrap();
    assert_eq!(kron(&i2, &i2).unwrap(), SymTensor::identity(3, 4).unwrap());
    let z = SymTensor::zeros(3, 3).unwrap();
    assert!(kron(&z, &fixtures::tensor_a())
        .unwrap()
        .as_slice()
        .iter()
        .all(|&v| v == 0.0));
    let t4 = SymTensor::identity(4, 2).unwrap();
    assert!(matches!(
        kron(&t4, &i2),
        Err(Error::OrderMismatch { left: 4, right: 3 })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contraction_factorizes(
        seed in any::<u64>(),
        (order, na, nb) in (3usize..=4, 1usize..=3, 1usize..=3),
        u in complex_vec(3),
        v in complex_vec(3),
    ) {
        let a = random_tensor(order, na, seed);
        let b = random_tensor(order, nb, seed ^ 1);
        let (u, v) = (&u[..na], &v[..nb]);
        let c = kron(&b, &a).unwrap();
        prop_assert!(c.is_symmetric());
        let lhs = c.contract(&kron_vec(v, u)).unwrap();
        let rhs = kron_vec(&b.contract(v).unwrap(), &a.contract(u).unwrap());
        prop_assert!(max_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn contraction_is_homogeneous(seed in any::<u64>(), order in 2usize..=5, x in complex_vec(3), re in -2.0..2.0f64, im in -2.0..2.0f64) {
        let a = random_tensor(order, 3, seed);
        let alpha = Complex64::new(re, im);
        let ax: Vec<Complex64> = x.iter().map(|v| v * alpha).collect();
        let lhs = a.contract(&ax).unwrap();
        let scale = alpha.powu(order as u32 - 1);
        let rhs: Vec<Complex64> = a.contract(&x).unwrap().iter().map(|v| v * scale).collect();
        let tol = 1e-12 * (1.0 + scale.norm()) * 10.0;
        prop_assert!(max_diff(&lhs, &rhs) < tol);
    }

    #[test]
    fn hadamard_commutes_with_kron(u in complex_vec(2), v in complex_vec(3), p in 1u32..=4) {
        let lhs = hadamard_power(&kron_vec(&v, &u), p);
        let rhs = kron_vec(&hadamard_power(&v, p), &hadamard_power(&u, p));
        prop_assert!(max_diff(&lhs, &rhs) < 1e-14);
    }

    #[test]
    fn real_and_complex_contractions_agree(seed in any::<u64>(), x in prop::collection::vec(-1.0..1.0f64, 3)) {
        let a = random_tensor(3, 3, seed);
        let r = a.contract_real(&x).unwrap();
        let c = a.contract(&real(&x)).unwrap();
        prop_assert!(max_diff(&real(&r), &c) < 1e-15);
    }

    #[test]
    fn file_round_trip(seed in any::<u64>(), order in 2usize..=4, dim in 1usize..=4) {
        let t = random_tensor(order, dim, seed);
        let f = tempfile::NamedTempFile::new().unwrap();
        json::to_writer(&t, f.as_file()).unwrap();
        prop_assert_eq!(json::read_path(f.path()).unwrap(), t);
    }
}
