//! Kronecker products of symmetric tensors and vectors, and the identity
//! (B ⊗ A)(v ⊗ u)^{m−1} = (B v^{m−1}) ⊗ (A u^{m−1}).

use kron_heig::tensor::{json, kron, kron_vec, SymTensor};
use kron_heig::{fixtures, Complex64};

fn main() -> kron_heig::Result<()> {
    let (a, b) = (fixtures::tensor_a(), fixtures::tensor_b());
    let c = kron(&b, &a)?;
    println!("B ⊗ A: order {}, dimension {}", c.order(), c.dim());
    for (idx, v) in c.orbits() {
        let one_based: Vec<usize> = idx.iter().map(|i| i + 1).collect();
        println!("  C{one_based:?} = {v}");
    }

    let u = [Complex64::new(0.6, 0.1), Complex64::new(-0.3, 0.4)];
    let v = [Complex64::new(1.2, 0.0), Complex64::new(0.5, -0.7)];
    let lhs = c.contract(&kron_vec(&v, &u))?;
    let rhs = kron_vec(&b.contract(&v)?, &a.contract(&u)?);
    let err = lhs
        .iter()
        .zip(&rhs)
        .map(|(p, q)| (p - q).norm())
        .fold(0.0f64, f64::max);
    println!("contraction factorization error: {err:.2e}");

    let id = kron(&SymTensor::identity(3, 2)?, &SymTensor::identity(3, 2)?)?;
    println!("I ⊗ I == I(4): {}", id == SymTensor::identity(3, 4)?);

    println!("\nJSON form of A:\n{}", json::to_string(&a));
    Ok(())
}
