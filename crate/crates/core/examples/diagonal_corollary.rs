//! For diagonal tensors the H-spectrum of B ⊗ A is the set of products of
//! diagonal entries, so the spectral radius is multiplicative.

use kron_heig::homotopy::{h_spectrum, HomotopyConfig};
use kron_heig::tensor::{kron, SymTensor};

fn main() -> kron_heig::Result<()> {
    let (da, db) = ([0.9, -0.4], [0.6, 1.3]);
    let c = kron(&SymTensor::diagonal(3, &db)?, &SymTensor::diagonal(3, &da)?)?;
    let spectrum = h_spectrum(&c, &HomotopyConfig::default())?.summary;
    println!("distinct eigenvalues of B ⊗ A:");
    for p in &spectrum.eigenpairs {
        println!("  {:>8.5} (from {} paths)", p.lambda.re, p.multiplicity);
    }
    let mut products: Vec<f64> = db.iter().flat_map(|b| da.iter().map(move |a| a * b)).collect();
    products.sort_by(|p, q| q.abs().total_cmp(&p.abs()));
    println!("pairwise products: {products:?}");
    println!(
        "rho(C) = {:.12}, rho(A) rho(B) = {:.12}",
        spectrum.spectral_radius,
        0.9 * 1.3
    );
    Ok(())
}
