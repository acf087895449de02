//! Builds the 2 x 2 x 2 pair, its Kronecker product, and shows that the
//! H-spectral radius of the product exceeds the product of radii.

use kron_heig::fixtures;
use kron_heig::homotopy::{h_spectrum, HomotopyConfig};
use kron_heig::tensor::{kron, reshape_singular_values};

fn main() -> kron_heig::Result<()> {
    let (a, b) = (fixtures::tensor_a(), fixtures::tensor_b());
    let rho_a = fixtures::A.h_spectrum()?.spectral_radius;
    let rho_b = fixtures::B.h_spectrum()?.spectral_radius;
    println!("rho(A)        = {rho_a:.12}");
    println!("rho(B)        = {rho_b:.12}");
    println!("rho(A) rho(B) = {:.12}", rho_a * rho_b);

    let c = kron(&b, &a)?;
    let spectrum = h_spectrum(&c, &HomotopyConfig::default())?.summary;
    let dom = spectrum.dominant().expect("non-empty spectrum");
    println!(
        "rho(B ⊗ A)    = {:.12}  ({} eigenpairs of {} expected)",
        spectrum.spectral_radius, spectrum.found_count, spectrum.expected_count
    );
    println!("dominant eigenvalue {:.12}{:+.1e}i", dom.lambda.re, dom.lambda.im);
    let x: Vec<String> = dom.x.iter().map(|z| format!("{:.12}", z.re)).collect();
    println!("eigenvector  [{}]", x.join(", "));
    let sv = reshape_singular_values(&dom.x, 2, 2)?;
    println!(
        "reshaped to 2 x 2: singular values {:.6}, {:.6} (rank 2, not a Kronecker product)",
        sv[0], sv[1]
    );
    println!("gap = {:.6e}", spectrum.spectral_radius - rho_a * rho_b);
    Ok(())
}
