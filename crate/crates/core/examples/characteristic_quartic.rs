//! For 2 x 2 x 2 tensors the H-eigenvalues are the roots of
//! hyperdet(A − λI), a quartic in λ. Compares that route with homotopy.

use kron_heig::binary_cubic::BinaryCubic;
use kron_heig::fixtures;
use kron_heig::homotopy::{h_spectrum, HomotopyConfig};

fn show(name: &str, t: BinaryCubic) -> kron_heig::Result<()> {
    println!("{name} = {:?}", t.as_array());
    println!("  hyperdet          {:.12}", t.hyperdet());
    println!("  char polynomial   {:.6}", t.char_poly());
    let q = t.h_spectrum()?;
    let h = h_spectrum(&t.to_tensor(), &HomotopyConfig::default())?.summary;
    for (p, r) in q.eigenpairs.iter().zip(&h.eigenpairs) {
        println!(
            "  quartic {:>15.12} {:+.12}i   homotopy {:>15.12} {:+.12}i",
            p.lambda.re, p.lambda.im, r.lambda.re, r.lambda.im
        );
    }
    if let Some(d) = &q.det_check {
        println!("  product of roots minus hyperdet: {:.1e}", d.error());
    }
    for p in q.eigenpairs.iter().filter(|p| p.lambda.im.abs() < 1e-12) {
        let v = t.recover_vector(p.lambda)?;
        println!(
            "  lambda {:.6}: x = [{:.6}, {:.6}]",
            p.lambda.re, v[0].re, v[1].re
        );
    }
    Ok(())
}

fn main() -> kron_heig::Result<()> {
    show("A", fixtures::A)?;
    show("B", fixtures::B)?;
    show("diag(2, -3)", BinaryCubic::new(2.0, 0.0, 0.0, -3.0))
}
