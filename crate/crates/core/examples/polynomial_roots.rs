//! Simultaneous root finding for complex polynomials.

use kron_heig::poly::CPoly;
use kron_heig::Complex64;

fn main() -> kron_heig::Result<()> {
    // z^5 - 1
    let p = CPoly::from_real(&[-1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    println!("roots of {p}:");
    for r in p.all_roots()? {
        println!(
            "  {:.15} {:+.15}i   |p(r)| = {:.1e}",
            r.re,
            r.im,
            p.eval(r).norm()
        );
    }

    let roots = [
        Complex64::new(2.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(-1.0, 3.0),
        Complex64::new(0.0, -0.5),
    ];
    let q = CPoly::from_roots(&roots);
    println!("\nroots of {q} (double root at 2):");
    for r in q.all_roots()? {
        println!("  {:.10} {:+.10}i", r.re, r.im);
    }
    println!("product of roots (Vieta): {:.12}", q.product_of_roots()?);
    Ok(())
}
