//! Dominant real Z-eigenpairs by the shifted power method and the
//! Kronecker factorization that holds for them.

use kron_heig::fixtures;
use kron_heig::zeig::{dominant_zeig, sshopm_trace, verify_kron_zeig, Shift, DEFAULT_STARTS};

fn main() -> kron_heig::Result<()> {
    let (a, b) = (fixtures::tensor_a(), fixtures::tensor_b());
    let (p, trace) = sshopm_trace(&a, Shift::Adaptive { maximize: true }, &[1.0, 1.0], 10_000)?;
    println!(
        "single run on A from (1, 1): lambda {:.12} after {} iterations",
        p.lambda, p.iterations
    );
    let shown: Vec<String> = trace.iter().take(6).map(|l| format!("{l:.6}")).collect();
    println!("  first estimates (monotone): {}", shown.join(" "));

    let u = dominant_zeig(&a, DEFAULT_STARTS, 0)?;
    let v = dominant_zeig(&b, DEFAULT_STARTS, 0)?;
    println!("dominant A: lambda {:.12}  x {:.6?}", u.lambda, u.x);
    println!("dominant B: lambda {:.12}  x {:.6?}", v.lambda, v.x);
    let k = verify_kron_zeig(&a, &b, &u, &v)?;
    println!(
        "(lambda_A lambda_B, v ⊗ u) on B ⊗ A: lambda {:.12}, residual {:.1e}, {}",
        k.lambda,
        k.residual,
        if k.pass { "is a Z-eigenpair" } else { "FAILS" }
    );
    Ok(())
}
