//! All complex H-eigenpairs of a random 4-dimensional order-3 tensor by
//! homotopy continuation. Usage: `h_spectrum_homotopy [seed]`.

use kron_heig::homotopy::{h_spectrum, HomotopyConfig};
use kron_heig::tensor::SymTensor;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> kron_heig::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (order, dim) = (3, 4);
    let orbits: Vec<(Vec<usize>, f64)> = SymTensor::zeros(order, dim)?
        .orbits()
        .map(|(idx, _)| (idx, rng.random_range(-1.0..1.0)))
        .collect();
    let t = SymTensor::build_symmetric(order, dim, orbits)?;

    let start = std::time::Instant::now();
    let res = h_spectrum(&t, &HomotopyConfig::with_seed(seed))?;
    let s = &res.summary;
    println!(
        "{} of {} eigenpairs in {:.1?} ({} paths, {} converged, {} diverged)",
        s.found_count,
        s.expected_count,
        start.elapsed(),
        res.stats.tracked,
        res.stats.converged,
        res.stats.diverged
    );
    for p in &s.eigenpairs {
        println!(
            "  lambda = {:>16.12} {:+.12}i   residual {:.1e}",
            p.lambda.re, p.lambda.im, p.residual
        );
    }
    println!("spectral radius {:.12}", s.spectral_radius);
    Ok(())
}
