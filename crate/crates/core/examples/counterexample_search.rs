//! Random search for pairs with rho(B ⊗ A) > rho(A) rho(B).
//! Usage: `counterexample_search [samples] [uniform|positive|diagonal-dominant]`.

use kron_heig::search::{run_search_streaming, SamplingClass, SearchOutcome};

fn main() {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let class: SamplingClass = args
        .next()
        .map(|s| s.parse().unwrap_or_else(|e| panic!("{e}")))
        .unwrap_or(SamplingClass::Uniform);
    let summary = run_search_streaming(class, samples, 7, |o| {
        if let SearchOutcome::Record(r) = o {
            if r.is_counterexample {
                println!(
                    "#{:<4} rho(A) {:.6}  rho(B) {:.6}  rho(C) {:.6}  gap {:.3e}",
                    r.index, r.rho_a, r.rho_b, r.rho_c, r.gap
                );
            }
        }
    });
    println!(
        "{class}: {} of {} pairs are counterexamples, max gap {:.3e}, {} skipped",
        summary.counterexamples, summary.evaluated, summary.max_gap, summary.skipped
    );
}
