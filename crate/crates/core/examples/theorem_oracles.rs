//! Max-probabilities of Gaussian dot-product hashing and the conditional-mean
//! profile around the maximizer.

use minlab::alphabet::OneHotVector;
use minlab::parallel::Workers;
use minlab::validation::{check_degree_monotonicity, conditional_expectation_profile};

fn main() -> minlab::error::Result<()> {
    let workers = Workers::from_env()?;
    let set: Vec<_> = ["1100", "1010", "0011"].iter().map(|s| OneHotVector::parse(s)).collect::<Result<_, _>>()?;
    let r = check_degree_monotonicity(&set, 1_000_000, 1, workers)?;
    for ((x, p), d) in ["1100", "1010", "0011"].iter().zip(&r.estimate.probabilities).zip(&r.degrees) {
        println!("{x}: degree {d}, P(max) = {p:.4}");
    }
    println!("monotone in degree: {}", r.passed());

    let profile = conditional_expectation_profile(3, 4, 10_000, 1, workers)?;
    for b in &profile.bins {
        println!("L1 {:>2} ({:>2} k-mers): mean score {:+.4} +- {:.4}", b.distance, b.size, b.summary.mean, b.summary.stderr);
    }
    Ok(())
}
