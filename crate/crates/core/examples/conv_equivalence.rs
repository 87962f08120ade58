//! Convolution + max-pooling picks the same k-mers as a Gaussian-max minimizer.

use minlab::conv::{conv_layer, equivalence_check, maxpool_layer};
use minlab::hashing::GaussianFilter;
use minlab::minimizer::TiePolicy;
use minlab::simulation::uniform_random_sequence;

fn main() -> minlab::error::Result<()> {
    let (k, w) = (8, 19);
    let seq = uniform_random_sequence(200, 4, 7);
    let filter = GaussianFilter::new(4 * k, 11);

    let pooled = maxpool_layer(&conv_layer(&seq, &filter, k)?, w, 1, TiePolicy::Leftmost)?;
    println!("first pooled windows:");
    for p in pooled.windows.iter().take(5) {
        println!("  window {:>3}: max {:+.6} at {}", p.start, p.value, p.argmax);
    }

    for ties in [TiePolicy::Leftmost, TiePolicy::Rightmost, TiePolicy::PreferPrevious] {
        let r = equivalence_check(&seq, k, w, &filter, ties)?;
        println!("{:>15}: {} windows, identical = {}", ties.label(), r.windows_checked, r.passed());
    }
    Ok(())
}
