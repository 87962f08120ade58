//! MinHash collision rate tracks the Jaccard index.

use minlab::alphabet::Alphabet;
use minlab::hashing::SchemeKind;
use minlab::parallel::Workers;
use minlab::suite::distinct_kmers;
use minlab::validation::jaccard_collision_rate;

fn main() -> minlab::error::Result<()> {
    let dna = Alphabet::dna();
    let pool = distinct_kmers(20, 8, 4, 9);
    for (lo, hi) in [(0, 10), (2, 10), (5, 15), (10, 20)] {
        let (a, b) = (&pool[0..10], &pool[lo..hi]);
        let c = jaccard_collision_rate(a, b, &dna, 10_000, 1, SchemeKind::MultiplyShiftMin, Workers::from_env()?)?;
        println!("jaccard {:.3}  collision rate {:.4} +- {:.4}", c.jaccard, c.rate, c.half_width);
    }
    Ok(())
}
