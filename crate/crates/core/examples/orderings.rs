//! Score a few k-mers under the three ordering families.

use minlab::alphabet::{Alphabet, Kmer};
use minlab::hashing::SchemeKind;

fn main() {
    let dna = Alphabet::dna();
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let words = ["AAAAAAAA", "ACGTACGT", "TTAGGGTT", "TTAGGGTA"];
    for scheme in [SchemeKind::MultiplyShiftMin, SchemeKind::GaussianMax, SchemeKind::LexicographicMin] {
        let o = scheme.ordering(dna.size(), 8, seed);
        println!("{} ({:?} wins)", scheme.label(), o.sense());
        for w in words {
            println!("  {w}  {:?}", o.score(&Kmer::parse(w, &dna).unwrap(), &dna).unwrap());
        }
    }
}
