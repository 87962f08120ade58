//! Parse a sequence, list its k-mers, and show their one-hot encodings and ranks.

use minlab::alphabet::{kmer_rank, kmers, one_hot, parse_sequence, Alphabet};

fn main() {
    let dna = Alphabet::dna();
    let seq = parse_sequence("ACGTNACG", &dna);
    println!("sequence {} ({} gaps)", seq.render(&dna, '-'), seq.gap_count());
    for km in kmers(&seq, 3) {
        let e = one_hot(&km, &dna);
        let bits: String = e.bits().iter().map(|&b| if b { '1' } else { '0' }).collect();
        let text: String = km.symbols().iter().map(|&c| dna.symbol(c).unwrap()).collect();
        println!("pos {:>2}  {text}  rank {:>2}  {bits}", km.position(), kmer_rank(&km, &dna).unwrap());
    }
}
