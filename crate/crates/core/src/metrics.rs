//! Hamming-distance statistics over k-mers and one-hot vectors.
//!
//! Figure-level statistics are in symbol-Hamming units (range `[0, k]`).
//! [`degree`] works on binary vectors and uses L1 distance, which is twice
//! the symbol-Hamming distance for one-hot encodings.

use crate::alphabet::{Kmer, OneHotVector};
use crate::error::{Error, Result};

pub fn hamming(x: &Kmer, y: &Kmer) -> Result<usize> {
    if x.k() != y.k() {
        return Err(Error::DimensionMismatch {
            expected: x.k(),
            actual: y.k(),
        });
    }
    Ok(x.symbols().iter().zip(y.symbols()).filter(|(a, b)| a != b).count())
}

/// Sum of L1 distances from `x` to every member of `set`.
pub fn degree(x: &OneHotVector, set: &[OneHotVector]) -> Result<usize> {
    let mut total = 0;
    for s in set {
        if s.ones() != x.ones() {
            return Err(Error::InvalidParameter(format!(
                "set-bit count mismatch: {} vs {}",
                x.ones(),
                s.ones()
            )));
        }
        total += x.l1(s)?;
    }
    Ok(total)
}

/// Whether repeated minimizer values at different positions count once per
/// position or once per value in the pairwise statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MinimizerWeighting {
    #[default]
    PerPosition,
    PerValue,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceStats {
    /// Mean Hamming distance over all (minimizer, k-mer occurrence) pairs.
    pub mean_to_all: f64,
    /// Mean Hamming distance over unordered pairs of distinct minimizers;
    /// `None` with fewer than two.
    pub mean_pairwise: Option<f64>,
    pub minimizers: usize,
    pub kmers: usize,
}

/// Per-position symbol histogram of a k-mer collection.
struct ColumnCounts {
    k: usize,
    sigma: usize,
    counts: Vec<u64>,
    n: u64,
}

impl ColumnCounts {
    fn new<'a>(kmers: impl IntoIterator<Item = &'a Kmer>, k: usize, sigma: usize) -> Result<Self> {
        let mut counts = vec![0u64; k * sigma];
        let mut n = 0;
        for km in kmers {
            if km.k() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    actual: km.k(),
                });
            }
            for (j, &c) in km.symbols().iter().enumerate() {
                counts[j * sigma + c as usize] += 1;
            }
            n += 1;
        }
        Ok(Self { k, sigma, counts, n })
    }

    /// Sum of Hamming distances from `x` to every counted k-mer.
    fn distance_sum(&self, x: &Kmer) -> u64 {
        debug_assert_eq!(x.k(), self.k);
        x.symbols()
            .iter()
            .enumerate()
            .map(|(j, &c)| self.n - self.counts[j * self.sigma + c as usize])
            .sum()
    }
}

/// Mean distances of `minimizers` to `all_kmers` and among themselves.
///
/// Uses per-column symbol counts, so the cost is `O((M + N) k)` rather than
/// `O(M N k)`; sums are exact integers.
pub fn distance_stats(
    minimizers: &[Kmer],
    all_kmers: &[Kmer],
    sigma: usize,
    weighting: MinimizerWeighting,
) -> Result<DistanceStats> {
    let first = minimizers.first().ok_or(Error::EmptySet)?;
    if all_kmers.is_empty() {
        return Err(Error::EmptySet);
    }
    let k = first.k();
    let mut picked: Vec<&Kmer> = minimizers.iter().collect();
    if weighting == MinimizerWeighting::PerValue {
        picked.sort_by(|a, b| a.symbols().cmp(b.symbols()));
        picked.dedup_by(|a, b| a.symbols() == b.symbols());
    }
    let everything = ColumnCounts::new(all_kmers.iter(), k, sigma)?;
    let among = ColumnCounts::new(picked.iter().copied(), k, sigma)?;

    let m = picked.len() as u64;
    let to_all: u64 = picked.iter().map(|x| everything.distance_sum(x)).sum();
    // ordered pairs, self-pairs contribute zero
    let ordered: u64 = picked.iter().map(|x| among.distance_sum(x)).sum();

    Ok(DistanceStats {
        mean_to_all: to_all as f64 / (m * everything.n) as f64,
        mean_pairwise: (m >= 2).then(|| ordered as f64 / (m * (m - 1)) as f64),
        minimizers: picked.len(),
        kmers: all_kmers.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{one_hot, Alphabet};

    fn km(s: &str) -> Kmer {
        Kmer::parse(s, &Alphabet::dna()).unwrap()
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming(&km("ACGT"), &km("ACGT")).unwrap(), 0);
        assert_eq!(hamming(&km("AAAA"), &km("TTTT")).unwrap(), 4);
        assert!(hamming(&km("AAA"), &km("AAAA")).is_err());
    }

    #[test]
    fn l1_is_twice_hamming_on_all_2mers() {
        let a = Alphabet::dna();
        let all: Vec<Kmer> = (0..16u8).map(|r| Kmer::new(vec![r / 4, r % 4], 0)).collect();
        let mut pairs = 0;
        for x in &all {
            for y in &all {
                assert_eq!(one_hot(x, &a).l1(&one_hot(y, &a)).unwrap(), 2 * hamming(x, y).unwrap());
                pairs += 1;
            }
        }
        assert_eq!(pairs, 256);
    }

    #[test]
    fn degree_examples() {
        let set: Vec<_> = ["1100", "1010", "0011"].iter().map(|s| OneHotVector::parse(s).unwrap()).collect();
        let d: Vec<_> = set.iter().map(|x| degree(x, &set).unwrap()).collect();
        assert_eq!(d, [6, 4, 6]);
        assert_eq!(d.iter().sum::<usize>() % 2, 0);
        assert_eq!(degree(&set[0], &set[..1]).unwrap(), 0);
        assert!(degree(&set[0], &[OneHotVector::parse("1110").unwrap()]).is_err());
        assert!(degree(&set[0], &[OneHotVector::parse("11000").unwrap()]).is_err());
    }

    #[test]
    fn distance_stats_matches_brute_force() {
        let all: Vec<Kmer> = ["ACGT", "CCGT", "TTTT", "ACGA", "GGGG", "ACGT"].iter().map(|s| km(s)).collect();
        let mins = vec![all[0].clone(), all[2].clone(), all[5].clone()];
        let st = distance_stats(&mins, &all, 4, MinimizerWeighting::PerPosition).unwrap();

        let to_all: usize = mins.iter().flat_map(|m| all.iter().map(move |x| hamming(m, x).unwrap())).sum();
        assert_eq!(st.mean_to_all, to_all as f64 / 18.0);
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let pw: usize = pairs.iter().map(|&(i, j)| hamming(&mins[i], &mins[j]).unwrap()).sum();
        assert_eq!(st.mean_pairwise, Some(pw as f64 / 3.0));

        let by_value = distance_stats(&mins, &all, 4, MinimizerWeighting::PerValue).unwrap();
        assert_eq!(by_value.minimizers, 2);
        assert_eq!(by_value.mean_pairwise, Some(3.0));
    }

    #[test]
    fn identical_minimizers_have_zero_pairwise() {
        let all = vec![km("ACGT"), km("ACGT"), km("ACGA")];
        let st = distance_stats(&all[..2], &all, 4, MinimizerWeighting::PerPosition).unwrap();
        assert_eq!(st.mean_pairwise, Some(0.0));
        let one = distance_stats(&all[..1], &all, 4, MinimizerWeighting::PerPosition).unwrap();
        assert_eq!(one.mean_pairwise, None);
    }
}
