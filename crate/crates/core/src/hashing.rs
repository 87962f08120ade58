//! K-mer orderings.
//!
//! Two random families are provided:
//!
//! * vector multiply-shift, `h(x) = (x . a + b) >> (64 - 32)` over the ring of
//!   64-bit integers, applied to the k symbol indices of a k-mer (minimized);
//! * Gaussian dot product, `h(x) = e(x) . g` with `g` an i.i.d. standard
//!   normal vector of length `sigma * k` and `e(x)` the one-hot encoding
//!   (maximized).
//!
//! plus a plain lexicographic order as a deterministic (and adversarial on
//! repeats) baseline.

use std::cmp::Ordering;

use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};

use crate::alphabet::{rank_symbols, Alphabet, Kmer, OneHotVector, Sequence};
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// Input word width `w`.
pub const INPUT_BITS: u32 = 32;
/// Output width `l`.
pub const OUTPUT_BITS: u32 = 32;
/// Ring width `w̄`; must satisfy `RING_BITS >= INPUT_BITS + OUTPUT_BITS - 1`.
pub const RING_BITS: u32 = 64;

const _: () = assert!(RING_BITS >= INPUT_BITS + OUTPUT_BITS - 1);

/// Strongly universal vector multiply-shift hash of `d` 32-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplyShiftHasher {
    a: Vec<u64>,
    b: u64,
    seed: u64,
}

impl MultiplyShiftHasher {
    /// Draws `a` and `b` uniformly from `[0, 2^64)` using `seed`.
    pub fn new(d: usize, seed: u64) -> Self {
        assert!(d >= 1, "multiply-shift dimension must be >= 1");
        let mut rng = rng_from_seed(seed);
        let a = (0..d).map(|_| rng.next_u64()).collect();
        let b = rng.next_u64();
        Self { a, b, seed }
    }

    /// Explicit parameters, mostly for tests.
    pub fn from_parts(a: Vec<u64>, b: u64) -> Self {
        assert!(!a.is_empty(), "multiply-shift dimension must be >= 1");
        Self { a, b, seed: 0 }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn hash_vector(&self, x: &[u32]) -> Result<u32> {
        if x.len() != self.a.len() {
            return Err(Error::DimensionMismatch {
                expected: self.a.len(),
                actual: x.len(),
            });
        }
        Ok(self.finish(x.iter().map(|&v| u64::from(v))))
    }

    /// Same as [`hash_vector`](Self::hash_vector) with small symbol indices as the words.
    pub fn hash_symbols(&self, symbols: &[u8]) -> Result<u32> {
        if symbols.len() != self.a.len() {
            return Err(Error::DimensionMismatch {
                expected: self.a.len(),
                actual: symbols.len(),
            });
        }
        Ok(self.finish(symbols.iter().map(|&v| u64::from(v))))
    }

    #[inline]
    fn finish(&self, x: impl Iterator<Item = u64>) -> u32 {
        let acc = self
            .a
            .iter()
            .zip(x)
            .fold(self.b, |acc, (&a, x)| acc.wrapping_add(a.wrapping_mul(x)));
        (acc >> (RING_BITS - OUTPUT_BITS)) as u32
    }
}

pub fn new_multiply_shift(d: usize, seed: u64) -> MultiplyShiftHasher {
    MultiplyShiftHasher::new(d, seed)
}

/// Convolution filter weights, i.i.d. N(0, 1) at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianFilter {
    weights: Vec<f64>,
    seed: u64,
}

impl GaussianFilter {
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(dim >= 1, "filter dimension must be >= 1");
        let mut rng = rng_from_seed(seed);
        let weights = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        Self { weights, seed }
    }

    pub fn from_weights(weights: Vec<f64>) -> Self {
        assert!(!weights.is_empty(), "filter dimension must be >= 1");
        Self { weights, seed: 0 }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn negated(&self) -> Self {
        Self {
            weights: self.weights.iter().map(|w| -w).collect(),
            seed: self.seed,
        }
    }

    /// Score of a k-mer given by symbol indices, without materializing its
    /// one-hot vector. Bit-identical to [`gaussian_score`] on `one_hot(kmer)`.
    pub fn score_symbols(&self, symbols: &[u8], sigma: usize) -> Result<f64> {
        let dim = symbols.len() * sigma;
        if dim != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                actual: dim,
            });
        }
        let bits = symbols
            .iter()
            .flat_map(|&s| (0..sigma).map(move |c| c == s as usize));
        Ok(ordered_dot(&self.weights, bits))
    }
}

pub fn new_gaussian_filter(dim: usize, seed: u64) -> GaussianFilter {
    GaussianFilter::new(dim, seed)
}

/// Dot product of `weights` with a binary vector, accumulated in ascending
/// index order starting from `0.0`.
///
/// Every Gaussian score in the crate (single k-mer, convolution output,
/// ordering key) goes through this routine, so equal inputs give bit-equal
/// outputs on every path.
#[inline]
pub(crate) fn ordered_dot(weights: &[f64], bits: impl IntoIterator<Item = bool>) -> f64 {
    weights
        .iter()
        .zip(bits)
        .fold(0.0, |acc, (&w, b)| if b { acc + w } else { acc })
}

pub fn gaussian_score(filter: &GaussianFilter, e: &OneHotVector) -> Result<f64> {
    if e.len() != filter.dim() {
        return Err(Error::DimensionMismatch {
            expected: filter.dim(),
            actual: e.len(),
        });
    }
    Ok(ordered_dot(filter.weights(), e.bits().iter().copied()))
}

/// Whether the selected k-mer is the smallest or the largest score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extremum {
    Min,
    Max,
}

impl Extremum {
    pub fn flipped(self) -> Self {
        match self {
            Extremum::Min => Extremum::Max,
            Extremum::Max => Extremum::Min,
        }
    }

    /// True when `a` is strictly more extreme than `b`.
    #[inline]
    pub fn beats(self, a: &Score, b: &Score) -> bool {
        matches!((self, a.total_cmp(b)), (Extremum::Min, Ordering::Less) | (Extremum::Max, Ordering::Greater))
    }
}

/// A k-mer's position in an ordering.
///
/// Integer hashes carry the k-mer rank as a secondary key so that distinct
/// k-mers never tie.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Score {
    Int { hash: u64, rank: u64 },
    Real(f64),
}

impl Score {
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Score::Int { hash: h1, rank: r1 }, Score::Int { hash: h2, rank: r2 }) => {
                (h1, r1).cmp(&(h2, r2))
            }
            (Score::Real(a), Score::Real(b)) => a.total_cmp(b),
            (Score::Int { .. }, Score::Real(_)) => Ordering::Less,
            (Score::Real(_), Score::Int { .. }) => Ordering::Greater,
        }
    }

    /// Order-reversing map.
    pub fn negated(self) -> Self {
        match self {
            Score::Int { hash, rank } => Score::Int {
                hash: !hash,
                rank: !rank,
            },
            Score::Real(x) => Score::Real(-x),
        }
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            Score::Int { hash, .. } => hash as f64,
            Score::Real(x) => x,
        }
    }
}

/// The family an ordering belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// Random minimizer: multiply-shift hash, minimized.
    MultiplyShiftMin,
    /// Gaussian convolution: one-hot dot product, maximized.
    GaussianMax,
    /// Lexicographic rank, minimized.
    LexicographicMin,
}

impl SchemeKind {
    /// Short label used in CSV output.
    pub fn label(self) -> &'static str {
        match self {
            SchemeKind::MultiplyShiftMin => "random",
            SchemeKind::GaussianMax => "gaussian",
            SchemeKind::LexicographicMin => "lex",
        }
    }

    /// Builds a fresh ordering for k-mers of length `k` over `sigma` symbols.
    pub fn ordering(self, sigma: usize, k: usize, seed: u64) -> KmerOrdering {
        match self {
            SchemeKind::MultiplyShiftMin => KmerOrdering::multiply_shift(MultiplyShiftHasher::new(k, seed)),
            SchemeKind::GaussianMax => KmerOrdering::gaussian(GaussianFilter::new(sigma * k, seed)),
            SchemeKind::LexicographicMin => KmerOrdering::lexicographic(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Scheme {
    MultiplyShift(MultiplyShiftHasher),
    Gaussian(GaussianFilter),
    Lexicographic,
}

/// A total order on k-mers together with the extremum that gets selected.
#[derive(Debug, Clone, PartialEq)]
pub struct KmerOrdering {
    scheme: Scheme,
    sense: Extremum,
    negate: bool,
}

impl KmerOrdering {
    pub fn multiply_shift(hasher: MultiplyShiftHasher) -> Self {
        Self {
            scheme: Scheme::MultiplyShift(hasher),
            sense: Extremum::Min,
            negate: false,
        }
    }

    pub fn gaussian(filter: GaussianFilter) -> Self {
        Self {
            scheme: Scheme::Gaussian(filter),
            sense: Extremum::Max,
            negate: false,
        }
    }

    pub fn lexicographic() -> Self {
        Self {
            scheme: Scheme::Lexicographic,
            sense: Extremum::Min,
            negate: false,
        }
    }

    /// Same selection, expressed with negated scores and the opposite extremum.
    pub fn negated(&self) -> Self {
        Self {
            scheme: self.scheme.clone(),
            sense: self.sense.flipped(),
            negate: !self.negate,
        }
    }

    pub fn sense(&self) -> Extremum {
        self.sense
    }

    pub fn kind(&self) -> SchemeKind {
        match self.scheme {
            Scheme::MultiplyShift(_) => SchemeKind::MultiplyShiftMin,
            Scheme::Gaussian(_) => SchemeKind::GaussianMax,
            Scheme::Lexicographic => SchemeKind::LexicographicMin,
        }
    }

    pub fn filter(&self) -> Option<&GaussianFilter> {
        match &self.scheme {
            Scheme::Gaussian(f) => Some(f),
            _ => None,
        }
    }

    pub fn score_symbols(&self, symbols: &[u8], sigma: usize) -> Result<Score> {
        let s = match &self.scheme {
            Scheme::MultiplyShift(h) => Score::Int {
                hash: u64::from(h.hash_symbols(symbols)?),
                rank: rank_symbols(symbols, sigma)?,
            },
            Scheme::Gaussian(f) => Score::Real(f.score_symbols(symbols, sigma)?),
            Scheme::Lexicographic => {
                let rank = rank_symbols(symbols, sigma)?;
                Score::Int { hash: rank, rank }
            }
        };
        Ok(if self.negate { s.negated() } else { s })
    }

    pub fn score(&self, kmer: &Kmer, alphabet: &Alphabet) -> Result<Score> {
        self.score_symbols(kmer.symbols(), alphabet.size())
    }

    /// Score of every k-mer slot of `seq`; `None` where the k-mer overlaps a gap.
    pub fn scores(&self, seq: &Sequence, k: usize) -> Result<Vec<Option<Score>>> {
        let sigma = seq.sigma();
        (0..seq.kmer_slots(k))
            .map(|i| seq.kmer_at(i, k).map(|s| self.score_symbols(s, sigma)).transpose())
            .collect()
    }
}
