//! Categorical alphabets, gapped sequences, k-mers and their one-hot encoding.
//!
//! A [`Sequence`] stores symbol indices in `0..sigma`. Characters that are not
//! part of the alphabet (an `N` in a genome, say) become gap markers; any
//! k-mer overlapping a gap is invalid and is skipped by every downstream
//! consumer.

use std::fmt;

use crate::error::{Error, Result};

const GAP: u8 = u8::MAX;
const UNMAPPED: u8 = u8::MAX;

/// Ordered set of distinct ASCII symbols. Symbol `i` maps to index `i`.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
    lookup: [u8; 256],
}

impl Alphabet {
    pub fn new(symbols: &str) -> Result<Self> {
        let bytes = symbols.as_bytes();
        if !symbols.is_ascii() || bytes.len() < 2 || bytes.len() >= GAP as usize {
            return Err(Error::InvalidAlphabet(symbols.to_owned()));
        }
        let mut lookup = [UNMAPPED; 256];
        for (i, &b) in bytes.iter().enumerate() {
            if lookup[b as usize] != UNMAPPED {
                return Err(Error::InvalidAlphabet(symbols.to_owned()));
            }
            lookup[b as usize] = i as u8;
        }
        Ok(Self {
            symbols: bytes.to_vec(),
            lookup,
        })
    }

    /// `ACGT`.
    pub fn dna() -> Self {
        Self::new("ACGT").expect("ACGT is a valid alphabet")
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Index of `c`, folding lower case to upper case when `c` itself is not
    /// a symbol.
    pub fn index_of(&self, c: u8) -> Option<u8> {
        match self.lookup[c as usize] {
            UNMAPPED => match self.lookup[c.to_ascii_uppercase() as usize] {
                UNMAPPED => None,
                i => Some(i),
            },
            i => Some(i),
        }
    }

    pub fn symbol(&self, index: u8) -> Option<char> {
        self.symbols.get(index as usize).map(|&b| b as char)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Alphabet")
            .field(&String::from_utf8_lossy(&self.symbols))
            .finish()
    }
}

/// Symbol indices with gap markers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    data: Vec<u8>,
    sigma: usize,
}

impl Sequence {
    /// Builds a gap-free sequence from raw indices. Every index must be below `sigma`.
    pub fn from_indices(indices: Vec<u8>, sigma: usize) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i as usize >= sigma) {
            return Err(Error::InvalidParameter(format!(
                "symbol index {bad} outside alphabet of size {sigma}"
            )));
        }
        Ok(Self {
            data: indices,
            sigma,
        })
    }

    /// Builds from `None` = gap, `Some(i)` = symbol index.
    pub fn from_options<I: IntoIterator<Item = Option<u8>>>(items: I, sigma: usize) -> Result<Self> {
        let data: Vec<u8> = items.into_iter().map(|x| x.unwrap_or(GAP)).collect();
        if let Some(&bad) = data.iter().find(|&&i| i != GAP && i as usize >= sigma) {
            return Err(Error::InvalidParameter(format!(
                "symbol index {bad} outside alphabet of size {sigma}"
            )));
        }
        Ok(Self { data, sigma })
    }

    pub(crate) fn from_raw(data: Vec<u8>, sigma: usize) -> Self {
        Self { data, sigma }
    }

    /// Alphabet size the indices refer to.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u8> {
        self.data.get(i).copied().filter(|&x| x != GAP)
    }

    pub fn is_gap(&self, i: usize) -> bool {
        self.data.get(i) == Some(&GAP)
    }

    pub fn gap_count(&self) -> usize {
        self.data.iter().filter(|&&x| x == GAP).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = Option<u8>> + '_ {
        self.data.iter().map(|&x| (x != GAP).then_some(x))
    }

    /// Symbols of the k-mer starting at `pos`, or `None` if it runs off the
    /// end or overlaps a gap.
    pub fn kmer_at(&self, pos: usize, k: usize) -> Option<&[u8]> {
        let s = self.data.get(pos..pos.checked_add(k)?)?;
        (!s.contains(&GAP)).then_some(s)
    }

    /// Number of k-mer start positions, valid or not: `max(0, l - k + 1)`.
    pub fn kmer_slots(&self, k: usize) -> usize {
        (self.data.len() + 1).saturating_sub(k)
    }

    /// Per-slot validity of every k-mer start position.
    pub fn valid_kmer_mask(&self, k: usize) -> Vec<bool> {
        let slots = self.kmer_slots(k);
        let mut mask = Vec::with_capacity(slots);
        // run = number of consecutive non-gap symbols ending at i
        let mut run = 0usize;
        for (i, &x) in self.data.iter().enumerate() {
            run = if x == GAP { 0 } else { run + 1 };
            if i + 1 >= k {
                mask.push(run >= k);
            }
        }
        debug_assert_eq!(mask.len(), slots);
        mask
    }

    /// Half-open sub-sequence `[start, end)`, gaps preserved.
    pub fn slice(&self, start: usize, end: usize) -> Sequence {
        Sequence {
            data: self.data[start..end].to_vec(),
            sigma: self.sigma,
        }
    }

    /// Renders with the alphabet's symbols; gaps print as `gap`.
    pub fn render(&self, alphabet: &Alphabet, gap: char) -> String {
        self.iter()
            .map(|x| x.and_then(|i| alphabet.symbol(i)).unwrap_or(gap))
            .collect()
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.iter().map(|x| x.map_or(-1, i32::from)))
            .finish()
    }
}

/// Maps every character of `text` through `alphabet`. Characters outside the
/// alphabet become gaps.
pub fn parse_sequence(text: &str, alphabet: &Alphabet) -> Sequence {
    Sequence::from_raw(
        text.bytes()
            .map(|c| alphabet.index_of(c).unwrap_or(GAP))
            .collect(),
        alphabet.size(),
    )
}

/// A length-k substring and where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Kmer {
    symbols: Vec<u8>,
    position: usize,
}

impl Kmer {
    pub fn new(symbols: Vec<u8>, position: usize) -> Self {
        assert!(!symbols.is_empty(), "k-mer must have k >= 1");
        Self { symbols, position }
    }

    /// Parses a gap-free k-mer written with the alphabet's symbols.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let symbols = text
            .bytes()
            .map(|c| alphabet.index_of(c))
            .collect::<Option<Vec<_>>>()
            .filter(|s| !s.is_empty())
            .ok_or_else(|| Error::InvalidParameter(format!("not a k-mer over {alphabet:?}: {text:?}")))?;
        Ok(Self::new(symbols, 0))
    }

    pub fn k(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn position(&self) -> usize {
        self.position
    }
}

/// Every valid k-mer of `seq`, in position order.
pub fn kmers(seq: &Sequence, k: usize) -> Vec<Kmer> {
    assert!(k >= 1, "k must be >= 1");
    seq.valid_kmer_mask(k)
        .into_iter()
        .enumerate()
        .filter(|&(_, ok)| ok)
        .map(|(i, _)| Kmer::new(seq.data[i..i + k].to_vec(), i))
        .collect()
}

/// Binary vector with a fixed number of set bits.
///
/// One-hot k-mer encodings are the main producer, but any equal-weight binary
/// vector (as used by the max-probability oracles) is representable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OneHotVector {
    bits: Vec<bool>,
    ones: usize,
}

impl OneHotVector {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        let ones = bits.iter().filter(|&&b| b).count();
        Self { bits, ones }
    }

    /// Parses a `0`/`1` string such as `"1010"`.
    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidParameter(format!("not a bit string: {text:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Number of set bits (`m`).
    pub fn ones(&self) -> usize {
        self.ones
    }

    pub fn set_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn l1(&self, other: &Self) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count())
    }
}

impl fmt::Debug for OneHotVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        write!(f, "OneHotVector({s})")
    }
}

/// Position-major, symbol-minor one-hot layout: bit `sigma * j + c` is set
/// iff symbol `j` of the k-mer is `c`.
pub fn one_hot(kmer: &Kmer, alphabet: &Alphabet) -> OneHotVector {
    one_hot_symbols(kmer.symbols(), alphabet.size())
}

pub(crate) fn one_hot_symbols(symbols: &[u8], sigma: usize) -> OneHotVector {
    let mut bits = vec![false; sigma * symbols.len()];
    for (j, &c) in symbols.iter().enumerate() {
        debug_assert!((c as usize) < sigma);
        bits[sigma * j + c as usize] = true;
    }
    OneHotVector {
        bits,
        ones: symbols.len(),
    }
}

/// Base-sigma integer key, leftmost symbol most significant.
pub fn kmer_rank(kmer: &Kmer, alphabet: &Alphabet) -> Result<u64> {
    rank_symbols(kmer.symbols(), alphabet.size())
}

pub(crate) fn rank_symbols(symbols: &[u8], sigma: usize) -> Result<u64> {
    let overflow = || Error::RankOverflow {
        sigma,
        k: symbols.len(),
    };
    // σ^k itself must be representable, otherwise ranks of fixed k are not
    // all distinct u64 keys.
    (0..symbols.len()).try_fold(1u64, |acc, _| acc.checked_mul(sigma as u64)).ok_or_else(overflow)?;
    Ok(symbols
        .iter()
        .fold(0u64, |acc, &c| acc * sigma as u64 + u64::from(c)))
}
