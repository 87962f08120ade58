//! Windowed minimizer selection, density, and single-set MinHash.
//!
//! For a sequence with `n = l - k + 1` k-mer slots there are `n - w + 1`
//! windows; window `i` covers slots `[i, i + w)` and selects the extremal
//! k-mer under the ordering. Gapped slots never compete. A window with no
//! valid slot is dropped.

use crate::alphabet::{Alphabet, Kmer, Sequence};
use crate::error::{Error, Result};
use crate::hashing::{Extremum, KmerOrdering, Score};

/// How a window chooses among equally extreme k-mers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TiePolicy {
    #[default]
    Leftmost,
    Rightmost,
    /// Keep the previous window's pick if it is still inside and still tied
    /// for the extremum, otherwise take the rightmost.
    PreferPrevious,
}

impl TiePolicy {
    pub fn label(self) -> &'static str {
        match self {
            TiePolicy::Leftmost => "leftmost",
            TiePolicy::Rightmost => "rightmost",
            TiePolicy::PreferPrevious => "prefer-previous",
        }
    }
}

/// The pick of one window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowPick {
    pub window: usize,
    pub position: usize,
    pub score: Score,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizerSelection {
    k: usize,
    w: usize,
    picks: Vec<WindowPick>,
    distinct: Vec<usize>,
    valid_kmers: usize,
}

impl MinimizerSelection {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn picks(&self) -> &[WindowPick] {
        &self.picks
    }

    /// Distinct selected positions, ascending.
    pub fn distinct_positions(&self) -> &[usize] {
        &self.distinct
    }

    /// Number of non-gapped k-mers in the source sequence.
    pub fn valid_kmers(&self) -> usize {
        self.valid_kmers
    }

    /// The selected k-mers (one per distinct position) read back from `seq`.
    pub fn selected_kmers(&self, seq: &Sequence) -> Vec<Kmer> {
        self.distinct
            .iter()
            .map(|&p| Kmer::new(seq.kmer_at(p, self.k).expect("selected k-mer is valid").to_vec(), p))
            .collect()
    }
}

/// Selects one extremal slot per window from precomputed slot scores.
///
/// `scores[i]` is `None` for an invalid slot. Returns an empty list when no
/// window holds a valid slot.
pub fn select_from_scores(scores: &[Option<Score>], w: usize, sense: Extremum, ties: TiePolicy) -> Vec<WindowPick> {
    assert!(w >= 1, "window size must be >= 1");
    if scores.len() < w {
        return Vec::new();
    }
    let windows = scores.len() - w + 1;
    let mut picks = Vec::with_capacity(windows);
    let mut prev: Option<WindowPick> = None;
    for start in 0..windows {
        let mut best: Option<(usize, Score)> = None;
        for (pos, s) in scores[start..start + w]
            .iter()
            .enumerate()
            .filter_map(|(j, s)| s.map(|s| (start + j, s)))
        {
            best = match best {
                None => Some((pos, s)),
                Some((_, b)) if sense.beats(&s, &b) => Some((pos, s)),
                Some((_, b)) if ties != TiePolicy::Leftmost && s.total_cmp(&b).is_eq() => Some((pos, s)),
                keep => keep,
            };
        }
        let Some((mut pos, score)) = best else {
            prev = None;
            continue;
        };
        if ties == TiePolicy::PreferPrevious {
            if let Some(p) = prev.filter(|p| p.window + 1 == start && p.position >= start) {
                if p.score.total_cmp(&score).is_eq() {
                    pos = p.position;
                }
            }
        }
        let pick = WindowPick {
            window: start,
            position: pos,
            score,
        };
        picks.push(pick);
        prev = Some(pick);
    }
    picks
}

pub fn select_minimizers(
    seq: &Sequence,
    k: usize,
    w: usize,
    ordering: &KmerOrdering,
    ties: TiePolicy,
) -> Result<MinimizerSelection> {
    if k == 0 || w == 0 {
        return Err(Error::InvalidParameter(format!("k={k} and w={w} must both be >= 1")));
    }
    let scores = ordering.scores(seq, k)?;
    let valid_kmers = scores.iter().filter(|s| s.is_some()).count();
    let picks = select_from_scores(&scores, w, ordering.sense(), ties);
    if picks.is_empty() {
        return Err(Error::NoValidWindow { kmers: valid_kmers, w });
    }
    let mut distinct: Vec<usize> = picks.iter().map(|p| p.position).collect();
    distinct.sort_unstable();
    distinct.dedup();
    Ok(MinimizerSelection {
        k,
        w,
        picks,
        distinct,
        valid_kmers,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityReport {
    pub density: f64,
    pub distinct: usize,
    pub total_kmers: usize,
    pub windows: usize,
}

pub fn density(sel: &MinimizerSelection) -> DensityReport {
    DensityReport {
        density: sel.distinct.len() as f64 / sel.valid_kmers as f64,
        distinct: sel.distinct.len(),
        total_kmers: sel.valid_kmers,
        windows: sel.picks.len(),
    }
}

/// Fraction of consecutive window pairs that pick the same position, or
/// `None` with fewer than two adjacent windows.
pub fn adjacent_share_rate(sel: &MinimizerSelection) -> Option<f64> {
    let (pairs, shared) = sel
        .picks
        .windows(2)
        .filter(|p| p[0].window + 1 == p[1].window)
        .fold((0usize, 0usize), |(n, s), p| (n + 1, s + usize::from(p[0].position == p[1].position)));
    (pairs > 0).then(|| shared as f64 / pairs as f64)
}

/// The extremal k-mer of a whole set. Equal scores keep the earliest element.
pub fn minhash_min<'a>(set: &'a [Kmer], ordering: &KmerOrdering, alphabet: &Alphabet) -> Result<&'a Kmer> {
    let mut best: Option<(&Kmer, Score)> = None;
    for km in set {
        let s = ordering.score(km, alphabet)?;
        best = match best {
            Some((_, b)) if !ordering.sense().beats(&s, &b) => best,
            _ => Some((km, s)),
        };
    }
    best.map(|(k, _)| k).ok_or(Error::EmptySet)
}
