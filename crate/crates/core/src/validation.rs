//! Monte-Carlo checks of the probabilistic claims behind minimizers and
//! Gaussian filters.
//!
//! * max-probability estimates for Gaussian dot-product hashing on a set of
//!   equal-weight binary vectors, and the degree-monotonicity check built on
//!   them;
//! * the conditional-mean profile of scores by distance from the universal
//!   maximizer;
//! * MinHash collision rate versus Jaccard index;
//! * random-minimizer density versus `2 / (w + 1)`.
//!
//! Trials are split into fixed-size blocks, each with its own derived seed,
//! and block results are merged in block order. Estimates therefore depend
//! only on `(seed, trials)`.

use rand_distr::{Distribution, StandardNormal};

use crate::alphabet::{Alphabet, Kmer, OneHotVector};
use crate::error::{Error, Result};
use crate::hashing::{ordered_dot, SchemeKind};
use crate::metrics::degree;
use crate::minimizer::{adjacent_share_rate, density, minhash_min, select_minimizers, TiePolicy};
use crate::parallel::Workers;
use crate::rng::{derive_seed, rng_from_seed, Lane, StreamRng};
use crate::simulation::uniform_random_sequence;
use crate::stats::{combined_stderr, proportion_half_width, summarize, Summary};

/// Trials per independently seeded block.
pub const BLOCK: usize = 8192;

/// Largest universe `conditional_expectation_profile` will enumerate.
pub const MAX_UNIVERSE: usize = 1 << 16;

fn blocks(trials: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..trials.div_ceil(BLOCK)).map(move |b| (b, BLOCK.min(trials - b * BLOCK)))
}

fn gaussian_weights(rng: &mut StreamRng, out: &mut [f64]) {
    for g in out.iter_mut() {
        *g = StandardNormal.sample(rng);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxProbabilityEstimate {
    pub probabilities: Vec<f64>,
    /// Per-element 99% half-widths.
    pub half_widths: Vec<f64>,
    /// Trials that produced a unique maximizer.
    pub trials: usize,
    pub ties_discarded: usize,
}

impl MaxProbabilityEstimate {
    pub fn half_width(&self) -> f64 {
        self.half_widths.iter().copied().fold(0.0, f64::max)
    }
}

fn validate_set(set: &[OneHotVector]) -> Result<()> {
    if set.len() < 2 {
        return Err(Error::InvalidParameter("need at least two vectors".into()));
    }
    let (d, m) = (set[0].len(), set[0].ones());
    for (i, s) in set.iter().enumerate() {
        if s.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: s.len(),
            });
        }
        if s.ones() != m {
            return Err(Error::InvalidParameter(format!(
                "vector {i} has {} set bits, expected {m}",
                s.ones()
            )));
        }
        if set[..i].contains(s) {
            return Err(Error::DuplicateVector(i));
        }
    }
    Ok(())
}

/// Tallies which element of `set` attains the maximum of `x . g` over
/// `trials` fresh standard-normal `g`.
pub fn estimate_max_probabilities(
    set: &[OneHotVector],
    trials: usize,
    seed: u64,
    workers: Workers,
) -> Result<MaxProbabilityEstimate> {
    validate_set(set)?;
    let dim = set[0].len();
    let blocks: Vec<_> = blocks(trials).collect();
    let tallies = workers.map(blocks.len(), |i| {
        let (b, n) = blocks[i];
        let mut rng = rng_from_seed(derive_seed(seed, Lane::MonteCarlo, b as u64));
        let mut g = vec![0.0; dim];
        let mut wins = vec![0usize; set.len()];
        let mut ties = 0usize;
        for _ in 0..n {
            gaussian_weights(&mut rng, &mut g);
            let mut best = (0usize, f64::NEG_INFINITY);
            let mut tied = false;
            for (j, s) in set.iter().enumerate() {
                let v = ordered_dot(&g, s.bits().iter().copied());
                if v > best.1 {
                    best = (j, v);
                    tied = false;
                } else if v == best.1 {
                    tied = true;
                }
            }
            if tied {
                ties += 1;
            } else {
                wins[best.0] += 1;
            }
        }
        (wins, ties)
    });
    let mut wins = vec![0usize; set.len()];
    let mut ties = 0;
    for (w, t) in tallies {
        wins.iter_mut().zip(w).for_each(|(a, b)| *a += b);
        ties += t;
    }
    let kept = trials - ties;
    let probabilities: Vec<f64> = wins.iter().map(|&c| c as f64 / kept as f64).collect();
    let half_widths = probabilities.iter().map(|&p| proportion_half_width(p, kept)).collect();
    Ok(MaxProbabilityEstimate {
        probabilities,
        half_widths,
        trials: kept,
        ties_discarded: ties,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub degrees: Vec<usize>,
    pub estimate: MaxProbabilityEstimate,
    /// Pairs `(x, y)` with `degree(x) > degree(y)` but `Pr(x) < Pr(y)`
    /// beyond the combined half-widths.
    pub violations: Vec<(usize, usize)>,
    pub pairs_checked: usize,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that a strictly higher degree never comes with a significantly
/// lower max-probability.
pub fn check_degree_monotonicity(
    set: &[OneHotVector],
    trials: usize,
    seed: u64,
    workers: Workers,
) -> Result<MonotonicityReport> {
    let estimate = estimate_max_probabilities(set, trials, seed, workers)?;
    let degrees = set.iter().map(|x| degree(x, set)).collect::<Result<Vec<_>>>()?;
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for x in 0..set.len() {
        for y in 0..set.len() {
            if degrees[x] <= degrees[y] {
                continue;
            }
            pairs_checked += 1;
            let slack = estimate.half_widths[x] + estimate.half_widths[y];
            if estimate.probabilities[x] < estimate.probabilities[y] - slack {
                violations.push((x, y));
            }
        }
    }
    Ok(MonotonicityReport {
        degrees,
        estimate,
        violations,
        pairs_checked,
    })
}

/// Mean score of the k-mers at one L1 distance from the maximizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceBin {
    /// L1 distance (always even).
    pub distance: usize,
    /// Per-trial bin means summarized across trials.
    pub summary: Summary,
    /// Universe elements in the bin.
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalExpectationProfile {
    pub bins: Vec<DistanceBin>,
    pub trials: usize,
    pub ties_discarded: usize,
}

impl ConditionalExpectationProfile {
    /// True when each bin mean exceeds the next by more than `z` combined
    /// standard errors.
    pub fn strictly_decreasing(&self, z: f64) -> bool {
        self.bins.windows(2).all(|p| {
            let (a, b) = (p[0].summary, p[1].summary);
            a.mean - b.mean > z * combined_stderr(a.stderr, b.stderr)
        })
    }
}

/// Enumerates every one-hot k-mer over `sigma` symbols, finds the maximizer
/// under a fresh Gaussian filter in each trial, and averages scores by L1
/// distance from it.
pub fn conditional_expectation_profile(
    k: usize,
    sigma: usize,
    trials: usize,
    seed: u64,
    workers: Workers,
) -> Result<ConditionalExpectationProfile> {
    let universe = sigma
        .checked_pow(k as u32)
        .filter(|&n| n <= MAX_UNIVERSE && k >= 1 && sigma >= 2)
        .ok_or_else(|| Error::InvalidParameter(format!("cannot enumerate {sigma}^{k} k-mers")))?;
    let all: Vec<Vec<u8>> = (0..universe)
        .map(|mut r| {
            let mut s = vec![0u8; k];
            for j in (0..k).rev() {
                s[j] = (r % sigma) as u8;
                r /= sigma;
            }
            s
        })
        .collect();
    let nbins = k + 1;
    let dim = sigma * k;
    let blocks: Vec<_> = blocks(trials).collect();

    // per block: per-trial bin means, one Vec per bin, plus tie count
    let partial = workers.map(blocks.len(), |i| {
        let (b, n) = blocks[i];
        let mut rng = rng_from_seed(derive_seed(seed, Lane::MonteCarlo, b as u64));
        let mut g = vec![0.0; dim];
        let mut scores = vec![0.0; universe];
        let mut per_bin: Vec<Vec<f64>> = vec![Vec::with_capacity(n); nbins];
        let mut ties = 0;
        for _ in 0..n {
            gaussian_weights(&mut rng, &mut g);
            for (s, km) in scores.iter_mut().zip(&all) {
                let bits = km.iter().flat_map(|&c| (0..sigma).map(move |x| x == c as usize));
                *s = ordered_dot(&g, bits);
            }
            let (best, max) = scores
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (j, &v)| if v > acc.1 { (j, v) } else { acc });
            if scores.iter().filter(|&&v| v == max).count() > 1 {
                ties += 1;
                continue;
            }
            let mut sum = vec![0.0; nbins];
            let mut cnt = vec![0usize; nbins];
            for (km, &v) in all.iter().zip(&scores) {
                let d = km.iter().zip(&all[best]).filter(|(a, b)| a != b).count();
                sum[d] += v;
                cnt[d] += 1;
            }
            for d in 0..nbins {
                per_bin[d].push(sum[d] / cnt[d] as f64);
            }
        }
        (per_bin, ties)
    });

    let mut merged: Vec<Vec<f64>> = vec![Vec::with_capacity(trials); nbins];
    let mut ties = 0;
    for (per_bin, t) in partial {
        for (m, v) in merged.iter_mut().zip(per_bin) {
            m.extend(v);
        }
        ties += t;
    }
    let bins = merged
        .iter()
        .enumerate()
        .map(|(d, v)| DistanceBin {
            distance: 2 * d,
            summary: summarize(v),
            size: binomial(k, d) * (sigma - 1).pow(d as u32),
        })
        .collect();
    Ok(ConditionalExpectationProfile {
        bins,
        trials: trials - ties,
        ties_discarded: ties,
    })
}

fn binomial(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionEstimate {
    pub rate: f64,
    pub jaccard: f64,
    pub trials: usize,
    pub half_width: f64,
}

/// Fraction of random orderings under which `A` and `B` share their
/// extremal k-mer.
pub fn jaccard_collision_rate(
    a: &[Kmer],
    b: &[Kmer],
    alphabet: &Alphabet,
    trials: usize,
    seed: u64,
    family: SchemeKind,
    workers: Workers,
) -> Result<CollisionEstimate> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let k = a[0].k();
    let hits = workers.try_map(trials, |t| {
        let ordering = family.ordering(alphabet.size(), k, derive_seed(seed, Lane::Hasher, t as u64));
        let x = minhash_min(a, &ordering, alphabet)?;
        let y = minhash_min(b, &ordering, alphabet)?;
        Ok(x.symbols() == y.symbols())
    })?;
    let rate = hits.iter().filter(|&&h| h).count() as f64 / trials as f64;
    Ok(CollisionEstimate {
        rate,
        jaccard: jaccard(a, b),
        trials,
        half_width: proportion_half_width(rate, trials),
    })
}

/// `|A ∩ B| / |A ∪ B|` over k-mer values.
pub fn jaccard(a: &[Kmer], b: &[Kmer]) -> f64 {
    use std::collections::HashSet;
    let sa: HashSet<&[u8]> = a.iter().map(Kmer::symbols).collect();
    let sb: HashSet<&[u8]> = b.iter().map(Kmer::symbols).collect();
    sa.intersection(&sb).count() as f64 / sa.union(&sb).count() as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityCheck {
    pub summary: Summary,
    /// `2 / (w + 1)`.
    pub target: f64,
    /// Expected density at this length: the first window always contributes
    /// a pick and each later one a new pick with probability `2 / (w + 1)`,
    /// so `(1 + (windows - 1) * 2 / (w + 1)) / kmers`.
    pub finite_target: f64,
    /// `|mean - finite_target|` in standard errors.
    pub z: f64,
}

impl DensityCheck {
    pub fn within(&self, z: f64) -> bool {
        self.z <= z
    }
}

/// Mean density over `trials` uniform random sequences against `2 / (w + 1)`.
#[allow(clippy::too_many_arguments)]
pub fn expected_density_check(
    k: usize,
    w: usize,
    length: usize,
    trials: usize,
    seed: u64,
    scheme: SchemeKind,
    ties: TiePolicy,
    workers: Workers,
) -> Result<DensityCheck> {
    let sigma = 4;
    let values = workers.try_map(trials, |t| {
        let seq = uniform_random_sequence(length, sigma, derive_seed(seed, Lane::Sequence, t as u64));
        let ordering = scheme.ordering(sigma, k, derive_seed(seed, Lane::Hasher, t as u64));
        Ok(density(&select_minimizers(&seq, k, w, &ordering, ties)?).density)
    })?;
    let summary = summarize(&values);
    let target = 2.0 / (w as f64 + 1.0);
    let kmers = (length + 1).saturating_sub(k) as f64;
    let finite_target = (1.0 + (kmers - w as f64) * target) / kmers;
    Ok(DensityCheck {
        summary,
        target,
        finite_target,
        z: (summary.mean - finite_target).abs() / summary.stderr,
    })
}

/// Mean adjacent-window share rate over uniform random sequences.
pub fn adjacent_share_check(
    k: usize,
    w: usize,
    length: usize,
    trials: usize,
    seed: u64,
    scheme: SchemeKind,
    workers: Workers,
) -> Result<Summary> {
    let sigma = 4;
    let values = workers.try_map(trials, |t| {
        let seq = uniform_random_sequence(length, sigma, derive_seed(seed, Lane::Sequence, t as u64));
        let ordering = scheme.ordering(sigma, k, derive_seed(seed, Lane::Hasher, t as u64));
        let sel = select_minimizers(&seq, k, w, &ordering, TiePolicy::Leftmost)?;
        adjacent_share_rate(&sel).ok_or(Error::NoValidWindow { kmers: sel.valid_kmers(), w })
    })?;
    Ok(summarize(&values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[&str]) -> Vec<OneHotVector> {
        v.iter().map(|s| OneHotVector::parse(s).unwrap()).collect()
    }

    #[test]
    fn rejects_bad_sets() {
        let w = Workers::single();
        assert!(matches!(
            estimate_max_probabilities(&set(&["1100", "1100"]), 10, 0, w),
            Err(Error::DuplicateVector(1))
        ));
        assert!(estimate_max_probabilities(&set(&["1100"]), 10, 0, w).is_err());
        assert!(estimate_max_probabilities(&set(&["1100", "1110"]), 10, 0, w).is_err());
    }

    #[test]
    fn two_element_set_is_fair() {
        let e = estimate_max_probabilities(&set(&["1100", "0011"]), 100_000, 1, Workers(None)).unwrap();
        assert_eq!(e.ties_discarded, 0);
        assert!((e.probabilities[0] - 0.5).abs() < 0.005, "{e:?}");
        assert!((e.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_across_workers() {
        let s = set(&["1100", "1010", "0011"]);
        let a = estimate_max_probabilities(&s, 20_000, 9, Workers::single()).unwrap();
        let b = estimate_max_probabilities(&s, 20_000, 9, Workers(Some(4))).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tiny_profile() {
        // sigma=2, k=1: maximizer bin sits above the other element
        let p = conditional_expectation_profile(1, 2, 2000, 3, Workers::single()).unwrap();
        assert_eq!(p.bins.len(), 2);
        assert!(p.bins[0].summary.mean > p.bins[1].summary.mean);
        assert_eq!(p.bins[1].size, 1);
        assert!(conditional_expectation_profile(9, 4, 1, 0, Workers::single()).is_err());
    }

    #[test]
    fn identical_sets_always_collide() {
        let a = Alphabet::dna();
        let s: Vec<_> = ["ACGT", "TTGA", "CCCA"].iter().map(|x| Kmer::parse(x, &a).unwrap()).collect();
        let c = jaccard_collision_rate(&s, &s, &a, 500, 1, SchemeKind::MultiplyShiftMin, Workers::single()).unwrap();
        assert_eq!(c.rate, 1.0);
        assert_eq!(c.jaccard, 1.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(3, 2), 3);
        assert_eq!(binomial(8, 4), 70);
    }
}
