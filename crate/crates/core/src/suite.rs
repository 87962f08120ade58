//! Named validation suites. Each suite runs a set of validators and turns
//! the results into [`Check`] rows with a pass/fail verdict.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::Rng;

use crate::alphabet::{one_hot, Alphabet, Kmer, OneHotVector, Sequence};
use crate::conv::equivalence_check;
use crate::error::{Error, Result};
use crate::hashing::{GaussianFilter, SchemeKind};
use crate::minimizer::TiePolicy;
use crate::parallel::Workers;
use crate::rng::{derive_seed, derive_seed_path, rng_from_seed, Lane};
use crate::stats::combined_stderr;
use crate::validation::{
    adjacent_share_check, check_degree_monotonicity, conditional_expectation_profile, estimate_max_probabilities,
    expected_density_check, jaccard_collision_rate,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub metric: String,
    pub estimate: f64,
    pub target: f64,
    pub half_width: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `|estimate - target| <= half_width`.
    pub fn within(metric: impl Into<String>, estimate: f64, target: f64, half_width: f64) -> Self {
        Self {
            metric: metric.into(),
            estimate,
            target,
            half_width,
            passed: (estimate - target).abs() <= half_width,
        }
    }

    /// Passes when `estimate >= bound`.
    pub fn at_least(metric: impl Into<String>, estimate: f64, bound: f64) -> Self {
        Self {
            metric: metric.into(),
            estimate,
            target: bound,
            half_width: 0.0,
            passed: estimate >= bound,
        }
    }

    /// Passes when `estimate <= bound`.
    pub fn at_most(metric: impl Into<String>, estimate: f64, bound: f64) -> Self {
        Self {
            passed: estimate <= bound,
            ..Self::at_least(metric, estimate, bound)
        }
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {} estimate={} target={} half_width={}",
            self.verdict(),
            self.metric,
            self.estimate,
            self.target,
            self.half_width
        )
    }
}

pub const CHECK_CSV_HEADER: &str = "metric,estimate,target,half_width,verdict";

pub fn checks_to_csv(checks: &[Check]) -> String {
    let mut out = String::from(CHECK_CSV_HEADER);
    out.push('\n');
    for c in checks {
        let _ = writeln!(out, "{},{},{},{},{}", c.metric, c.estimate, c.target, c.half_width, c.verdict());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemma1,
    Lemma2,
    Lemma3,
    Thm2,
    Thm3,
    Equivalence,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Lemma1,
        Suite::Lemma2,
        Suite::Lemma3,
        Suite::Thm2,
        Suite::Thm3,
        Suite::Equivalence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Lemma3 => "lemma3",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Equivalence => "equivalence",
            Suite::All => "all",
        }
    }

    /// Trial count used when none is given.
    pub fn default_trials(self) -> usize {
        match self {
            Suite::Lemma1 | Suite::Thm3 => 10_000,
            Suite::Lemma2 | Suite::Lemma3 => 400,
            Suite::Thm2 => 1_000_000,
            Suite::Equivalence => 1_000,
            Suite::All => 0,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    /// Overrides every suite's default trial count.
    pub trials: Option<usize>,
    pub seed: u64,
    pub k: usize,
    pub w: usize,
    pub length: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            trials: None,
            seed: 1,
            k: 8,
            w: 19,
            length: 1007,
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig, workers: Workers) -> Result<Vec<Check>> {
    if suite == Suite::All {
        let mut out = Vec::new();
        for s in Suite::EACH {
            out.extend(run_suite(s, cfg, workers)?);
        }
        return Ok(out);
    }
    let trials = cfg.trials.unwrap_or(suite.default_trials());
    match suite {
        Suite::Lemma1 => lemma1(trials, cfg.seed, workers),
        Suite::Lemma2 => lemma2(cfg, trials, workers),
        Suite::Lemma3 => lemma3(cfg, trials, workers),
        Suite::Thm2 => thm2(trials, cfg.seed, workers),
        Suite::Thm3 => thm3(trials, cfg.seed, workers),
        Suite::Equivalence => equivalence(cfg, trials, workers),
        Suite::All => unreachable!(),
    }
}

/// `n` distinct uniform k-mers.
pub fn distinct_kmers(n: usize, k: usize, sigma: usize, seed: u64) -> Vec<Kmer> {
    let mut rng = rng_from_seed(seed);
    let mut out: Vec<Kmer> = Vec::with_capacity(n);
    while out.len() < n {
        let s: Vec<u8> = (0..k).map(|_| rng.random_range(0..sigma as u8)).collect();
        if !out.iter().any(|x| x.symbols() == s.as_slice()) {
            out.push(Kmer::new(s, out.len()));
        }
    }
    out
}

fn lemma1(trials: usize, seed: u64, workers: Workers) -> Result<Vec<Check>> {
    let a = Alphabet::dna();
    let pool = distinct_kmers(20, 8, 4, derive_seed(seed, Lane::Fixture, 1));
    // |A & B| = 5, |A | B| = 10
    let (x, y) = (&pool[0..7], &pool[2..10]);
    let family = SchemeKind::MultiplyShiftMin;
    let half = jaccard_collision_rate(x, y, &a, trials, seed, family, workers)?;
    let same = jaccard_collision_rate(x, x, &a, trials, seed, family, workers)?;
    let apart = jaccard_collision_rate(&pool[0..10], &pool[10..20], &a, trials, seed, family, workers)?;
    Ok(vec![
        Check::within("lemma1_collision_jaccard_0.5", half.rate, half.jaccard, 0.02),
        Check::within("lemma1_collision_identical", same.rate, 1.0, 0.0),
        Check::at_most("lemma1_collision_disjoint", apart.rate, 0.02),
    ])
}

fn lemma2(cfg: &SuiteConfig, trials: usize, workers: Workers) -> Result<Vec<Check>> {
    let s = adjacent_share_check(cfg.k, cfg.w, cfg.length, trials, cfg.seed, SchemeKind::MultiplyShiftMin, workers)?;
    Ok(vec![Check::at_least("lemma2_adjacent_share_rate", s.mean, 0.89)])
}

fn lemma3(cfg: &SuiteConfig, trials: usize, workers: Workers) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let run = |w: usize, scheme| {
        expected_density_check(cfg.k, w, cfg.length, trials, cfg.seed, scheme, TiePolicy::Leftmost, workers)
    };
    let r = run(cfg.w, SchemeKind::MultiplyShiftMin)?;
    out.push(Check::within("lemma3_density_random", r.summary.mean, r.target, 0.005));
    out.push(Check::within("lemma3_density_random_3se", r.summary.mean, r.finite_target, 3.0 * r.summary.stderr));
    let g = run(cfg.w, SchemeKind::GaussianMax)?;
    out.push(Check::within("lemma3_density_gaussian", g.summary.mean, g.target, 0.005));
    let w9 = run(9, SchemeKind::MultiplyShiftMin)?;
    out.push(Check::within("lemma3_density_random_w9", w9.summary.mean, w9.target, 0.01));
    Ok(out)
}

fn vectors(bits: &[&str]) -> Vec<OneHotVector> {
    bits.iter().map(|s| OneHotVector::parse(s).expect("bit string")).collect()
}

/// `n` distinct one-hot k-mer encodings.
pub fn random_one_hot_set(n: usize, k: usize, seed: u64) -> Vec<OneHotVector> {
    let a = Alphabet::dna();
    distinct_kmers(n, k, a.size(), seed).iter().map(|x| one_hot(x, &a)).collect()
}

fn thm2(trials: usize, seed: u64, workers: Workers) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let s = vectors(&["1100", "1010", "0011"]);
    let r = check_degree_monotonicity(&s, trials, seed, workers)?;
    for (i, (&p, target)) in r.estimate.probabilities.iter().zip([0.375, 0.25, 0.375]).enumerate() {
        out.push(Check::within(format!("thm2_p{i}_deg{}", r.degrees[i]), p, target, 0.005));
    }
    out.push(Check::within("thm2_monotone_violations", r.violations.len() as f64, 0.0, 0.0));

    let random = random_one_hot_set(8, 4, derive_seed(seed, Lane::Fixture, 2));
    let rr = check_degree_monotonicity(&random, trials, derive_seed(seed, Lane::MonteCarlo, 2), workers)?;
    out.push(Check::within("thm2_random8_monotone_violations", rr.violations.len() as f64, 0.0, 0.0));

    let singles = vectors(&["1000", "0100", "0010", "0001"]);
    let e = estimate_max_probabilities(&singles, trials, derive_seed(seed, Lane::MonteCarlo, 3), workers)?;
    let worst = e.probabilities.iter().map(|p| (p - 0.25).abs()).fold(0.0, f64::max);
    out.push(Check::within("thm2_singletons_max_dev", worst, 0.0, 0.005));
    Ok(out)
}

fn thm3(trials: usize, seed: u64, workers: Workers) -> Result<Vec<Check>> {
    let p = conditional_expectation_profile(3, 4, trials, seed, workers)?;
    let mut out = Vec::new();
    for b in &p.bins {
        // informational: the mean itself has no fixed target
        out.push(Check {
            metric: format!("thm3_mean_l1_{}", b.distance),
            estimate: b.summary.mean,
            target: f64::NAN,
            half_width: b.summary.stderr,
            passed: b.summary.mean.is_finite(),
        });
    }
    for pair in p.bins.windows(2) {
        let (a, b) = (pair[0].summary, pair[1].summary);
        let z = (a.mean - b.mean) / combined_stderr(a.stderr, b.stderr);
        let name = format!("thm3_gap_z_l1_{}_{}", pair[0].distance, pair[1].distance);
        out.push(Check {
            passed: z > 3.0,
            ..Check::at_least(name, z, 3.0)
        });
    }
    Ok(out)
}

/// A random sequence of `length` with roughly `gap_rate` of positions gapped.
fn random_gapped_sequence(length: usize, gap_rate: f64, seed: u64) -> Sequence {
    let mut rng = rng_from_seed(seed);
    let items: Vec<Option<u8>> = (0..length)
        .map(|_| {
            let c = rng.random_range(0..4u8);
            (!rng.random_bool(gap_rate)).then_some(c)
        })
        .collect();
    Sequence::from_options(items, 4).expect("symbols in range")
}

/// Random (sequence, filter, tie policy) cases for the conv/maxpool identity.
/// Returns the number of cases that disagreed.
pub fn equivalence_mismatches(k: usize, w: usize, max_len: usize, cases: usize, seed: u64, workers: Workers) -> Result<usize> {
    let policies = [TiePolicy::Leftmost, TiePolicy::Rightmost, TiePolicy::PreferPrevious];
    let min_len = k + w - 1;
    let bad = workers.try_map(cases, |c| {
        let mut rng = rng_from_seed(derive_seed_path(seed, Lane::Fixture, &[3, c as u64]));
        let length = rng.random_range(min_len..=max_len.max(min_len));
        let gap_rate = if c % 4 == 3 { 0.01 } else { 0.0 };
        let seq = random_gapped_sequence(length, gap_rate, derive_seed_path(seed, Lane::Sequence, &[3, c as u64]));
        let filter = GaussianFilter::new(4 * k, derive_seed_path(seed, Lane::Filter, &[3, c as u64]));
        match equivalence_check(&seq, k, w, &filter, policies[c % 3]) {
            Ok(r) => Ok(!r.passed()),
            // a heavily gapped sequence can leave no window at all
            Err(Error::NoValidWindow { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    })?;
    Ok(bad.into_iter().filter(|&b| b).count())
}

fn equivalence(cfg: &SuiteConfig, cases: usize, workers: Workers) -> Result<Vec<Check>> {
    let bad = equivalence_mismatches(cfg.k, cfg.w, cfg.length, cases, cfg.seed, workers)?;
    Ok(vec![Check::within("equivalence_mismatched_cases", bad as f64, 0.0, 0.0)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("lemma4".parse::<Suite>().is_err());
    }

    #[test]
    fn check_rules() {
        assert!(Check::within("x", 0.51, 0.5, 0.02).passed);
        assert!(!Check::within("x", 0.53, 0.5, 0.02).passed);
        assert!(Check::at_least("x", 0.9, 0.89).passed);
        assert!(!Check::at_most("x", 0.03, 0.02).passed);
        let csv = checks_to_csv(&[Check::within("m", 1.0, 1.0, 0.0)]);
        assert_eq!(csv, "metric,estimate,target,half_width,verdict\nm,1,1,0,PASS\n");
    }

    #[test]
    fn jaccard_fixture_is_one_half() {
        let pool = distinct_kmers(20, 8, 4, 5);
        assert_eq!(crate::validation::jaccard(&pool[0..7], &pool[2..10]), 0.5);
        assert_eq!(crate::validation::jaccard(&pool[0..10], &pool[10..20]), 0.0);
    }

    #[test]
    fn small_equivalence_run() {
        assert_eq!(equivalence_mismatches(8, 19, 200, 30, 4, Workers(None)).unwrap(), 0);
    }
}
