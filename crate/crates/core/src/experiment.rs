//! Experiment drivers behind the command-line tool: the tandem-repeat sweep,
//! per-region densities on real sequence, and single-sequence density
//! reports. Results are [`ExperimentRow`]s rendered as CSV.
//!
//! Every trial's sequence and ordering come from seeds derived from the
//! master seed and the trial's coordinates, so output bytes do not depend on
//! the worker count.

use std::fmt::Write as _;

use indexmap::IndexMap;

use crate::alphabet::{kmers, Alphabet, Sequence};
use crate::error::{Error, Result};
use crate::hashing::SchemeKind;
use crate::io::{extract_region, Region};
use crate::metrics::{distance_stats, MinimizerWeighting};
use crate::minimizer::{adjacent_share_rate, density, select_minimizers, TiePolicy};
use crate::parallel::Workers;
use crate::rng::{derive_seed_path, rng_from_seed, Lane};
use crate::simulation::{tandem_repeat, tandem_repeat_of_unit, RepeatSpec, Substitution};
use crate::stats::summarize;

pub const CSV_HEADER: &str = "group,scheme,metric,mean,stderr,trials,seed";

/// Status written in place of a mean when a region is too short for one window.
pub const INSUFFICIENT_LENGTH: &str = "insufficient_length";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Value { mean: f64, stderr: f64 },
    /// A single measurement; stderr is not defined.
    Single(f64),
    InsufficientLength,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub group: String,
    pub scheme: String,
    pub metric: String,
    pub cell: Cell,
    pub trials: usize,
    pub seed: u64,
}

impl ExperimentRow {
    pub fn mean(&self) -> Option<f64> {
        match self.cell {
            Cell::Value { mean, .. } | Cell::Single(mean) => Some(mean),
            Cell::InsufficientLength => None,
        }
    }

    pub fn stderr(&self) -> Option<f64> {
        match self.cell {
            Cell::Value { stderr, .. } => Some(stderr),
            _ => None,
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// Header plus one line per row, `\n` terminated.
pub fn to_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let (mean, stderr) = match r.cell {
            Cell::Value { mean, stderr } => (mean.to_string(), stderr.to_string()),
            Cell::Single(v) => (v.to_string(), "NA".to_owned()),
            Cell::InsufficientLength => (INSUFFICIENT_LENGTH.to_owned(), "NA".to_owned()),
        };
        let _ = writeln!(
            out,
            "{},{},{},{mean},{stderr},{},{}",
            csv_field(&r.group),
            csv_field(&r.scheme),
            csv_field(&r.metric),
            r.trials,
            r.seed
        );
    }
    out
}

fn summary_row(group: &str, scheme: SchemeKind, metric: &str, values: &[f64], seed: u64) -> ExperimentRow {
    let s = summarize(values);
    ExperimentRow {
        group: group.to_owned(),
        scheme: scheme.label().to_owned(),
        metric: metric.to_owned(),
        cell: Cell::Value {
            mean: s.mean,
            stderr: s.stderr,
        },
        trials: s.n,
        seed,
    }
}

fn scheme_index(s: SchemeKind) -> u64 {
    match s {
        SchemeKind::MultiplyShiftMin => 0,
        SchemeKind::GaussianMax => 1,
        SchemeKind::LexicographicMin => 2,
    }
}

fn check_trials(trials: usize) -> Result<()> {
    if trials < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 trials for a standard error, got {trials}")));
    }
    Ok(())
}

pub const METRIC_DENSITY: &str = "density";
pub const METRIC_DIST_TO_ALL: &str = "dist_to_all";
pub const METRIC_DIST_BETWEEN: &str = "dist_between_minimizers";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub k: usize,
    pub w: usize,
    pub length: usize,
    pub repeat_lengths: Vec<usize>,
    pub mutation_rate: f64,
    pub trials: usize,
    pub seed: u64,
    pub ties: TiePolicy,
    pub schemes: Vec<SchemeKind>,
    /// Draw one repeat unit per repeat length instead of one per trial.
    pub fixed_unit: bool,
    pub substitution: Substitution,
    pub weighting: MinimizerWeighting,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            k: 8,
            w: 19,
            length: 1007,
            repeat_lengths: (1..=30).collect(),
            mutation_rate: 0.1,
            trials: 400,
            seed: 1,
            ties: TiePolicy::Leftmost,
            schemes: vec![SchemeKind::MultiplyShiftMin, SchemeKind::GaussianMax],
            fixed_unit: false,
            substitution: Substitution::OtherSymbol,
            weighting: MinimizerWeighting::PerPosition,
        }
    }
}

/// Per-trial metric values for one scheme.
struct TrialMetrics {
    density: f64,
    to_all: f64,
    between: Option<f64>,
}

fn trial_metrics(seq: &Sequence, k: usize, w: usize, scheme: SchemeKind, seed: u64, cfg: &SweepConfig) -> Result<TrialMetrics> {
    let ordering = scheme.ordering(seq.sigma(), k, seed);
    let sel = select_minimizers(seq, k, w, &ordering, cfg.ties)?;
    let all = kmers(seq, k);
    let stats = distance_stats(&sel.selected_kmers(seq), &all, seq.sigma(), cfg.weighting)?;
    Ok(TrialMetrics {
        density: density(&sel).density,
        to_all: stats.mean_to_all,
        between: stats.mean_pairwise,
    })
}

/// Mutated tandem repeats of each repeat length, scored under every scheme.
/// Rows are ordered by repeat length, then scheme, then metric.
pub fn run_sweep(cfg: &SweepConfig, workers: Workers) -> Result<Vec<ExperimentRow>> {
    check_trials(cfg.trials)?;
    if cfg.k == 0 || cfg.w == 0 {
        return Err(Error::InvalidParameter(format!("k={} and w={} must both be >= 1", cfg.k, cfg.w)));
    }
    if cfg.length < cfg.k + cfg.w - 1 {
        return Err(Error::InvalidParameter(format!(
            "length {} is too short for k={} and w={}",
            cfg.length, cfg.k, cfg.w
        )));
    }
    let sigma = 4;
    for &r in &cfg.repeat_lengths {
        RepeatSpec::new(r, cfg.length, cfg.mutation_rate, 0)?;
    }
    let units: Vec<Option<Vec<u8>>> = cfg
        .repeat_lengths
        .iter()
        .map(|&r| {
            cfg.fixed_unit.then(|| {
                let mut rng = rng_from_seed(derive_seed_path(cfg.seed, Lane::Fixture, &[r as u64]));
                (0..r).map(|_| rand::Rng::random_range(&mut rng, 0..sigma as u8)).collect()
            })
        })
        .collect();

    let per_len = cfg.trials;
    let results = workers.try_map(cfg.repeat_lengths.len() * per_len, |job| {
        let (ri, t) = (job / per_len, job % per_len);
        let r = cfg.repeat_lengths[ri];
        let seq_seed = derive_seed_path(cfg.seed, Lane::Sequence, &[r as u64, t as u64]);
        let seq = match &units[ri] {
            Some(unit) => tandem_repeat_of_unit(unit, cfg.length, cfg.mutation_rate, cfg.substitution, sigma, seq_seed)?,
            None => tandem_repeat(
                &RepeatSpec::new(r, cfg.length, cfg.mutation_rate, seq_seed)?.with_substitution(cfg.substitution),
                sigma,
            )?,
        };
        cfg.schemes
            .iter()
            .map(|&s| {
                let seed = derive_seed_path(cfg.seed, Lane::Hasher, &[r as u64, t as u64, scheme_index(s)]);
                trial_metrics(&seq, cfg.k, cfg.w, s, seed, cfg)
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut rows = Vec::new();
    for (ri, &r) in cfg.repeat_lengths.iter().enumerate() {
        let chunk = &results[ri * per_len..(ri + 1) * per_len];
        let group = r.to_string();
        for (si, &scheme) in cfg.schemes.iter().enumerate() {
            let pick = |f: &dyn Fn(&TrialMetrics) -> Option<f64>| -> Vec<f64> { chunk.iter().filter_map(|t| f(&t[si])).collect() };
            rows.push(summary_row(&group, scheme, METRIC_DENSITY, &pick(&|m| Some(m.density)), cfg.seed));
            rows.push(summary_row(&group, scheme, METRIC_DIST_TO_ALL, &pick(&|m| Some(m.to_all)), cfg.seed));
            rows.push(summary_row(&group, scheme, METRIC_DIST_BETWEEN, &pick(&|m| m.between), cfg.seed));
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionConfig {
    pub k: usize,
    pub w: usize,
    pub trials: usize,
    pub seed: u64,
    pub ties: TiePolicy,
    pub schemes: Vec<SchemeKind>,
}

impl Default for RegionConfig {
    fn default() -> Self {
        Self {
            k: 8,
            w: 19,
            trials: 400,
            seed: 1,
            ties: TiePolicy::Leftmost,
            schemes: vec![SchemeKind::MultiplyShiftMin, SchemeKind::GaussianMax],
        }
    }
}

/// Mean density of each region under each scheme, with a fresh ordering per
/// trial over the same sequence. Regions too short for a single window (or
/// with no valid window) get an [`Cell::InsufficientLength`] row.
pub fn run_regions(
    seqs: &IndexMap<String, Sequence>,
    regions: &[Region],
    cfg: &RegionConfig,
    workers: Workers,
) -> Result<Vec<ExperimentRow>> {
    check_trials(cfg.trials)?;
    let mut rows = Vec::new();
    for (ri, region) in regions.iter().enumerate() {
        let seq = extract_region(seqs, region)?;
        let group = region.display_label();
        for &scheme in &cfg.schemes {
            let values = workers.try_map(cfg.trials, |t| {
                let seed = derive_seed_path(cfg.seed, Lane::Hasher, &[ri as u64, t as u64, scheme_index(scheme)]);
                let ordering = scheme.ordering(seq.sigma(), cfg.k, seed);
                match select_minimizers(&seq, cfg.k, cfg.w, &ordering, cfg.ties) {
                    Ok(sel) => Ok(Some(density(&sel).density)),
                    Err(Error::NoValidWindow { .. }) => Ok(None),
                    Err(e) => Err(e),
                }
            })?;
            let values: Option<Vec<f64>> = values.into_iter().collect();
            rows.push(match values {
                Some(v) => summary_row(&group, scheme, METRIC_DENSITY, &v, cfg.seed),
                None => ExperimentRow {
                    group: group.clone(),
                    scheme: scheme.label().to_owned(),
                    metric: METRIC_DENSITY.to_owned(),
                    cell: Cell::InsufficientLength,
                    trials: cfg.trials,
                    seed: cfg.seed,
                },
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceReport {
    pub density: f64,
    pub distinct: usize,
    pub windows: usize,
    pub valid_kmers: usize,
    pub share_rate: Option<f64>,
}

/// Density figures for one sequence under one ordering drawn from `seed`.
pub fn sequence_report(
    seq: &Sequence,
    k: usize,
    w: usize,
    scheme: SchemeKind,
    ties: TiePolicy,
    seed: u64,
) -> Result<SequenceReport> {
    let ordering = scheme.ordering(seq.sigma(), k, derive_seed_path(seed, Lane::Hasher, &[0, 0, scheme_index(scheme)]));
    let sel = select_minimizers(seq, k, w, &ordering, ties)?;
    let d = density(&sel);
    Ok(SequenceReport {
        density: d.density,
        distinct: d.distinct,
        windows: d.windows,
        valid_kmers: d.total_kmers,
        share_rate: adjacent_share_rate(&sel),
    })
}

impl SequenceReport {
    pub fn render(&self) -> String {
        let share = self.share_rate.map_or_else(|| "NA".to_owned(), |s| s.to_string());
        format!(
            "density\t{}\ndistinct\t{}\nwindows\t{}\nvalid_kmers\t{}\nshare_rate\t{share}\n",
            self.density, self.distinct, self.windows, self.valid_kmers
        )
    }

    pub fn rows(&self, group: &str, scheme: SchemeKind, seed: u64) -> Vec<ExperimentRow> {
        let mut out = vec![
            ("density", Some(self.density)),
            ("distinct", Some(self.distinct as f64)),
            ("windows", Some(self.windows as f64)),
            ("valid_kmers", Some(self.valid_kmers as f64)),
            ("share_rate", self.share_rate),
        ];
        out.retain(|(_, v)| v.is_some());
        out.into_iter()
            .map(|(m, v)| ExperimentRow {
                group: group.to_owned(),
                scheme: scheme.label().to_owned(),
                metric: m.to_owned(),
                cell: Cell::Single(v.unwrap_or_default()),
                trials: 1,
                seed,
            })
            .collect()
    }
}

/// The `(TTAGGG)n` telomere repeat with `rate` substitutions.
pub fn telomere_like(length: usize, rate: f64, seed: u64) -> Result<Sequence> {
    let a = Alphabet::dna();
    let unit: Vec<u8> = b"TTAGGG".iter().map(|&c| a.index_of(c).expect("DNA letter")).collect();
    tandem_repeat_of_unit(&unit, length, rate, Substitution::OtherSymbol, a.size(), seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_sweep() -> SweepConfig {
        SweepConfig {
            repeat_lengths: vec![1, 4, 25],
            trials: 6,
            length: 200,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn sweep_shape_and_determinism() {
        let cfg = small_sweep();
        let a = run_sweep(&cfg, Workers::single()).unwrap();
        assert_eq!(a.len(), 3 * 2 * 3);
        assert_eq!(a[0].group, "1");
        assert_eq!((a[0].scheme.as_str(), a[0].metric.as_str()), ("random", "density"));
        assert_eq!(a[5].scheme, "gaussian");
        assert_eq!(to_csv(&a), to_csv(&run_sweep(&cfg, Workers(Some(3))).unwrap()));
        let csv = to_csv(&a);
        assert!(csv.starts_with("group,scheme,metric,mean,stderr,trials,seed\n"));
        assert_eq!(csv.lines().count(), 19);
    }

    #[test]
    fn fixed_unit_changes_output() {
        let mut cfg = small_sweep();
        let base = to_csv(&run_sweep(&cfg, Workers::single()).unwrap());
        cfg.fixed_unit = true;
        assert_ne!(base, to_csv(&run_sweep(&cfg, Workers::single()).unwrap()));
    }

    #[test]
    fn sweep_rejects_bad_input() {
        let mut cfg = small_sweep();
        cfg.trials = 1;
        assert!(run_sweep(&cfg, Workers::single()).is_err());
        let mut cfg = small_sweep();
        cfg.repeat_lengths = vec![0];
        assert!(run_sweep(&cfg, Workers::single()).is_err());
        let mut cfg = small_sweep();
        cfg.length = 20;
        assert!(run_sweep(&cfg, Workers::single()).is_err());
    }

    #[test]
    fn short_region_is_flagged() {
        let mut seqs = IndexMap::new();
        seqs.insert("t".to_owned(), telomere_like(300, 0.05, 1).unwrap());
        let regions = vec![Region::new("t", 0, 300, "long").unwrap(), Region::new("t", 0, 20, "short").unwrap()];
        let cfg = RegionConfig {
            trials: 4,
            ..RegionConfig::default()
        };
        let rows = run_regions(&seqs, &regions, &cfg, Workers::single()).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows[0].mean().is_some());
        assert_eq!(rows[2].cell, Cell::InsufficientLength);
        assert!(to_csv(&rows).contains("short,random,density,insufficient_length,NA,4,1\n"));
    }

    #[test]
    fn csv_quotes_awkward_labels() {
        let row = ExperimentRow {
            group: "a,b".into(),
            scheme: "random".into(),
            metric: "density".into(),
            cell: Cell::Single(0.5),
            trials: 1,
            seed: 0,
        };
        assert!(to_csv(&[row]).ends_with("\"a,b\",random,density,0.5,NA,1,0\n"));
    }

    #[test]
    fn w1_report_has_density_one() {
        let seq = telomere_like(100, 0.1, 3).unwrap();
        let r = sequence_report(&seq, 8, 1, SchemeKind::MultiplyShiftMin, TiePolicy::Leftmost, 1).unwrap();
        assert_eq!(r.density, 1.0);
        assert_eq!(r.windows, 93);
    }
}
