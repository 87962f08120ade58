use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use minlab::alphabet::{parse_sequence, Alphabet};
use minlab::error::Error;
use minlab::experiment::{run_regions, run_sweep, sequence_report, to_csv, RegionConfig, SweepConfig};
use minlab::hashing::SchemeKind;
use minlab::io::{read_fasta, read_regions};
use minlab::minimizer::TiePolicy;
use minlab::parallel::Workers;
use minlab::simulation::Substitution;
use minlab::suite::{checks_to_csv, run_suite, Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "minlab", version, about = "Minimizer density experiments and validators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Density and distance metrics over mutated tandem repeats.
    Sweep(SweepArgs),
    /// Per-region densities from a FASTA file and a region file.
    Telomere(TelomereArgs),
    /// Run validation suites; exits 1 if any check fails.
    Validate(ValidateArgs),
    /// Density report for one sequence.
    Density(DensityArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Random,
    Gaussian,
    Lex,
}

impl From<SchemeArg> for SchemeKind {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Random => SchemeKind::MultiplyShiftMin,
            SchemeArg::Gaussian => SchemeKind::GaussianMax,
            SchemeArg::Lex => SchemeKind::LexicographicMin,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TiesArg {
    Leftmost,
    Rightmost,
    PreferPrevious,
}

impl From<TiesArg> for TiePolicy {
    fn from(t: TiesArg) -> Self {
        match t {
            TiesArg::Leftmost => TiePolicy::Leftmost,
            TiesArg::Rightmost => TiePolicy::Rightmost,
            TiesArg::PreferPrevious => TiePolicy::PreferPrevious,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SubstitutionArg {
    /// Mutations always change the symbol.
    Other,
    /// Mutations draw uniformly from all symbols.
    Any,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 8)]
    k: usize,
    #[arg(long, default_value_t = 19)]
    w: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "leftmost")]
    ties: TiesArg,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1007)]
    length: usize,
    /// Comma list and/or ranges, e.g. `1-30` or `1,5,10-12`.
    #[arg(long, default_value = "1-30")]
    repeat_lengths: String,
    #[arg(long, default_value_t = 0.1)]
    mutation_rate: f64,
    #[arg(long, default_value_t = 400)]
    trials: usize,
    /// Repeatable; defaults to random and gaussian.
    #[arg(long, value_enum)]
    scheme: Vec<SchemeArg>,
    /// Draw one repeat unit per repeat length instead of one per trial.
    #[arg(long)]
    fixed_unit: bool,
    #[arg(long, value_enum, default_value = "other")]
    substitution: SubstitutionArg,
}

#[derive(Args)]
struct TelomereArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    fasta: PathBuf,
    #[arg(long)]
    regions: PathBuf,
    #[arg(long, default_value_t = 400)]
    trials: usize,
    #[arg(long, value_enum)]
    scheme: Vec<SchemeArg>,
}

#[derive(Args)]
struct ValidateArgs {
    /// lemma1, lemma2, lemma3, thm2, thm3, equivalence or all.
    suite: String,
    /// Overrides every suite's default trial count.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    k: usize,
    #[arg(long, default_value_t = 19)]
    w: usize,
    #[arg(long, default_value_t = 1007)]
    length: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    common: Common,
    /// Inline sequence; non-ACGT letters become gaps.
    #[arg(long, conflicts_with = "fasta", required_unless_present = "fasta")]
    sequence: Option<String>,
    #[arg(long)]
    fasta: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "random")]
    scheme: SchemeArg,
}

enum Failure {
    Assertion,
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } | Error::Parse { .. } | Error::UnknownSequence(_) | Error::RegionOutOfBounds { .. } => {
                Failure::Io(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn parse_lengths(spec: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("bad repeat-length list {spec:?}"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn schemes(v: &[SchemeArg]) -> Vec<SchemeKind> {
    if v.is_empty() {
        vec![SchemeKind::MultiplyShiftMin, SchemeKind::GaussianMax]
    } else {
        v.iter().map(|&s| s.into()).collect()
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let workers = Workers::from_env()?;
    match cli.command {
        Command::Sweep(a) => {
            let cfg = SweepConfig {
                k: a.common.k,
                w: a.common.w,
                length: a.length,
                repeat_lengths: parse_lengths(&a.repeat_lengths)?,
                mutation_rate: a.mutation_rate,
                trials: a.trials,
                seed: a.common.seed,
                ties: a.common.ties.into(),
                schemes: schemes(&a.scheme),
                fixed_unit: a.fixed_unit,
                substitution: match a.substitution {
                    SubstitutionArg::Other => Substitution::OtherSymbol,
                    SubstitutionArg::Any => Substitution::AnySymbol,
                },
                ..SweepConfig::default()
            };
            emit(a.common.out.as_deref(), &to_csv(&run_sweep(&cfg, workers)?))
        }
        Command::Telomere(a) => {
            let seqs = read_fasta(&a.fasta)?;
            let regions = read_regions(&a.regions)?;
            let cfg = RegionConfig {
                k: a.common.k,
                w: a.common.w,
                trials: a.trials,
                seed: a.common.seed,
                ties: a.common.ties.into(),
                schemes: schemes(&a.scheme),
            };
            emit(a.common.out.as_deref(), &to_csv(&run_regions(&seqs, &regions, &cfg, workers)?))
        }
        Command::Validate(a) => {
            let suite: Suite = a.suite.parse()?;
            let cfg = SuiteConfig {
                trials: a.trials,
                seed: a.seed,
                k: a.k,
                w: a.w,
                length: a.length,
            };
            let checks = run_suite(suite, &cfg, workers)?;
            for c in &checks {
                println!("{}", c.line());
            }
            if let Some(p) = &a.out {
                emit(Some(p), &checks_to_csv(&checks))?;
            }
            if checks.iter().all(|c| c.passed) {
                Ok(())
            } else {
                Err(Failure::Assertion)
            }
        }
        Command::Density(a) => {
            let alphabet = Alphabet::dna();
            let inputs = match (&a.sequence, &a.fasta) {
                (Some(s), _) => vec![("inline".to_owned(), parse_sequence(s, &alphabet))],
                (None, Some(p)) => read_fasta(p)?.into_iter().collect(),
                (None, None) => unreachable!("clap requires one input"),
            };
            let scheme: SchemeKind = a.scheme.into();
            let mut rows = Vec::new();
            for (name, seq) in &inputs {
                let r = sequence_report(seq, a.common.k, a.common.w, scheme, a.common.ties.into(), a.common.seed)?;
                if a.common.out.is_some() {
                    rows.extend(r.rows(name, scheme, a.common.seed));
                } else {
                    print!("{}", r.render().lines().map(|l| format!("{name}\t{l}\n")).collect::<String>());
                }
            }
            if let Some(p) = &a.common.out {
                emit(Some(p), &to_csv(&rows))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
