//! Per-region densities on the bundled telomere-like FASTA and region files,
//! or on files given as arguments.

use minlab::experiment::{run_regions, to_csv, RegionConfig};
use minlab::io::{read_fasta, read_regions};
use minlab::parallel::Workers;

fn main() -> minlab::error::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");
    let mut args = std::env::args().skip(1);
    let fasta = args.next().unwrap_or_else(|| format!("{dir}/telomere.fa"));
    let regions = args.next().unwrap_or_else(|| format!("{dir}/telomere.bed"));
    let cfg = RegionConfig {
        trials: 100,
        ..RegionConfig::default()
    };
    let rows = run_regions(&read_fasta(&fasta)?, &read_regions(&regions)?, &cfg, Workers::from_env()?)?;
    print!("{}", to_csv(&rows));
    Ok(())
}
