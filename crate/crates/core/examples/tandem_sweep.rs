//! A reduced repeat-length sweep printed as CSV. Pass a trial count to scale it up.

use minlab::experiment::{run_sweep, to_csv, SweepConfig};
use minlab::parallel::Workers;

fn main() -> minlab::error::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(40);
    let cfg = SweepConfig {
        repeat_lengths: vec![1, 2, 5, 10, 15, 18, 19, 20, 25, 30],
        trials,
        ..SweepConfig::default()
    };
    print!("{}", to_csv(&run_sweep(&cfg, Workers::from_env()?)?));
    Ok(())
}
