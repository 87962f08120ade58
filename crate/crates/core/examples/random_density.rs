//! Mean density of random minimizers on uniform sequences against 2 / (w + 1).

use minlab::hashing::SchemeKind;
use minlab::minimizer::TiePolicy;
use minlab::parallel::Workers;
use minlab::validation::expected_density_check;

fn main() -> minlab::error::Result<()> {
    let workers = Workers::from_env()?;
    for w in [9, 19, 39] {
        for scheme in [SchemeKind::MultiplyShiftMin, SchemeKind::GaussianMax] {
            let d = expected_density_check(8, w, 1007, 400, 1, scheme, TiePolicy::Leftmost, workers)?;
            println!(
                "w={w:>2} {:>8}: {:.5} +- {:.5}  (2/(w+1) = {:.5}, at l=1007 {:.5})",
                scheme.label(),
                d.summary.mean,
                d.summary.stderr,
                d.target,
                d.finite_target
            );
        }
    }
    Ok(())
}
