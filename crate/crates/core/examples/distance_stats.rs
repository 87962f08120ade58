//! Hamming structure of selected minimizers on one mutated tandem repeat.

use minlab::alphabet::kmers;
use minlab::hashing::SchemeKind;
use minlab::metrics::{distance_stats, MinimizerWeighting};
use minlab::minimizer::{select_minimizers, TiePolicy};
use minlab::simulation::{tandem_repeat, RepeatSpec};

fn main() -> minlab::error::Result<()> {
    let seq = tandem_repeat(&RepeatSpec::new(12, 1007, 0.1, 3)?, 4)?;
    let all = kmers(&seq, 8);
    for scheme in [SchemeKind::MultiplyShiftMin, SchemeKind::GaussianMax] {
        let sel = select_minimizers(&seq, 8, 19, &scheme.ordering(4, 8, 5), TiePolicy::Leftmost)?;
        let st = distance_stats(&sel.selected_kmers(&seq), &all, 4, MinimizerWeighting::PerPosition)?;
        println!(
            "{:>8}: {} minimizers, to all k-mers {:.3}, between minimizers {:.3}",
            scheme.label(),
            st.minimizers,
            st.mean_to_all,
            st.mean_pairwise.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
