//! Grid search for Gaussian Brunn–Minkowski violations by non-symmetric cones.

use bmlab::measures::QuadConfig;
use bmlab::scenarios::{nt_counterexample_search, NtGrid};

fn main() {
    let search = nt_counterexample_search(&NtGrid::default(), &QuadConfig::default());
    let best = search.best_cell().expect("grid is non-empty");
    let r = &best.report;
    println!(
        "most negative slack at alpha = {} deg, epsilon = {:.4e}: slack {:.3e}, budget {:.3e}, {:?}",
        best.alpha_deg, best.epsilon, r.slack, r.error_budget, r.verdict
    );
    let violated = search.cells.iter().filter(|c| c.report.violated()).count();
    println!("{violated} of {} cells violated", search.cells.len());
    println!("stable under doubled precision: {}", search.is_stable());
}
