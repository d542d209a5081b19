//! Cases where the Gaussian Brunn–Minkowski inequality holds without
//! symmetry: interval products, slabs and dilates.

use bmlab::measures::EvalConfig;
use bmlab::scenarios::gz_case_checks;

fn main() {
    let out = gz_case_checks(42, 100, &EvalConfig::default());
    for case in ["gz_box", "gz_slab", "gz_dilate"] {
        let reports: Vec<_> = out
            .supporting
            .iter()
            .filter(|(k, _)| k == case)
            .map(|(_, r)| r)
            .collect();
        let holds = reports.iter().filter(|r| r.holds()).count();
        let min = reports.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
        println!("{case:<10} {holds}/{} hold, smallest slack {min:.3e}", reports.len());
    }
}
