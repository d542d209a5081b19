//! Tolerance-aware checks of Brunn–Minkowski-type inequalities.
//!
//! Every check returns an [`InequalityReport`] whose verdict is a pure
//! function of the slack and the composed error budget. Evaluation failures
//! produce [`Verdict::Inconclusive`] rather than an error, so batch runs never
//! abort halfway.

pub mod checks;
pub mod dilation;
pub mod lemma;
pub mod report;
pub mod weighted_pl;

pub use checks::{
    check_bm, check_ehrhard, check_ehrhard_general, check_log_bm, check_s_concavity, combination_measures,
    ehrhard_from, s_concavity_from,
};
pub use dilation::{detect_dilation, Dilation};
pub use lemma::{check_lemma_main, lemma_bound, lemma_supremum, optimal_p, p_grid, pl_factor};
pub use report::{InequalityReport, Verdict};
pub use weighted_pl::{check_weighted_pl, GridFunction};
