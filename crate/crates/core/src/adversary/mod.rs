//! Corruption adversaries: admissible corruptions of a sample, exact
//! worst-case values for adaptive and oblivious adversaries, the simulator
//! that lets an adaptive adversary imitate an oblivious one, and the
//! standard additive and removal-only models.

mod budget;
mod easy;
mod exact;
mod feasible;
mod models;
mod oblivious;
mod sample;
mod strategy;
mod subtractive;
mod test_fn;

pub use budget::{is_admissible, REAL_BUDGET_SLACK};
pub use easy::{
    adaptive_simulates_oblivious, delta_removals, recommended_m, subsample_filter, CorruptionOutcome,
    ObliviousSimulator, RemovalBudgetReport,
};
pub use exact::{adaptive_max, adaptive_max_tuples, best_response, optimal_strategy, SubsampledTest};
pub use feasible::{adaptive_feasible, Caps};
pub use models::{
    adaptive_additive_max, additive_binomial_gap_bound, binomial_max, corrupted_count, malicious_max,
    malicious_run, noniid_max, noniid_run, oblivious_additive_max,
};
pub use oblivious::{oblivious_max, ObliviousGrid, ObliviousMax};
pub(crate) use oblivious::maximize_on_simplex;
pub use sample::Sample;
pub use strategy::{AdaptiveStrategy, Callback, StrategyTable};
pub use subtractive::{
    conversion_sample_size, null_filtered, subtractive_adaptive_native, subtractive_oblivious_native,
    too_few_survivors,
};
pub use test_fn::TestFunction;
