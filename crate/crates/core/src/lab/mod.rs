//! Experiments: configuration, runners and reports.

mod certify;
mod config;
mod conversions;
mod counterexample;
mod degree;
mod easy;
mod partial;
mod report;
mod support;

use std::time::Instant;

pub use certify::{certify, certify_gap, no_null_test, run_certificate, Gap};
pub use config::{parse_rational, ExperimentConfig, ExperimentKind};
pub use conversions::{run_model_conversions, seeded_tests};
pub use counterexample::{majority_flip_law, product_distance_floor, run_counterexample};
pub use degree::{run_degree_lb, special_fraction, CorrelationGame};
pub use easy::{imitation_sample_size, run_easy_direction};
pub use partial::{resample_coupling, run_partial_adaptive};
pub use report::{Check, Relation, Report, REPORT_SCHEMA};
pub use support::{calibrate_tester, collision_count, colliding_indices, remove_duplicates, run_support_size, CollisionTester};

/// Runs the configured experiment and records its wall clock.
pub fn run(cfg: &ExperimentConfig) -> crate::Result<Report> {
    let start = Instant::now();
    let mut r = match cfg.kind {
        ExperimentKind::Counterexample => run_counterexample(cfg),
        ExperimentKind::EasyDirection => run_easy_direction(cfg),
        ExperimentKind::SupportSize => run_support_size(cfg),
        ExperimentKind::DegreeLb => run_degree_lb(cfg),
        ExperimentKind::Conversions => run_model_conversions(cfg),
        ExperimentKind::PartialAdaptive => run_partial_adaptive(cfg),
        ExperimentKind::Certify => run_certificate(cfg),
    }?;
    r.wall_clock_secs = start.elapsed().as_secs_f64();
    Ok(r)
}
