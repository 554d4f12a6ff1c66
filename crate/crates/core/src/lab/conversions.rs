//! Removal and addition models expressed through cost functions on the
//! domain augmented with a null point, compared with their native forms.

use crate::adversary::{
    adaptive_additive_max, adaptive_max, additive_binomial_gap_bound, binomial_max, conversion_sample_size,
    null_filtered, oblivious_max, subtractive_adaptive_native, subtractive_oblivious_native, too_few_survivors,
    TestFunction,
};
use crate::costs::build_subtractive;
use crate::error::{Error, Result};
use crate::lab::config::ExperimentConfig;
use crate::lab::report::{Check, Report};
use crate::mc::{sub_seed, trial_rng};
use crate::probkit::{Dist, Domain};

/// `count` seeded random exchangeable tests of arity `n` on `k` points.
pub fn seeded_tests(count: usize, n: usize, k: usize, seed: u64) -> Vec<TestFunction> {
    (0..count)
        .map(|i| TestFunction::random_exchangeable(n, k, &mut trial_rng(seed, i as u64)))
        .collect()
}

pub fn run_model_conversions(cfg: &ExperimentConfig) -> Result<Report> {
    let (k, n) = (cfg.domain_size, cfg.n);
    let m = cfg.m.unwrap_or(conversion_sample_size(n, cfg.epsilon, cfg.eta)?);
    if cfg.functions == 0 {
        return Err(Error::InvalidParameter("need at least one test function".into()));
    }
    let d = Domain::range(k)?;
    let base = Dist::uniform(&d);
    let (aug, rho) = build_subtractive(&d, cfg.eta)?;
    let lifted = base.lift(&aug)?;
    let mut r = Report::new("conversions", cfg.entries());
    r.calibrate("m", m);
    r.value("conversion_sample_size", conversion_sample_size(n, cfg.epsilon, cfg.eta)? as f64);
    let survivors = too_few_survivors(n, cfg.eta, m);
    r.value("too_few_survivors", survivors);

    let tests = seeded_tests(cfg.functions, n, k, sub_seed(cfg.seed, 3));
    let mut identity = 0.0f64;
    let mut oblivious_gap = 0.0f64;
    let mut oblivious_slack = 0.0f64;
    let mut additive_excess = f64::NEG_INFINITY;
    let gap_bound = additive_binomial_gap_bound(n, cfg.eta, m);
    for (i, f) in tests.iter().enumerate() {
        let native = subtractive_adaptive_native(f, &base, cfg.eta, m, &cfg.caps)?;
        let lifted_f = null_filtered(f, &aug, m, &cfg.caps)?;
        let framework = adaptive_max(&lifted_f, &rho, &lifted, m, &cfg.caps)?;
        identity = identity.max((native - framework).abs());
        r.value(format!("f{i}.subtractive_adaptive"), native);

        let (_, obl_native) = subtractive_oblivious_native(f, &base, cfg.eta, cfg.resolution, &cfg.caps)?;
        let obl = oblivious_max(&lifted_f, &rho, &lifted, cfg.resolution, &cfg.caps)?;
        let grid = n as f64 * k as f64 / (2.0 * cfg.resolution as f64);
        oblivious_gap = oblivious_gap.max((obl_native - obl.value).abs());
        oblivious_slack = oblivious_slack.max(survivors + grid + obl.error_bound);
        r.value(format!("f{i}.subtractive_oblivious"), obl_native);

        let add = adaptive_additive_max(f, &base, cfg.eta, m, &cfg.caps)?;
        let bin = binomial_max(f, &base, cfg.eta, m, &cfg.caps)?;
        additive_excess = additive_excess.max((add - bin).abs() - gap_bound);
        r.value(format!("f{i}.additive_adaptive"), add);
        r.value(format!("f{i}.binomial"), bin);
    }
    r.check(Check::le("subtractive_identity_residual", identity, 0.0, 1e-12));
    r.check(Check::le("subtractive_oblivious_gap", oblivious_gap, oblivious_slack, 1e-9));
    r.value("additive_binomial_gap_bound", gap_bound);
    r.check(Check::le("additive_binomial_excess", additive_excess, 0.0, 1e-12));
    Ok(r)
}
