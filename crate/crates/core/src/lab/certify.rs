//! Both sides of the adaptive versus oblivious gap for a given test, cost
//! function and base distribution, with the simulation that explains it.

use std::fs;

use crate::adversary::{adaptive_max, oblivious_max, optimal_strategy, recommended_m, Caps, TestFunction};
use crate::costs::{build_subtractive, CostFunction};
use crate::error::{Error, Result};
use crate::lab::config::ExperimentConfig;
use crate::lab::conversions::seeded_tests;
use crate::lab::report::{Check, Report};
use crate::mc::sub_seed;
use crate::probkit::{is_reachable, Dist, Domain};
use crate::simulate::{indistinguishability_gap, simulate_empirical_oblivious, simulate_randomized_oblivious};

/// Exact values of both sides for one test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gap {
    pub oblivious: f64,
    /// How far the grid search may fall short of the oblivious supremum.
    pub oblivious_error: f64,
    pub adaptive: f64,
}

impl Gap {
    pub fn gap(&self) -> f64 {
        (self.adaptive - self.oblivious).abs()
    }
}

pub fn certify_gap(
    f: &TestFunction,
    rho: &CostFunction,
    base: &Dist,
    m: usize,
    resolution: usize,
    caps: &Caps,
) -> Result<Gap> {
    let obl = oblivious_max(f, rho, base, resolution, caps)?;
    let adaptive = adaptive_max(f, rho, base, m, caps)?;
    Ok(Gap {
        oblivious: obl.value,
        oblivious_error: obl.error_bound,
        adaptive,
    })
}

/// 1 when none of the points is the null point.
pub fn no_null_test(n: usize, domain: &Domain) -> Result<TestFunction> {
    let null = domain
        .null_index()
        .ok_or_else(|| Error::DomainMismatch("the no-null test needs an augmented domain".into()))?;
    Ok(TestFunction::exchangeable(n, move |t| f64::from(u8::from(t.iter().all(|&x| x != null)))))
}

/// Certificate for explicit inputs. Simulation diagnostics use the first test.
pub fn certify(
    cfg: &ExperimentConfig,
    tests: &[TestFunction],
    rho: &CostFunction,
    base: &Dist,
) -> Result<Report> {
    let n = cfg.n;
    let m = cfg.m.unwrap_or(2 * n);
    if tests.is_empty() || tests.iter().any(|f| f.arity() != n) {
        return Err(Error::InvalidParameter(format!("need at least one test of arity {n}")));
    }
    if m < n {
        return Err(Error::InvalidParameter(format!("need m >= n, got m={m}, n={n}")));
    }
    let mut r = Report::new("certify", cfg.entries());
    let degree = rho.degree();
    r.value("degree", degree as f64);
    let mut max_gap = 0.0f64;
    let mut max_err = 0.0f64;
    for (i, f) in tests.iter().enumerate() {
        let g = certify_gap(f, rho, base, m, cfg.resolution, &cfg.caps)?;
        r.value(format!("f{i}.oblivious_max"), g.oblivious);
        r.value(format!("f{i}.adaptive_max"), g.adaptive);
        r.value(format!("f{i}.gap"), g.gap());
        max_gap = max_gap.max(g.gap());
        max_err = max_err.max(g.oblivious_error);
    }
    r.value("max_gap", max_gap);
    r.check(Check::le("max_gap", max_gap, cfg.epsilon, max_err));
    if degree >= 2 {
        r.value(
            "recommended_m",
            recommended_m(n, degree, cfg.epsilon, cfg.constant)? as f64,
        );
        if max_gap > 0.0 {
            let ln_d = (degree as f64).ln();
            let c = m as f64 * max_gap.powi(4) / ((n as f64).powi(4) * ln_d * ln_d);
            r.calibrate("constant", crate::numfmt::fmt_num(c));
        }
    }

    let strategy = optimal_strategy(&tests[0], rho, m, &cfg.caps)?;
    let law = strategy.pushforward(base)?;
    let k_max = cfg.k_max.min(m - n).min(m / 2);
    let sim = if k_max > 0 {
        simulate_randomized_oblivious(&law, rho, base, n, k_max)?
    } else {
        simulate_empirical_oblivious(&law, rho, base, n)?
    };
    r.calibrate("simulation_method", sim.method);
    r.calibrate("core_size", sim.k);
    r.value("grouping_error", sim.grouping_error);
    r.value("grouping_bound", sim.grouping_bound);
    r.value("rounding_error", sim.rounding_error);
    r.value("rounding_bound", sim.rounding_bound);
    r.value("simulation_total_error", sim.total_error);
    r.check(Check::le(
        "simulation_triangle",
        sim.total_error,
        sim.grouping_error + sim.rounding_error,
        1e-9,
    ));
    let mut unreachable = 0usize;
    for (_, c) in &sim.mixture {
        if !is_reachable(rho, base, c)? {
            unreachable += 1;
        }
    }
    r.check(Check::le("unreachable_components", unreachable as f64, 0.0, 0.0));
    let ind = indistinguishability_gap(&law, &sim.mixture, &tests[0])?;
    r.value("strategy_value", ind.adaptive_value);
    r.value("mixture_value", ind.mixture_value);
    r.check(Check::le("indistinguishability_gap", ind.gap, ind.tv, 1e-12));
    Ok(r)
}

/// Removal corruption at rate `eta` on `domain_size` points (or the cost
/// file), uniform base, the no-null test plus `functions` seeded random tests.
pub fn run_certificate(cfg: &ExperimentConfig) -> Result<Report> {
    let rho = match &cfg.cost_file {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            CostFunction::from_text(&text)?
        }
        None => build_subtractive(&Domain::range(cfg.domain_size)?, cfg.eta)?.1,
    };
    let domain = rho.domain().clone();
    let base = Dist::uniform_base(&domain);
    let mut tests = Vec::new();
    if domain.is_augmented() {
        tests.push(no_null_test(cfg.n, &domain)?);
    }
    tests.extend(seeded_tests(cfg.functions, cfg.n, domain.len(), sub_seed(cfg.seed, 11)));
    certify(cfg, &tests, &rho, &base)
}
