//! Majority flipping on fair coins: adaptive corruption whose subsample law
//! is far from every product law, yet close to a mixture of reachable ones.

use crate::adversary::{is_admissible, maximize_on_simplex, oblivious_max, TestFunction};
use crate::combinatorics::{decode, encode};
use crate::costs::{build_strong, CostFunction};
use crate::error::{Error, Result};
use crate::lab::config::ExperimentConfig;
use crate::lab::report::{Check, Report};
use crate::probkit::{is_reachable, tv_joint, Dist, Domain, JointDist};
use crate::simulate::{indistinguishability_gap, simulate_empirical_oblivious, simulate_randomized_oblivious};

/// Law of the corrupted sample when `m` fair coins are all set to the
/// majority value, ties broken by a fair coin. Every move is checked
/// against `rho`.
pub fn majority_flip_law(rho: &CostFunction, m: usize) -> Result<JointDist> {
    if rho.domain().len() != 2 {
        return Err(Error::InvalidDomain("majority flipping needs two points".into()));
    }
    let cells = 1usize << m;
    let mut mass = vec![0.0; cells];
    let mut s = vec![0; m];
    let w = 1.0 / cells as f64;
    for i in 0..cells {
        decode(i, 2, m, &mut s);
        let ones = s.iter().sum::<usize>();
        let zeros = m - ones;
        let mut targets = Vec::new();
        if zeros >= ones {
            targets.push(0);
        }
        if ones >= zeros {
            targets.push(1);
        }
        let share = w / targets.len() as f64;
        for &x in &targets {
            let t = vec![x; m];
            if !is_admissible(rho, &s, &t) {
                return Err(Error::Infeasible(format!("majority flip of {s:?} exceeds the budget")));
            }
            mass[encode(&t, 2)] += share;
        }
    }
    JointDist::new(rho.domain(), m, mass)
}

/// `min_q tv(coin mixture of all-zeros and all-ones, Ber(q)^n)` from the
/// closed form of the distance, scanned over a fine grid of `q`.
pub fn product_distance_floor(n: usize) -> f64 {
    let steps = 100_000;
    (0..=steps)
        .map(|i| {
            let q = i as f64 / steps as f64;
            let (a, b) = (q.powi(n as i32), (1.0 - q).powi(n as i32));
            0.5 * ((0.5 - a).abs() + (0.5 - b).abs() + (1.0 - a - b))
        })
        .fold(f64::INFINITY, f64::min)
}

pub fn run_counterexample(cfg: &ExperimentConfig) -> Result<Report> {
    if cfg.domain_size != 2 {
        return Err(Error::InvalidParameter("counterexample uses a two point domain".into()));
    }
    let m = cfg.m.unwrap_or(4);
    let n = cfg.n;
    if n == 0 || n > m {
        return Err(Error::InvalidParameter(format!("need 1 <= n <= m, got n={n}, m={m}")));
    }
    let d = Domain::range(2)?;
    let rho = build_strong(&d, cfg.eta)?;
    let base = Dist::uniform(&d);
    let mut r = Report::new("counterexample", cfg.entries());

    let law = majority_flip_law(&rho, m)?;
    let sub = law.subsample(n)?;
    let ends = [Dist::point(&d, 0)?, Dist::point(&d, 1)?];
    let target = JointDist::mixture(&[
        (0.5, JointDist::product_power(&ends[0], n)?),
        (0.5, JointDist::product_power(&ends[1], n)?),
    ])?;
    r.check(Check::le("subsample_is_coin_mixture", tv_joint(&sub, &target)?, 0.0, 1e-12));

    let (_, neg) = maximize_on_simplex(
        2,
        cfg.resolution,
        &cfg.caps,
        |q| {
            let p = Dist::raw(&d, q.to_vec());
            JointDist::product_power(&p, n).map_or(f64::NEG_INFINITY, |j| -tv_joint(&sub, &j).unwrap_or(1.0))
        },
        |_| true,
        base.probs(),
    )?;
    let best = -neg;
    let floor = product_distance_floor(n);
    r.value("best_product_tv", best);
    r.value("best_product_tv_floor", floor);
    r.check(Check::le("best_product_tv_gap", (best - floor).abs(), 0.0, 0.02));

    let k_max = cfg.k_max.min(m - n).min(m / 2);
    let sim = if m > n && k_max > 0 {
        simulate_randomized_oblivious(&law, &rho, &base, n, k_max)?
    } else {
        simulate_empirical_oblivious(&law, &rho, &base, n)?
    };
    r.calibrate("simulation_method", sim.method);
    r.calibrate("core_size", sim.k);
    r.value("grouping_error", sim.grouping_error);
    r.value("rounding_error", sim.rounding_error);
    r.check(Check::le("simulation_total_error", sim.total_error, 0.0, 1e-9));
    r.check(Check::le(
        "simulation_triangle",
        sim.total_error,
        sim.grouping_error + sim.rounding_error,
        1e-9,
    ));
    let mut unreachable = 0usize;
    for (_, c) in &sim.mixture {
        if !is_reachable(&rho, &base, c)? {
            unreachable += 1;
        }
    }
    r.check(Check::le("unreachable_components", unreachable as f64, 0.0, 0.0));

    let f = TestFunction::all_equal(n);
    let ind = indistinguishability_gap(&law, &sim.mixture, &f)?;
    r.value("all_equal_adaptive", ind.adaptive_value);
    r.value("all_equal_mixture", ind.mixture_value);
    r.check(Check::le("indistinguishability_gap", ind.gap, ind.tv, 1e-12));
    let obl = oblivious_max(&f, &rho, &base, cfg.resolution, &cfg.caps)?;
    r.value("all_equal_oblivious_max", obl.value);
    Ok(r)
}
