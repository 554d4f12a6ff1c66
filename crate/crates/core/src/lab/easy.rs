//! An adaptive adversary imitating an oblivious one on large samples.

use crate::adversary::{subsample_filter, ObliviousSimulator, RemovalBudgetReport};
use crate::costs::build_strong;
use crate::error::{Error, Result};
use crate::lab::config::ExperimentConfig;
use crate::lab::report::{Check, Relation, Report};
use crate::mc::{run_trials, sub_seed, MeanEstimate};
use crate::probkit::{nearest_oblivious, Dist, Domain};

/// `ceil(25 n^2 / eps^2)`: large enough that the imitation is within `eps`.
pub fn imitation_sample_size(n: usize, eps: f64) -> Result<usize> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {eps}")));
    }
    Ok((25.0 * (n * n) as f64 / (eps * eps)).ceil() as usize)
}

pub fn run_easy_direction(cfg: &ExperimentConfig) -> Result<Report> {
    let k = cfg.domain_size;
    let n = cfg.n;
    let d = Domain::range(k)?;
    let rho = build_strong(&d, cfg.eta)?;
    let base = Dist::uniform(&d);
    let last = k - 1;
    let (target, _) = nearest_oblivious(&rho, &base, &Dist::point(&d, last)?)?;
    let m = match cfg.m {
        Some(m) => m,
        None => imitation_sample_size(n, cfg.epsilon)?,
    };
    if m < n {
        return Err(Error::InvalidParameter(format!("need m >= n, got m={m}, n={n}")));
    }
    let sim = ObliviousSimulator::new(&rho, &base, &target)?;
    let mut r = Report::new("easy-direction", cfg.entries());
    r.calibrate("m", m);

    let exact = target.prob(last).powi(n as i32);
    let runs = run_trials(sub_seed(cfg.seed, 1), cfg.trials, |rng, _| {
        let s: Vec<usize> = (0..m).map(|_| base.sample(rng)).collect();
        let out = sim.corrupt(&s, rng);
        let sub = subsample_filter(&out.sample, n, rng).expect("m >= n");
        let hit = sub.iter().all(|&x| x == last);
        (hit, out.reverted, out.average_cost)
    });
    let est = MeanEstimate::from_bools(&runs.iter().map(|x| x.0).collect::<Vec<_>>());
    r.value("oblivious_value", exact);
    r.value("adaptive_value", est.mean);
    r.check(Check::mc(
        "imitation_gap",
        (est.mean - exact).abs(),
        Relation::Le,
        cfg.epsilon,
        est.std_err,
        3.0,
    ));

    let counts: Vec<usize> = runs.iter().map(|x| x.1).collect();
    let sm = (m as f64).sqrt();
    let removal = RemovalBudgetReport::from_counts(&counts, m, &[sm, 2.0 * sm]);
    r.check(Check::mc(
        "mean_reverted",
        removal.mean,
        Relation::Le,
        removal.mean_bound(),
        removal.std_err,
        3.0,
    ));
    let t = counts.len() as f64;
    for (i, (_, freq, bound)) in removal.tails.iter().enumerate() {
        let se = (freq * (1.0 - freq) / t).sqrt();
        r.check(Check::mc(format!("reverted_tail_{}", i + 1), *freq, Relation::Le, *bound, se, 3.0));
    }
    let over = runs.iter().filter(|x| x.2 > 1.0 + 1e-9).count();
    r.check(Check::le("budget_violations", over as f64, 0.0, 0.0));

    let identity = ObliviousSimulator::new(&rho, &base, &base)?;
    let changed = run_trials(sub_seed(cfg.seed, 2), cfg.trials.min(1000), |rng, _| {
        let s: Vec<usize> = (0..m).map(|_| base.sample(rng)).collect();
        identity.corrupt(&s, rng).sample != s
    });
    let changed = changed.iter().filter(|&&c| c).count();
    r.check(Check::le("identity_changes", changed as f64, 0.0, 0.0));
    Ok(r)
}
