//! Support size testing: a collision tester beats oblivious removal, while
//! adaptive duplicate removal hides the support size.

use rand::Rng;

use crate::adversary::{corrupted_count, subsample_filter};
use crate::error::{Error, Result};
use crate::lab::config::ExperimentConfig;
use crate::lab::report::{Check, Relation, Report};
use crate::mc::{run_trials, sub_seed, MeanEstimate};
use num_traits::ToPrimitive;

/// Number of equal pairs in `s`.
pub fn collision_count(s: &[u32]) -> usize {
    let mut v = s.to_vec();
    v.sort_unstable();
    let mut total = 0;
    let mut run = 1;
    for i in 1..=v.len() {
        if i < v.len() && v[i] == v[i - 1] {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total
}

/// Indices whose value occurs more than once in `s`.
pub fn colliding_indices(s: &[u32]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by_key(|&i| s[i]);
    let mut out = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && s[order[j]] == s[order[i]] {
            j += 1;
        }
        if j - i > 1 {
            out.extend_from_slice(&order[i..j]);
        }
        i = j;
    }
    out.sort_unstable();
    out
}

/// Accepts "small support" when the sample has at least `threshold` collisions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CollisionTester {
    pub n: usize,
    pub threshold: usize,
}

impl CollisionTester {
    pub fn accepts(&self, s: &[u32]) -> bool {
        collision_count(s) >= self.threshold
    }
}

fn uniform_draws<R: Rng + ?Sized>(support: usize, count: usize, rng: &mut R) -> Vec<u32> {
    (0..count).map(|_| rng.gen_range(0..support as u32)).collect()
}

/// Removes every colliding point when at most `budget` points collide;
/// otherwise leaves the sample alone.
pub fn remove_duplicates(s: &[u32], budget: usize) -> (Vec<u32>, bool) {
    let bad = colliding_indices(s);
    if bad.len() > budget {
        return (s.to_vec(), false);
    }
    let kept = (0..s.len()).filter(|i| bad.binary_search(i).is_err()).map(|i| s[i]).collect();
    (kept, true)
}

const CANDIDATE_SIZES: [usize; 10] = [20, 40, 60, 80, 100, 120, 140, 160, 180, 200];
const MAX_THRESHOLD: usize = 12;

/// Picks the smallest sample size and a threshold separating clean draws
/// from the two supports with error at most `err` on each side.
pub fn calibrate_tester(
    small: usize,
    large: usize,
    trials: usize,
    err: f64,
    seed: u64,
) -> Result<(CollisionTester, f64, f64)> {
    for (i, &n) in CANDIDATE_SIZES.iter().enumerate() {
        let s = run_trials(sub_seed(seed, 2 * i as u64), trials, |rng, _| {
            collision_count(&uniform_draws(small, n, rng))
        });
        let l = run_trials(sub_seed(seed, 2 * i as u64 + 1), trials, |rng, _| {
            collision_count(&uniform_draws(large, n, rng))
        });
        let rate = |v: &[usize], t: usize| v.iter().filter(|&&c| c >= t).count() as f64 / trials as f64;
        for t in 1..=MAX_THRESHOLD {
            let (a, b) = (rate(&s, t), rate(&l, t));
            if a >= 1.0 - err && b <= err {
                return Ok((CollisionTester { n, threshold: t }, a, b));
            }
        }
    }
    Err(Error::Infeasible(format!(
        "no collision tester with at most {} draws separates supports {small} and {large}",
        CANDIDATE_SIZES[CANDIDATE_SIZES.len() - 1]
    )))
}

pub fn run_support_size(cfg: &ExperimentConfig) -> Result<Report> {
    let (small, large) = (cfg.support_small, cfg.support_large);
    if small < 2 || large <= small {
        return Err(Error::InvalidParameter(format!("need 2 <= small < large, got {small}, {large}")));
    }
    let eta = cfg.eta.to_f64().unwrap_or(f64::NAN);
    let mut r = Report::new("support-size", cfg.entries());
    let cal_trials = (cfg.trials / 4).max(1000);
    let (tester, cal_s, cal_l) = calibrate_tester(small, large, cal_trials, 0.01, sub_seed(cfg.seed, 100))?;
    r.calibrate("n", tester.n);
    r.calibrate("threshold", tester.threshold);
    r.value("calibration_accept_small", cal_s);
    r.value("calibration_accept_large", cal_l);
    r.value("n_over_sqrt_large", tester.n as f64 / (large as f64).sqrt());

    // Oblivious removal can only condition on a subset of mass >= 1 - eta.
    let fractions: Vec<usize> = (1..=4).filter(|j| *j as f64 / 4.0 >= 1.0 - eta - 1e-12).collect();
    let accept_rate = |support: usize, tag: u64| {
        let hits = run_trials(sub_seed(cfg.seed, tag), cfg.trials, |rng, _| {
            tester.accepts(&uniform_draws(support, tester.n, rng))
        });
        MeanEstimate::from_bools(&hits)
    };
    let mut worst_small: Option<MeanEstimate> = None;
    let mut worst_large: Option<MeanEstimate> = None;
    for &j in &fractions {
        let s = accept_rate((small * j / 4).max(1), 200 + j as u64);
        let l = accept_rate((large * j / 4).max(1), 300 + j as u64);
        r.value(format!("oblivious_accept_small_{j}_quarters"), s.mean);
        r.value(format!("oblivious_accept_large_{j}_quarters"), l.mean);
        if worst_small.map_or(true, |w| s.mean < w.mean) {
            worst_small = Some(s);
        }
        if worst_large.map_or(true, |w| l.mean > w.mean) {
            worst_large = Some(l);
        }
    }
    let (ws, wl) = (worst_small.expect("full support is always listed"), worst_large.expect("full support is always listed"));
    r.check(Check::mc("oblivious_accept_small", ws.mean, Relation::Ge, 0.95, ws.std_err, 3.0));
    r.check(Check::mc("oblivious_accept_large", wl.mean, Relation::Le, 0.05, wl.std_err, 3.0));

    let m = 2 * tester.n;
    let budget = corrupted_count(cfg.eta, m);
    let adaptive = |support: usize, tag: u64| {
        let runs = run_trials(sub_seed(cfg.seed, tag), cfg.trials, |rng, _| {
            let s = uniform_draws(support, m, rng);
            let (kept, removed) = remove_duplicates(&s, budget);
            let sub = subsample_filter(&kept, tester.n, rng).expect("at least n points survive");
            (tester.accepts(&sub), removed)
        });
        let acc = MeanEstimate::from_bools(&runs.iter().map(|x| x.0).collect::<Vec<_>>());
        let removed = runs.iter().filter(|x| x.1).count() as f64 / runs.len().max(1) as f64;
        (acc, removed)
    };
    if m - budget < tester.n {
        return Err(Error::InvalidParameter(format!("removal budget {budget} leaves fewer than n draws")));
    }
    let (as_, rs) = adaptive(small, 400);
    let (al, rl) = adaptive(large, 401);
    r.value("adaptive_accept_small", as_.mean);
    r.value("adaptive_accept_large", al.mean);
    r.value("adaptive_removal_rate_small", rs);
    r.value("adaptive_removal_rate_large", rl);
    let diff = as_.minus(&al);
    r.check(Check::mc("adaptive_accept_difference", diff.mean.abs(), Relation::Le, 0.05, diff.std_err, 3.0));
    r.check(Check::mc("adaptive_accept_small", as_.mean, Relation::Le, 0.05, as_.std_err, 3.0));

    // few collisions when the sample is small relative to the support
    let k = cfg.prop_k;
    let n_small = (cfg.epsilon * k as f64 / 2.0).floor() as usize;
    if n_small == 0 {
        return Err(Error::InvalidParameter("epsilon * prop_k / 2 must be at least 1".into()));
    }
    let few = run_trials(sub_seed(cfg.seed, 500), cfg.trials, |rng, _| {
        colliding_indices(&uniform_draws(k, 2 * n_small, rng)).len()
    });
    let ok = MeanEstimate::from_bools(&few.iter().map(|&c| c <= n_small).collect::<Vec<_>>());
    let mean_frac = few.iter().sum::<usize>() as f64 / (few.len() * 2 * n_small) as f64;
    r.value("few_collisions_n", n_small as f64);
    r.value("colliding_fraction_mean", mean_frac);
    r.value("colliding_fraction_bound", 2.0 * n_small as f64 / k as f64);
    r.check(Check::mc("few_collisions", ok.mean, Relation::Ge, 1.0 - cfg.epsilon, ok.std_err, 3.0));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collisions_count_pairs() {
        assert_eq!(collision_count(&[1, 2, 1, 1, 3, 3]), 4);
        assert_eq!(colliding_indices(&[1, 2, 1, 1, 3, 3]), vec![0, 2, 3, 4, 5]);
        assert_eq!(remove_duplicates(&[5, 1, 5, 2], 2), (vec![1, 2], true));
        assert_eq!(remove_duplicates(&[5, 1, 5, 2], 1), (vec![5, 1, 5, 2], false));
    }
}
