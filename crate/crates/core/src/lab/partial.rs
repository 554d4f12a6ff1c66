//! Additive corruption models of decreasing adaptivity, compared exactly and
//! by simulation.

use rand::Rng;

use crate::adversary::{
    binomial_max, corrupted_count, malicious_max, malicious_run, noniid_max, noniid_run, oblivious_additive_max,
    adaptive_additive_max, subsample_filter, SubsampledTest,
};
use crate::error::{Error, Result};
use crate::lab::config::ExperimentConfig;
use crate::lab::conversions::seeded_tests;
use crate::lab::report::{Check, Relation, Report};
use crate::mc::{run_trials, sub_seed, MeanEstimate};
use crate::probkit::{Dist, Domain};
use num_traits::ToPrimitive;

/// Draws `n` indices uniformly from `m`; if they repeat, draws `n`
/// distinct ones instead. Returns whether a redraw was needed and whether
/// the count below `cut` changed.
pub fn resample_coupling<R: Rng + ?Sized>(n: usize, m: usize, cut: usize, eta: f64, rng: &mut R) -> (bool, bool) {
    let z: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
    let idx: Vec<usize> = z.iter().map(|u| ((u * m as f64) as usize).min(m - 1)).collect();
    let mut sorted = idx.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let redraw = sorted.len() < n;
    let picks = if redraw {
        let all: Vec<usize> = (0..m).collect();
        subsample_filter(&all, n, rng).expect("n <= m")
    } else {
        idx
    };
    let a = z.iter().filter(|&&u| u < eta).count();
    let b = picks.iter().filter(|&&i| i < cut).count();
    (redraw, a != b)
}

pub fn run_partial_adaptive(cfg: &ExperimentConfig) -> Result<Report> {
    let (k, n) = (cfg.domain_size, cfg.n);
    let m = cfg.m.unwrap_or(8);
    if m < n {
        return Err(Error::InvalidParameter(format!("need m >= n, got m={m}, n={n}")));
    }
    let d = Domain::range(k)?;
    let base = Dist::uniform(&d);
    let eta = cfg.eta;
    let e = eta.to_f64().unwrap_or(f64::NAN);
    let mut r = Report::new("partial-adaptive", cfg.entries());
    let coupling = 1.0 / m as f64 + (n * n) as f64 / m as f64;
    r.value("coupling_bound", coupling);

    let tests = seeded_tests(cfg.functions, n, k, sub_seed(cfg.seed, 5));
    let (mut mal_bin, mut obl_mal, mut nid_add, mut obl_nid) =
        (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (i, f) in tests.iter().enumerate() {
        let (_, obl) = oblivious_additive_max(f, &base, eta, cfg.resolution, &cfg.caps)?;
        let mal = malicious_max(f, &base, eta, m, &cfg.caps)?;
        let bin = binomial_max(f, &base, eta, m, &cfg.caps)?;
        let nid = noniid_max(f, &base, eta, m, &cfg.caps)?;
        let add = adaptive_additive_max(f, &base, eta, m, &cfg.caps)?;
        for (name, v) in [("oblivious", obl), ("malicious", mal), ("binomial", bin), ("noniid", nid), ("additive", add)] {
            r.value(format!("f{i}.{name}"), v);
        }
        mal_bin = mal_bin.max(mal - bin);
        obl_mal = obl_mal.max(obl - mal);
        nid_add = nid_add.max(nid - add);
        obl_nid = obl_nid.max(obl - nid - coupling);
    }
    r.check(Check::le("malicious_minus_binomial", mal_bin, 0.0, 1e-12));
    r.check(Check::le("oblivious_minus_malicious", obl_mal, 0.0, 1e-9));
    r.check(Check::le("noniid_minus_additive", nid_add, 0.0, 1e-12));
    r.check(Check::le("oblivious_minus_noniid_minus_coupling", obl_nid, 0.0, 1e-9));

    // simulated runs against their exact values, adversary always plays point k-1
    let f = &tests[0];
    let g = SubsampledTest::new(f, k, n, &cfg.caps)?;
    let outlier = k - 1;
    let mixed: Vec<f64> = base
        .probs()
        .iter()
        .enumerate()
        .map(|(x, p)| (1.0 - e) * p + if x == outlier { e } else { 0.0 })
        .collect();
    let mal_exact = g.iid_value(&mixed);
    let policy = |_: &[usize]| outlier;
    let mal_runs = run_trials(sub_seed(cfg.seed, 6), cfg.trials, |rng, _| {
        let s = malicious_run(&base, eta, m, &policy, rng).expect("valid parameters");
        f.eval(&subsample_filter(&s, n, rng).expect("m >= n"))
    });
    let mal_mc = MeanEstimate::from_values(&mal_runs);
    r.value("malicious_constant_exact", mal_exact);
    r.value("malicious_constant_mc", mal_mc.mean);
    r.check(Check::mc("malicious_run_gap", (mal_mc.mean - mal_exact).abs(), Relation::Le, 0.0, mal_mc.std_err, 4.0));

    let extra = corrupted_count(eta, m);
    let chosen = vec![outlier; extra];
    let gm = SubsampledTest::new(f, k, m, &cfg.caps)?;
    let nid_exact: f64 = crate::combinatorics::compositions(m - extra, k)
        .iter()
        .map(|c| {
            let mut t = c.clone();
            t[outlier] += extra;
            crate::combinatorics::multinomial_pmf(c, base.probs()) * gm.value(&t)
        })
        .sum();
    let nid_runs = run_trials(sub_seed(cfg.seed, 7), cfg.trials, |rng, _| {
        let s = noniid_run(&base, eta, m, &chosen, rng).expect("valid parameters");
        f.eval(&subsample_filter(&s, n, rng).expect("m >= n"))
    });
    let nid_mc = MeanEstimate::from_values(&nid_runs);
    r.value("noniid_constant_exact", nid_exact);
    r.value("noniid_constant_mc", nid_mc.mean);
    r.check(Check::mc("noniid_run_gap", (nid_mc.mean - nid_exact).abs(), Relation::Le, 0.0, nid_mc.std_err, 4.0));

    let coupled = run_trials(sub_seed(cfg.seed, 8), cfg.trials, |rng, _| resample_coupling(n, m, extra, e, rng));
    let redraw = MeanEstimate::from_bools(&coupled.iter().map(|x| x.0).collect::<Vec<_>>());
    let mismatch = MeanEstimate::from_bools(&coupled.iter().map(|x| x.1).collect::<Vec<_>>());
    r.check(Check::mc("redraw_rate", redraw.mean, Relation::Le, (n * n) as f64 / m as f64, redraw.std_err, 3.0));
    r.check(Check::mc("coupling_mismatch_rate", mismatch.mean, Relation::Le, coupling, mismatch.std_err, 3.0));
    Ok(r)
}
