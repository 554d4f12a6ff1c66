//! Stability of the nearest reachable distribution and the information
//! bound on how far group goals stray from the base distribution.

use crate::costs::CostFunction;
use crate::error::{Error, Result};
use crate::mc::{run_trials, MeanEstimate};
use crate::probkit::{nearest_oblivious, optimal_coupling, tv_coupling, tv_distance, Dist, JointDist};

/// Given `d1_corrupt` reachable from `d1`, builds a distribution reachable
/// from `d2` within `tv(d1, d2)` of `d1_corrupt`: couple `d1` with `d2`
/// optimally in total variation, follow the corruption where the two agree
/// and stay at the `d2` point where they differ.
pub fn lipschitz_transfer(rho: &CostFunction, d1: &Dist, d2: &Dist, d1_corrupt: &Dist) -> Result<Dist> {
    let pair = tv_coupling(d1, d2)?;
    let corr = optimal_coupling(d1, d1_corrupt, rho)?
        .ok_or_else(|| Error::Infeasible("corruption is unreachable from d1".into()))?;
    let n = d1.len();
    let mut out = vec![0.0; n];
    for x1 in 0..n {
        for x2 in 0..n {
            let w = pair.mass(x1, x2);
            if w <= 0.0 {
                continue;
            }
            if x1 == x2 {
                let k = corr.conditional(x1).expect("x1 carries mass under d1");
                for (o, kv) in out.iter_mut().zip(k) {
                    *o += w * kv;
                }
            } else {
                out[x2] += w;
            }
        }
    }
    Dist::from_weights(d1.domain(), out)
}

/// `sqrt(ln |G| / (2 m))`.
pub fn deviation_bound(groups: usize, m: usize) -> f64 {
    ((groups as f64).ln() / (2.0 * m as f64)).sqrt()
}

/// `E_g dist(goal(g))` where `goal(g) = E[Unif(S) | label(S) = g]` under the
/// sample law `law`, and `dist` is the distance from `base` or, when a cost
/// function is given, the distance to the nearest distribution reachable
/// from `base`.
pub fn labeled_goal_deviation(
    law: &JointDist,
    base: &Dist,
    rho: Option<&CostFunction>,
    groups: usize,
    label: impl Fn(&[usize]) -> usize,
) -> Result<f64> {
    let q = law.domain().len();
    let m = law.arity() as f64;
    let mut mass = vec![0.0; groups];
    let mut sums = vec![vec![0.0; q]; groups];
    let mut bad = None;
    law.for_each_positive(|t, p| {
        let g = label(t);
        if g >= groups {
            bad = Some(g);
            return;
        }
        mass[g] += p;
        for &x in t {
            sums[g][x] += p / m;
        }
    });
    if let Some(g) = bad {
        return Err(Error::InvalidParameter(format!("label {g} is not below {groups}")));
    }
    let mut total = 0.0;
    for (w, s) in mass.iter().zip(sums) {
        if *w <= 0.0 {
            continue;
        }
        let goal = Dist::from_weights(law.domain(), s)?;
        let d = match rho {
            Some(rho) => nearest_oblivious(rho, base, &goal)?.1,
            None => tv_distance(base, &goal)?,
        };
        total += w * d;
    }
    Ok(total)
}

/// Monte Carlo version of [`labeled_goal_deviation`] with no corruption, for
/// sample sizes too large to tabulate. Goals are estimated from all trials;
/// the standard error comes from splitting the trials into batches.
pub fn labeled_goal_deviation_mc(
    base: &Dist,
    m: usize,
    groups: usize,
    label: impl Fn(&[usize]) -> usize + Sync,
    trials: usize,
    batches: usize,
    seed: u64,
) -> Result<MeanEstimate> {
    let q = base.len();
    let draws = run_trials(seed, trials, |rng, _| {
        let s: Vec<usize> = (0..m).map(|_| base.sample(rng)).collect();
        let g = label(&s);
        let mut counts = vec![0u32; q];
        for &x in &s {
            counts[x] += 1;
        }
        (g, counts)
    });
    if let Some((g, _)) = draws.iter().find(|(g, _)| *g >= groups) {
        return Err(Error::InvalidParameter(format!("label {g} is not below {groups}")));
    }
    let estimate = |part: &[(usize, Vec<u32>)]| -> f64 {
        let mut hits = vec![0usize; groups];
        let mut sums = vec![vec![0.0; q]; groups];
        for (g, c) in part {
            hits[*g] += 1;
            for (s, &v) in sums[*g].iter_mut().zip(c) {
                *s += v as f64;
            }
        }
        let t = part.len() as f64;
        let mut total = 0.0;
        for (h, s) in hits.iter().zip(&sums) {
            if *h == 0 {
                continue;
            }
            let norm = (*h * m) as f64;
            let tv: f64 = 0.5 * s.iter().zip(base.probs()).map(|(a, p)| (a / norm - p).abs()).sum::<f64>();
            total += *h as f64 / t * tv;
        }
        total
    };
    let mean = estimate(&draws);
    let b = batches.max(2);
    let size = draws.len() / b;
    let parts: Vec<f64> = (0..b).map(|i| estimate(&draws[i * size..(i + 1) * size])).collect();
    let spread = MeanEstimate::from_values(&parts);
    Ok(MeanEstimate {
        mean,
        std_err: spread.std_err,
        trials,
    })
}
