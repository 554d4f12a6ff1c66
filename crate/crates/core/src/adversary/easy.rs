//! Simulating an oblivious corruption with an adaptive one.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::adversary::budget::Spend;
use crate::adversary::AdaptiveStrategy;
use crate::costs::CostFunction;
use crate::error::{Error, Result};
use crate::probkit::{optimal_coupling, Dist, FEASIBILITY_SLACK};

/// Sample size `ceil(c n^4 (ln d)^2 / eps^4)` at which adaptive and oblivious
/// values are guaranteed to be `eps`-close for degree-`d` costs.
pub fn recommended_m(n: usize, d: usize, eps: f64, c: f64) -> Result<usize> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("degree must be at least 2, got {d}")));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("constant must be positive, got {c}")));
    }
    if !(eps > 0.0) || n == 0 {
        return Err(Error::InvalidParameter("need eps > 0 and n >= 1".into()));
    }
    let ln_d = (d as f64).ln();
    let m = (c * (n as f64).powi(4) * ln_d * ln_d / eps.powi(4)).ceil();
    if !m.is_finite() || m > usize::MAX as f64 {
        return Err(Error::InvalidParameter("recommended sample size overflows".into()));
    }
    Ok(m as usize)
}

/// Fewest entries to drop, largest first, so the rest sums to at most `budget`.
pub fn delta_removals(costs: &[f64], budget: f64) -> Result<usize> {
    if let Some(c) = costs.iter().find(|c| c.is_nan() || **c < 0.0) {
        return Err(Error::InvalidParameter(format!("cost {c} is not non-negative")));
    }
    let mut sorted = costs.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut total: f64 = sorted.iter().sum();
    let mut removed = 0;
    for c in sorted {
        if total <= budget {
            break;
        }
        total -= c;
        removed += 1;
    }
    Ok(removed)
}

/// `n` entries of `s` drawn uniformly without replacement, in draw order.
pub fn subsample_filter<T: Clone, R: Rng + ?Sized>(s: &[T], n: usize, rng: &mut R) -> Result<Vec<T>> {
    if n > s.len() {
        return Err(Error::InvalidParameter(format!("cannot draw {n} of {} points", s.len())));
    }
    let mut idx: Vec<usize> = (0..s.len()).collect();
    for i in 0..n {
        let j = rng.gen_range(i..s.len());
        idx.swap(i, j);
    }
    Ok(idx[..n].iter().map(|&i| s[i].clone()).collect())
}

/// One application of the simulator to a clean sample.
#[derive(Clone, Debug, PartialEq)]
pub struct CorruptionOutcome {
    pub sample: Vec<usize>,
    /// Points reverted to their clean value to respect the budget.
    pub reverted: usize,
    /// Average cost of the returned sample.
    pub average_cost: f64,
}

/// Corrupts each point independently through an optimal coupling of `base`
/// and `target`, then reverts the most expensive changes until the average
/// cost is at most one.
#[derive(Clone, Debug)]
pub struct ObliviousSimulator {
    rho: CostFunction,
    kernels: Vec<Option<Vec<f64>>>,
}

impl ObliviousSimulator {
    pub fn new(rho: &CostFunction, base: &Dist, target: &Dist) -> Result<ObliviousSimulator> {
        let coupling = optimal_coupling(base, target, rho)?
            .ok_or_else(|| Error::Infeasible("target is unreachable from base".into()))?;
        let cost = coupling.expected_cost(rho);
        if cost > 1.0 + FEASIBILITY_SLACK {
            return Err(Error::Infeasible(format!("target needs expected cost {cost} > 1")));
        }
        let kernels = (0..base.len()).map(|x| coupling.conditional(x)).collect();
        Ok(ObliviousSimulator {
            rho: rho.clone(),
            kernels,
        })
    }

    pub fn corrupt<R: Rng + ?Sized>(&self, s: &[usize], rng: &mut R) -> CorruptionOutcome {
        let m = s.len();
        let mut t: Vec<usize> = s
            .iter()
            .map(|&x| match &self.kernels[x] {
                Some(k) => draw(k, rng),
                None => x,
            })
            .collect();
        let costs: Vec<f64> = s.iter().zip(&t).map(|(&x, &y)| self.rho.get(x, y).as_f64()).collect();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| costs[b].total_cmp(&costs[a]).then(a.cmp(&b)));
        let mut reverted = delta_removals(&costs, m as f64).expect("cost entries are non-negative");
        for &i in &order[..reverted] {
            t[i] = s[i];
        }
        // float sums can disagree with exact ones at the boundary
        while !self.spend(s, &t).within(m) && reverted < m {
            t[order[reverted]] = s[order[reverted]];
            reverted += 1;
        }
        let average_cost = self.spend(s, &t).as_f64() / m.max(1) as f64;
        CorruptionOutcome {
            sample: t,
            reverted,
            average_cost,
        }
    }

    fn spend(&self, s: &[usize], t: &[usize]) -> Spend {
        crate::adversary::budget::total_cost(&self.rho, s, t).expect("coupling avoids infinite arcs")
    }
}

fn draw<R: Rng + ?Sized>(p: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &v) in p.iter().enumerate() {
        acc += v;
        if u < acc {
            return i;
        }
    }
    p.iter().rposition(|&v| v > 0.0).unwrap_or(0)
}

/// An adaptive strategy whose corrupted samples look like draws from `target`.
pub fn adaptive_simulates_oblivious(rho: &CostFunction, base: &Dist, target: &Dist) -> Result<AdaptiveStrategy> {
    let sim = ObliviousSimulator::new(rho, base, target)?;
    Ok(AdaptiveStrategy::Callback(Arc::new(move |s: &[usize], rng: &mut ChaCha8Rng| {
        sim.corrupt(s, rng).sample
    })))
}

/// Statistics of the revert counts over repeated simulator runs.
#[derive(Clone, Debug, PartialEq)]
pub struct RemovalBudgetReport {
    pub trials: usize,
    pub sample_size: usize,
    pub mean: f64,
    pub std_err: f64,
    /// `(v, observed P[reverted >= v], 2/v + 4m/v^2)`.
    pub tails: Vec<(f64, f64, f64)>,
}

impl RemovalBudgetReport {
    pub fn from_counts(counts: &[usize], sample_size: usize, thresholds: &[f64]) -> RemovalBudgetReport {
        let t = counts.len().max(1) as f64;
        let mean = counts.iter().sum::<usize>() as f64 / t;
        let var = counts.iter().map(|&c| (c as f64 - mean).powi(2)).sum::<f64>() / (t - 1.0).max(1.0);
        let m = sample_size as f64;
        let tails = thresholds
            .iter()
            .map(|&v| {
                let freq = counts.iter().filter(|&&c| c as f64 >= v).count() as f64 / t;
                (v, freq, 2.0 / v + 4.0 * m / (v * v))
            })
            .collect();
        RemovalBudgetReport {
            trials: counts.len(),
            sample_size,
            mean,
            std_err: (var / t).sqrt(),
            tails,
        }
    }

    /// `5 sqrt(m)`.
    pub fn mean_bound(&self) -> f64 {
        5.0 * (self.sample_size as f64).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::{build_strong, Rational};
    use crate::probkit::Domain;
    use rand::SeedableRng;

    #[test]
    fn recommended_sizes() {
        assert_eq!(recommended_m(2, 2, 1.0, 1.0).unwrap(), 8);
        assert!(recommended_m(2, 1, 1.0, 1.0).is_err());
        assert!(recommended_m(2, 2, 1.0, 0.0).is_err());
    }

    #[test]
    fn removals_drop_largest_first() {
        assert_eq!(delta_removals(&[5.0, 1.0, 1.0, 1.0], 4.0).unwrap(), 1);
        assert_eq!(delta_removals(&[1.0, 1.0], 4.0).unwrap(), 0);
        assert!(delta_removals(&[-1.0], 4.0).is_err());
    }

    #[test]
    fn subsample_draws_distinct_positions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s: Vec<usize> = (0..10).collect();
        let mut t = subsample_filter(&s, 10, &mut rng).unwrap();
        t.sort();
        assert_eq!(t, s);
        assert!(subsample_filter(&s, 11, &mut rng).is_err());
    }

    #[test]
    fn simulator_respects_budget() {
        let d = Domain::range(2).unwrap();
        let rho = build_strong(&d, Rational::new(1, 2)).unwrap();
        let base = Dist::uniform(&d);
        let sim = ObliviousSimulator::new(&rho, &base, &Dist::point(&d, 1).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let s: Vec<usize> = (0..40).map(|_| rng.gen_range(0..2)).collect();
            let out = sim.corrupt(&s, &mut rng);
            assert!(out.average_cost <= 1.0);
            let zeros = s.iter().filter(|&&x| x == 0).count();
            assert_eq!(out.reverted, zeros.saturating_sub(20));
        }
    }
}
