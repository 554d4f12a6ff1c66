//! Budget degree lower bound: points of a cheap ball labeled by sign
//! vectors, and a test asking every point for a correlated partner.

use rand::Rng;

use crate::adversary::subsample_filter;
use crate::error::{Error, Result};
use crate::lab::config::ExperimentConfig;
use crate::lab::report::{Check, Relation, Report};
use crate::mc::{run_trials, sub_seed, MeanEstimate};

/// The ball is `{0, 1}^dim` read as sign vectors; the special point is 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationGame {
    pub dim: usize,
    pub tau: i64,
    /// Probability of the special point beyond its uniform share.
    pub special_mass: f64,
    /// Cost of moving the special point anywhere in the ball.
    pub move_cost: f64,
}

impl CorrelationGame {
    pub fn inner(&self, u: u32, v: u32) -> i64 {
        self.dim as i64 - 2 * i64::from((u ^ v).count_ones())
    }

    /// 1 when every point has another point with inner product at least tau.
    pub fn accepts(&self, s: &[u32]) -> bool {
        (0..s.len()).all(|i| (0..s.len()).any(|j| j != i && self.inner(s[i], s[j]) >= self.tau))
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        if rng.gen::<f64>() < self.special_mass {
            0
        } else {
            rng.gen_range(0..1u32 << self.dim)
        }
    }

    /// Replaces the draws that came from the special-point atom with the ball
    /// point correlated with the most remaining points, if the budget allows.
    pub fn corrupt(&self, s: &[u32], special: &[bool]) -> Vec<u32> {
        let e = special.iter().filter(|&&b| b).count();
        if e == 0 || e as f64 * self.move_cost > s.len() as f64 + 1e-9 {
            return s.to_vec();
        }
        let clean: Vec<u32> = s.iter().zip(special).filter(|(_, &b)| !b).map(|(&x, _)| x).collect();
        // points that already have a clean partner need no help
        let paired: Vec<bool> = (0..clean.len())
            .map(|i| (0..clean.len()).any(|j| j != i && self.inner(clean[i], clean[j]) >= self.tau))
            .collect();
        let mut best = (0usize, 0u32);
        for v in 0..1u32 << self.dim {
            let cover = clean
                .iter()
                .zip(&paired)
                .filter(|(&u, &p)| p || self.inner(u, v) >= self.tau)
                .count();
            if cover > best.0 {
                best = (cover, v);
            }
        }
        s.iter().zip(special).map(|(&x, &b)| if b { best.1 } else { x }).collect()
    }
}

struct Rates {
    clean: MeanEstimate,
    adaptive: MeanEstimate,
    identity: MeanEstimate,
    in_window: f64,
}

fn measure(game: &CorrelationGame, n: usize, m: usize, c: f64, trials: usize, seed: u64) -> Rates {
    let clean = run_trials(sub_seed(seed, 1), trials, |rng, _| {
        let s: Vec<u32> = (0..n).map(|_| game.draw(rng)).collect();
        game.accepts(&s)
    });
    let runs = run_trials(sub_seed(seed, 2), trials, |rng, _| {
        let mut s = Vec::with_capacity(m);
        let mut special = Vec::with_capacity(m);
        for _ in 0..m {
            let atom = rng.gen::<f64>() < game.special_mass;
            special.push(atom);
            s.push(if atom { 0 } else { rng.gen_range(0..1u32 << game.dim) });
        }
        let e = special.iter().filter(|&&b| b).count() as f64;
        let t = game.corrupt(&s, &special);
        let a = game.accepts(&subsample_filter(&t, n, rng).expect("m >= n"));
        let i = game.accepts(&subsample_filter(&s, n, rng).expect("m >= n"));
        let window = e >= m as f64 * c / 4.0 && e <= m as f64 * c;
        (a, i, window)
    });
    Rates {
        clean: MeanEstimate::from_bools(&clean),
        adaptive: MeanEstimate::from_bools(&runs.iter().map(|x| x.0).collect::<Vec<_>>()),
        identity: MeanEstimate::from_bools(&runs.iter().map(|x| x.1).collect::<Vec<_>>()),
        in_window: runs.iter().filter(|x| x.2).count() as f64 / trials.max(1) as f64,
    }
}

/// `min(1/b, 1 - 1/(1 + delta))`.
pub fn special_fraction(b: f64, delta: f64) -> f64 {
    (1.0 / b).min(1.0 - 1.0 / (1.0 + delta))
}

pub fn run_degree_lb(cfg: &ExperimentConfig) -> Result<Report> {
    let (d, n) = (cfg.dim, cfg.n);
    if d == 0 || d > 20 {
        return Err(Error::InvalidParameter(format!("dim must be in 1..=20, got {d}")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter("the test needs n >= 2".into()));
    }
    if !(cfg.b > 0.0 && cfg.delta > 0.0) {
        return Err(Error::InvalidParameter("b and delta must be positive".into()));
    }
    let c = special_fraction(cfg.b, cfg.delta);
    // moving the special point costs at least 1 + delta whatever b says
    let move_cost = cfg.b.max(1.0 + cfg.delta);
    let game = |tau| CorrelationGame {
        dim: d,
        tau,
        special_mass: c / 2.0,
        move_cost,
    };
    let mut r = Report::new("degree-lb", cfg.entries());
    r.value("special_fraction", c);
    r.value("move_cost", move_cost);

    let taus: Vec<i64> = match cfg.tau {
        Some(t) => vec![t],
        None => (1..d as i64).filter(|t| (d as i64 - t) % 2 == 0).collect(),
    };
    let ms: Vec<usize> = match cfg.m {
        Some(m) => vec![m],
        None => vec![n + 1, n + 2, 2 * n, 3 * n, 4 * n],
    };
    if ms.iter().any(|&m| m < n) {
        return Err(Error::InvalidParameter("need m >= n".into()));
    }
    let cal_trials = (cfg.trials / 10).max(500);
    let mut best: Option<(f64, i64, usize)> = None;
    for &tau in &taus {
        for &m in &ms {
            let rates = measure(&game(tau), n, m, c, cal_trials, sub_seed(cfg.seed, 1000 + tau as u64 * 64 + m as u64));
            r.value(format!("calibration.tau_{tau}.m_{m}.clean"), rates.clean.mean);
            r.value(format!("calibration.tau_{tau}.m_{m}.adaptive"), rates.adaptive.mean);
            if rates.clean.mean > 0.1 {
                continue;
            }
            let sep = rates.adaptive.mean - rates.clean.mean;
            if best.map_or(true, |b| sep > b.0) {
                best = Some((sep, tau, m));
            }
        }
    }
    let (_, tau, m) = best.ok_or_else(|| {
        Error::Infeasible(format!("no threshold keeps clean acceptance at most 0.1 with d={d}, n={n}"))
    })?;
    r.calibrate("tau", tau);
    r.calibrate("m", m);

    let rates = measure(&game(tau), n, m, c, cfg.trials, sub_seed(cfg.seed, 7));
    r.value("clean_accept", rates.clean.mean);
    r.value("adaptive_accept", rates.adaptive.mean);
    r.value("identity_accept", rates.identity.mean);
    r.value("special_count_in_window", rates.in_window);
    r.check(Check::mc("adaptive_accept", rates.adaptive.mean, Relation::Ge, 0.9, rates.adaptive.std_err, 3.0));
    r.check(Check::mc("clean_accept", rates.clean.mean, Relation::Le, 0.1, rates.clean.std_err, 3.0));
    let sep = rates.adaptive.minus(&rates.clean);
    r.check(Check::mc("separation", sep.mean, Relation::Ge, 0.6, sep.std_err, 3.0));
    let id = rates.identity.minus(&rates.clean);
    r.check(Check::mc("identity_matches_clean", id.mean.abs(), Relation::Le, 0.0, id.std_err, 4.0));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_products_of_sign_vectors() {
        let g = CorrelationGame {
            dim: 4,
            tau: 2,
            special_mass: 0.1,
            move_cost: 1.5,
        };
        assert_eq!(g.inner(0b0000, 0b0000), 4);
        assert_eq!(g.inner(0b0000, 0b1111), -4);
        assert_eq!(g.inner(0b0011, 0b0001), 2);
        assert!(g.accepts(&[0b0000, 0b0001, 0b0011]));
        assert!(!g.accepts(&[0b0000, 0b1111]));
    }

    #[test]
    fn corruption_respects_budget() {
        let g = CorrelationGame {
            dim: 4,
            tau: 2,
            special_mass: 0.1,
            move_cost: 1.5,
        };
        let s = [0, 0, 0, 5];
        assert_eq!(g.corrupt(&s, &[true, true, true, false]), s.to_vec());
        let t = g.corrupt(&s, &[true, false, false, false]);
        assert_eq!(&t[1..], &s[1..]);
    }
}
