use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::adversary::budget::is_admissible;
use crate::adversary::feasible::{for_each_feasible, Caps};
use crate::combinatorics::{decode, encode, power};
use crate::costs::CostFunction;
use crate::error::{Error, Result};
use crate::probkit::{Dist, Domain, JointDist};

/// A deterministic corruption rule tabulated on every tuple of `X^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct StrategyTable {
    domain: Domain,
    m: usize,
    image: Vec<usize>,
}

impl StrategyTable {
    /// Tabulates `rule`, rejecting any output that is not an admissible
    /// corruption of its input.
    pub fn from_fn(
        rho: &CostFunction,
        m: usize,
        caps: &Caps,
        mut rule: impl FnMut(&[usize]) -> Result<Vec<usize>>,
    ) -> Result<StrategyTable> {
        let k = rho.domain().len();
        let cells = power(k, m);
        if cells > caps.max_states {
            return Err(Error::CapExceeded {
                what: "strategy table",
                needed: cells,
                cap: caps.max_states,
            });
        }
        let mut s = vec![0; m];
        let mut image = Vec::with_capacity(cells as usize);
        for i in 0..cells as usize {
            decode(i, k, m, &mut s);
            let t = rule(&s)?;
            if t.iter().any(|&y| y >= k) || !is_admissible(rho, &s, &t) {
                return Err(Error::Infeasible(format!("rule maps {s:?} to inadmissible {t:?}")));
            }
            image.push(encode(&t, k));
        }
        Ok(StrategyTable {
            domain: rho.domain().clone(),
            m,
            image,
        })
    }

    /// Picks a uniformly random admissible corruption for every tuple.
    pub fn random<R: Rng + ?Sized>(rho: &CostFunction, m: usize, caps: &Caps, rng: &mut R) -> Result<StrategyTable> {
        StrategyTable::from_fn(rho, m, caps, |s| {
            let mut all = Vec::new();
            for_each_feasible(rho, s, caps, |t| all.push(t.to_vec()))?;
            Ok(all.choose(rng).expect("staying put is admissible").clone())
        })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn sample_size(&self) -> usize {
        self.m
    }

    pub fn apply(&self, s: &[usize]) -> Vec<usize> {
        let k = self.domain.len();
        let mut t = vec![0; self.m];
        decode(self.image[encode(s, k)], k, self.m, &mut t);
        t
    }

    /// Law of the corrupted sample when the clean one is drawn from `base^m`.
    pub fn pushforward(&self, base: &Dist) -> Result<JointDist> {
        base.domain().ensure_same(&self.domain, "strategy pushforward")?;
        let clean = JointDist::product_power(base, self.m)?;
        let mut mass = vec![0.0; self.image.len()];
        for (i, &p) in clean.masses().iter().enumerate() {
            mass[self.image[i]] += p;
        }
        JointDist::new(&self.domain, self.m, mass)
    }
}

pub type Callback = Arc<dyn Fn(&[usize], &mut ChaCha8Rng) -> Vec<usize> + Send + Sync>;

/// A rule mapping clean samples to corrupted ones.
#[derive(Clone)]
pub enum AdaptiveStrategy {
    /// Fully tabulated, for exact computation.
    Table(StrategyTable),
    /// Evaluated on demand, for Monte Carlo runs; may use the supplied RNG.
    Callback(Callback),
}

impl AdaptiveStrategy {
    pub fn apply(&self, s: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
        match self {
            AdaptiveStrategy::Table(t) => t.apply(s),
            AdaptiveStrategy::Callback(f) => f(s, rng),
        }
    }
}

impl fmt::Debug for AdaptiveStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdaptiveStrategy::Table(t) => f.debug_tuple("Table").field(t).finish(),
            AdaptiveStrategy::Callback(_) => f.write_str("Callback(..)"),
        }
    }
}
