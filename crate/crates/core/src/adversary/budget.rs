use num_traits::Zero;

use crate::costs::{Cost, CostFunction, Rational};

/// Float budgets tolerate this much overshoot.
pub const REAL_BUDGET_SLACK: f64 = 1e-9;

/// Running total of corruption cost, exact when the cost table is.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Spend {
    Exact(Rational),
    Real(f64),
}

impl Spend {
    pub fn start(rho: &CostFunction) -> Spend {
        if rho.is_exact() {
            Spend::Exact(Rational::zero())
        } else {
            Spend::Real(0.0)
        }
    }

    /// Adds a finite cost; `None` for an infinite one.
    pub fn add(self, c: Cost) -> Option<Spend> {
        Some(match (self, c) {
            (_, Cost::Infinite) => return None,
            (Spend::Exact(s), Cost::Exact(r)) => Spend::Exact(s + r),
            (Spend::Exact(s), Cost::Real(v)) => Spend::Real(crate::costs::rational_to_f64(s) + v),
            (Spend::Real(s), c) => Spend::Real(s + c.as_f64()),
        })
    }

    pub fn add_times(self, c: Cost, times: usize) -> Option<Spend> {
        if times == 0 {
            return Some(self);
        }
        Some(match (self, c) {
            (_, Cost::Infinite) => return None,
            (Spend::Exact(s), Cost::Exact(r)) => Spend::Exact(s + r * Rational::from_integer(times as i64)),
            (s, c) => Spend::Real(s.as_f64() + times as f64 * c.as_f64()),
        })
    }

    pub fn within(self, limit: usize) -> bool {
        match self {
            Spend::Exact(s) => s <= Rational::from_integer(limit as i64),
            Spend::Real(s) => s <= limit as f64 + REAL_BUDGET_SLACK,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Spend::Exact(s) => crate::costs::rational_to_f64(s),
            Spend::Real(s) => s,
        }
    }
}

/// Total cost of changing `s` into `t`, if finite.
pub(crate) fn total_cost(rho: &CostFunction, s: &[usize], t: &[usize]) -> Option<Spend> {
    s.iter()
        .zip(t)
        .try_fold(Spend::start(rho), |acc, (&x, &y)| acc.add(rho.get(x, y)))
}

/// True when `t` is an admissible corruption of `s`: same length and average
/// cost at most one.
pub fn is_admissible(rho: &CostFunction, s: &[usize], t: &[usize]) -> bool {
    s.len() == t.len() && total_cost(rho, s, t).is_some_and(|c| c.within(s.len()))
}
