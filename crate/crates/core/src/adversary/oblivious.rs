//! Worst-case values for oblivious corruption of the distribution.

use crate::adversary::exact::SubsampledTest;
use crate::adversary::feasible::Caps;
use crate::adversary::TestFunction;
use crate::combinatorics::{composition_count, compositions};
use crate::costs::CostFunction;
use crate::error::{Error, Result};
use crate::lp::LP_TOLERANCE;
use crate::probkit::{is_reachable, min_cost_transport, Dist};

/// Result of a grid-and-refine maximisation over reachable distributions.
#[derive(Clone, Debug)]
pub struct ObliviousMax {
    pub value: f64,
    pub argmax: Dist,
    /// `n` times the total variation radius of the grid.
    pub error_bound: f64,
}

/// Grid points of the simplex reachable from `base`, reusable across tests.
#[derive(Clone, Debug)]
pub struct ObliviousGrid {
    rho: CostFunction,
    base: Dist,
    resolution: usize,
    points: Vec<Vec<f64>>,
}

impl ObliviousGrid {
    pub fn new(rho: &CostFunction, base: &Dist, resolution: usize, caps: &Caps) -> Result<ObliviousGrid> {
        base.domain().ensure_same(rho.domain(), "oblivious grid")?;
        if resolution == 0 {
            return Err(Error::InvalidParameter("grid resolution must be positive".into()));
        }
        let k = base.len();
        let needed = composition_count(resolution, k);
        if needed > caps.max_states {
            return Err(Error::CapExceeded {
                what: "simplex grid",
                needed,
                cap: caps.max_states,
            });
        }
        let mut points = Vec::new();
        for c in compositions(resolution, k) {
            let p: Vec<f64> = c.iter().map(|&v| v as f64 / resolution as f64).collect();
            if is_reachable(rho, base, &Dist::raw(base.domain(), p.clone()))? {
                points.push(p);
            }
        }
        // `base` itself is always reachable, so a coarse grid never leaves us empty-handed.
        points.push(base.probs().to_vec());
        Ok(ObliviousGrid {
            rho: rho.clone(),
            base: base.clone(),
            resolution,
            points,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `sup E_{(D')^n} f` over reachable `D'`, approximately.
    pub fn maximize(&self, f: &TestFunction, caps: &Caps) -> Result<ObliviousMax> {
        let k = self.base.len();
        let n = f.arity();
        let g = SubsampledTest::new(f, k, n, caps)?;
        let objective = |p: &[f64]| g.iid_value(p);
        let start = self
            .points
            .iter()
            .map(|p| (objective(p), p))
            .fold(None::<(f64, &Vec<f64>)>, |acc, (v, p)| match acc {
                Some((b, _)) if b >= v => acc,
                _ => Some((v, p)),
            })
            .expect("grid holds at least the base point");
        let rho = &self.rho;
        let base = &self.base;
        // refinement walks along the boundary, so it gets the tight LP tolerance
        let (p, value) = refine(start.1.clone(), start.0, 1.0 / self.resolution as f64, objective, |q| {
            Ok(min_cost_transport(base, &Dist::raw(base.domain(), q.to_vec()), rho)? <= 1.0 + LP_TOLERANCE)
        })?;
        Ok(ObliviousMax {
            value,
            argmax: Dist::raw(base.domain(), p),
            error_bound: n as f64 * k as f64 / (2.0 * self.resolution as f64),
        })
    }
}

/// `sup_{D' reachable from base} E_{(D')^n} f` by grid search at the given
/// resolution followed by pairwise coordinate ascent.
pub fn oblivious_max(
    f: &TestFunction,
    rho: &CostFunction,
    base: &Dist,
    resolution: usize,
    caps: &Caps,
) -> Result<ObliviousMax> {
    ObliviousGrid::new(rho, base, resolution, caps)?.maximize(f, caps)
}

/// Pairwise mass moves with halving step size, accepting strict improvements
/// that stay feasible.
pub(crate) fn refine(
    mut p: Vec<f64>,
    mut best: f64,
    initial_step: f64,
    objective: impl Fn(&[f64]) -> f64,
    mut feasible: impl FnMut(&[f64]) -> Result<bool>,
) -> Result<(Vec<f64>, f64)> {
    let k = p.len();
    let mut step = initial_step;
    let mut rounds = 0;
    while step > 1e-10 && rounds < 20_000 {
        rounds += 1;
        let mut improved = false;
        for i in 0..k {
            for j in 0..k {
                if i == j || p[i] <= 0.0 {
                    continue;
                }
                let d = step.min(p[i]);
                let mut q = p.clone();
                q[i] -= d;
                q[j] += d;
                let v = objective(&q);
                if v > best + 1e-15 && feasible(&q)? {
                    p = q;
                    best = v;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    Ok((p, best))
}

/// Grid-and-refine maximisation of `objective` over the simplex restricted
/// by a cheap membership test.
pub(crate) fn maximize_on_simplex(
    k: usize,
    resolution: usize,
    caps: &Caps,
    objective: impl Fn(&[f64]) -> f64,
    feasible: impl Fn(&[f64]) -> bool,
    fallback: &[f64],
) -> Result<(Vec<f64>, f64)> {
    let needed = composition_count(resolution, k);
    if needed > caps.max_states {
        return Err(Error::CapExceeded {
            what: "simplex grid",
            needed,
            cap: caps.max_states,
        });
    }
    let mut best = (fallback.to_vec(), objective(fallback));
    for c in compositions(resolution, k) {
        let p: Vec<f64> = c.iter().map(|&v| v as f64 / resolution as f64).collect();
        if feasible(&p) {
            let v = objective(&p);
            if v > best.1 {
                best = (p, v);
            }
        }
    }
    refine(best.0, best.1, 1.0 / resolution as f64, objective, |q| Ok(feasible(q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::{build_strong, Rational};
    use crate::probkit::Domain;

    #[test]
    fn equal_pair_oblivious_values() {
        let d = Domain::range(2).unwrap();
        let base = Dist::uniform(&d);
        let f = TestFunction::new(2, |t| f64::from(u8::from(t[0] == t[1])));
        let caps = Caps::default();
        let rho = build_strong(&d, Rational::new(1, 2)).unwrap();
        let r = oblivious_max(&f, &rho, &base, 40, &caps).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        let rho = build_strong(&d, Rational::new(1, 4)).unwrap();
        let r = oblivious_max(&f, &rho, &base, 40, &caps).unwrap();
        assert!((r.value - 0.625).abs() < 1e-8);
        assert!((r.argmax.prob(0) - 0.25).abs() < 1e-6 || (r.argmax.prob(0) - 0.75).abs() < 1e-6);
    }
}
