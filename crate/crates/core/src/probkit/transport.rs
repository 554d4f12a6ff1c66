//! Optimal transport under a cost function, and the nearest reachable
//! distribution in total variation.

use crate::costs::CostFunction;
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation, LP_TOLERANCE};
use crate::probkit::info::tv_slices;
use crate::probkit::{Dist, Domain};

/// Slack allowed when testing `transport <= 1` on LP output.
pub const FEASIBILITY_SLACK: f64 = 1e-7;

/// A joint law on `X x X` with prescribed marginals.
#[derive(Clone, Debug, PartialEq)]
pub struct Coupling {
    domain: Domain,
    plan: Vec<f64>,
}

impl Coupling {
    pub fn new(domain: &Domain, plan: Vec<f64>) -> Result<Coupling> {
        let n = domain.len();
        if plan.len() != n * n {
            return Err(Error::InvalidDistribution("coupling has wrong size".into()));
        }
        crate::probkit::check_mass(&plan)?;
        Ok(Coupling {
            domain: domain.clone(),
            plan,
        })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn mass(&self, x: usize, y: usize) -> f64 {
        self.plan[x * self.domain.len() + y]
    }

    pub fn left(&self) -> Dist {
        let n = self.domain.len();
        let p = (0..n).map(|x| (0..n).map(|y| self.mass(x, y)).sum()).collect();
        Dist::raw(&self.domain, p)
    }

    pub fn right(&self) -> Dist {
        let n = self.domain.len();
        let p = (0..n).map(|y| (0..n).map(|x| self.mass(x, y)).sum()).collect();
        Dist::raw(&self.domain, p)
    }

    /// `E[rho(x, y)]`, infinite if any mass sits on an infinite arc.
    pub fn expected_cost(&self, rho: &CostFunction) -> f64 {
        let n = self.domain.len();
        let mut acc = 0.0;
        for x in 0..n {
            for y in 0..n {
                let m = self.mass(x, y);
                if m > 0.0 {
                    acc += m * rho.get(x, y).as_f64();
                }
            }
        }
        acc
    }

    /// `P[x != y]`.
    pub fn mismatch(&self) -> f64 {
        let n = self.domain.len();
        1.0 - (0..n).map(|x| self.mass(x, x)).sum::<f64>()
    }

    /// Conditional law of `y` given `x`, if `x` has mass.
    pub fn conditional(&self, x: usize) -> Option<Vec<f64>> {
        let n = self.domain.len();
        let row = &self.plan[x * n..(x + 1) * n];
        let s: f64 = row.iter().sum();
        (s > 0.0).then(|| row.iter().map(|v| v / s).collect())
    }
}

/// Coupling attaining `P[x != y] = tv(p, q)`: the common mass stays on the
/// diagonal and the excesses are paired proportionally.
pub fn tv_coupling(p: &Dist, q: &Dist) -> Result<Coupling> {
    p.domain().ensure_same(q.domain(), "tv_coupling")?;
    let n = p.len();
    let mut plan = vec![0.0; n * n];
    let excess_p: Vec<f64> = (0..n).map(|i| (p.prob(i) - q.prob(i)).max(0.0)).collect();
    let excess_q: Vec<f64> = (0..n).map(|i| (q.prob(i) - p.prob(i)).max(0.0)).collect();
    let total: f64 = excess_p.iter().sum();
    for i in 0..n {
        plan[i * n + i] = p.prob(i).min(q.prob(i));
        if total > 0.0 {
            for j in 0..n {
                plan[i * n + j] += excess_p[i] * excess_q[j] / total;
            }
        }
    }
    Ok(Coupling {
        domain: p.domain().clone(),
        plan,
    })
}

fn check_inputs(p: &Dist, q: &Dist, rho: &CostFunction) -> Result<()> {
    p.domain().ensure_same(q.domain(), "transport marginals")?;
    p.domain().ensure_same(rho.domain(), "transport cost")
}

/// Cheapest coupling of `p` and `q` under `rho`, or `None` when every
/// coupling uses an infinite arc.
pub fn optimal_coupling(p: &Dist, q: &Dist, rho: &CostFunction) -> Result<Option<Coupling>> {
    check_inputs(p, q, rho)?;
    let n = p.len();
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| p.prob(x) > 0.0 && q.prob(y) > 0.0 && rho.get(x, y).is_finite())
        .collect();
    let cost: Vec<f64> = arcs.iter().map(|&(x, y)| rho.get(x, y).as_f64()).collect();
    let mut lp = LinearProgram::minimize(cost);
    for x in (0..n).filter(|&x| p.prob(x) > 0.0) {
        let row = arcs.iter().map(|&(a, _)| f64::from(u8::from(a == x))).collect();
        lp.add_row(row, Relation::Eq, p.prob(x));
    }
    for y in (0..n).filter(|&y| q.prob(y) > 0.0) {
        let row = arcs.iter().map(|&(_, b)| f64::from(u8::from(b == y))).collect();
        lp.add_row(row, Relation::Eq, q.prob(y));
    }
    match lp.solve()? {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Optimal { x, .. } => {
            let mut plan = vec![0.0; n * n];
            for (&(a, b), v) in arcs.iter().zip(x) {
                plan[a * n + b] = v;
            }
            Ok(Some(Coupling {
                domain: p.domain().clone(),
                plan,
            }))
        }
    }
}

/// Minimum of `E[rho(x, y)]` over couplings of `p` and `q`; infinite when no
/// coupling avoids infinite arcs.
pub fn min_cost_transport(p: &Dist, q: &Dist, rho: &CostFunction) -> Result<f64> {
    Ok(match optimal_coupling(p, q, rho)? {
        Some(c) => c.expected_cost(rho),
        None => f64::INFINITY,
    })
}

/// True when `candidate` is reachable from `base` with expected cost at most one.
pub fn is_reachable(rho: &CostFunction, base: &Dist, candidate: &Dist) -> Result<bool> {
    Ok(min_cost_transport(base, candidate, rho)? <= 1.0 + FEASIBILITY_SLACK)
}

/// The distribution reachable from `base` (expected cost at most one) that is
/// closest to `goal` in total variation, with that distance.
pub fn nearest_oblivious(rho: &CostFunction, base: &Dist, goal: &Dist) -> Result<(Dist, f64)> {
    check_inputs(base, goal, rho)?;
    let n = base.len();
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| base.prob(x) > 0.0 && rho.get(x, y).is_finite())
        .collect();
    let na = arcs.len();
    // variables: arc masses, then one excess variable per destination
    let mut obj = vec![0.0; na + n];
    obj[na..].iter_mut().for_each(|v| *v = 1.0);
    let mut lp = LinearProgram::minimize(obj);
    for x in (0..n).filter(|&x| base.prob(x) > 0.0) {
        let mut row = vec![0.0; na + n];
        for (i, &(a, _)) in arcs.iter().enumerate() {
            if a == x {
                row[i] = 1.0;
            }
        }
        lp.add_row(row, Relation::Eq, base.prob(x));
    }
    let mut budget = vec![0.0; na + n];
    for (i, &(a, b)) in arcs.iter().enumerate() {
        budget[i] = rho.get(a, b).as_f64();
    }
    lp.add_row(budget, Relation::Le, 1.0);
    for y in 0..n {
        let mut row = vec![0.0; na + n];
        for (i, &(_, b)) in arcs.iter().enumerate() {
            if b == y {
                row[i] = 1.0;
            }
        }
        row[na + y] = -1.0;
        lp.add_row(row, Relation::Le, goal.prob(y));
    }
    let x = match lp.solve()? {
        LpOutcome::Optimal { x, .. } => x,
        LpOutcome::Infeasible => {
            return Err(Error::Lp("staying put should always be feasible".into()));
        }
    };
    let mut p = vec![0.0; n];
    for (&(_, b), v) in arcs.iter().zip(&x) {
        p[b] += v.max(0.0);
    }
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= s);
    debug_assert!((s - 1.0).abs() < 10.0 * LP_TOLERANCE);
    let tv = tv_slices(&p, goal.probs());
    Ok((Dist::raw(base.domain(), p), tv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::{build_strong, build_subtractive, Rational};

    fn bits() -> Domain {
        Domain::range(2).unwrap()
    }

    #[test]
    fn strong_transport_between_bernoullis() {
        let rho = build_strong(&bits(), Rational::new(1, 2)).unwrap();
        let p = Dist::uniform(&bits());
        let q = Dist::new(&bits(), vec![0.25, 0.75]).unwrap();
        assert!((min_cost_transport(&p, &q, &rho).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn infinite_arcs_make_transport_infinite() {
        let (aug, rho) = build_subtractive(&bits(), Rational::new(1, 2)).unwrap();
        let p = Dist::point(&aug, 2).unwrap();
        let q = Dist::point(&aug, 0).unwrap();
        assert_eq!(min_cost_transport(&p, &q, &rho).unwrap(), f64::INFINITY);
    }

    #[test]
    fn nearest_reachable_point_mass() {
        let base = Dist::uniform(&bits());
        let goal = Dist::point(&bits(), 1).unwrap();
        let rho = build_strong(&bits(), Rational::new(1, 2)).unwrap();
        let (d, tv) = nearest_oblivious(&rho, &base, &goal).unwrap();
        assert!(tv.abs() < 1e-12 && (d.prob(1) - 1.0).abs() < 1e-12);
        let rho = build_strong(&bits(), Rational::new(1, 4)).unwrap();
        let (d, tv) = nearest_oblivious(&rho, &base, &goal).unwrap();
        assert!((tv - 0.25).abs() < 1e-12);
        assert!((d.prob(0) - 0.25).abs() < 1e-12 && (d.prob(1) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn tv_coupling_attains_tv() {
        let p = Dist::new(&bits(), vec![0.3, 0.7]).unwrap();
        let q = Dist::new(&bits(), vec![0.6, 0.4]).unwrap();
        let c = tv_coupling(&p, &q).unwrap();
        assert!((c.mismatch() - 0.3).abs() < 1e-12);
        assert_eq!(c.left(), p);
        assert!(crate::probkit::tv_distance(&c.right(), &q).unwrap() < 1e-15);
    }
}
