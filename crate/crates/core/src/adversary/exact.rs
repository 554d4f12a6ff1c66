//! Exact worst-case values for adaptive corruption of a finite sample.

use std::collections::HashMap;

use crate::adversary::budget::Spend;
use crate::adversary::feasible::{for_each_feasible, Caps};
use crate::adversary::{Sample, StrategyTable, TestFunction};
use crate::combinatorics::{
    composition_count, composition_of, compositions, decode, falling, multinomial_pmf, power,
};
use crate::costs::CostFunction;
use crate::error::{Error, Result};
use crate::probkit::Dist;

/// `E[f(Phi_{m->n}(S'))]` as a function of the count vector of `S'`.
///
/// The subsampling filter makes the composed test exchangeable, so the
/// value only depends on counts: each ordered draw `t` has probability
/// `prod_x (c_x)_{k_x(t)} / (m)_n` with falling factorials.
#[derive(Clone, Debug)]
pub struct SubsampledTest {
    n: usize,
    m: usize,
    terms: Vec<(Vec<usize>, f64)>,
}

impl SubsampledTest {
    pub fn new(f: &TestFunction, domain_size: usize, m: usize, caps: &Caps) -> Result<SubsampledTest> {
        let n = f.arity();
        if n == 0 || n > m {
            return Err(Error::InvalidParameter(format!("test arity {n} must lie in 1..={m}")));
        }
        let table = f.table(domain_size, caps.max_states)?;
        let mut sums: HashMap<Vec<usize>, f64> = HashMap::new();
        let mut t = vec![0; n];
        for (i, v) in table.into_iter().enumerate() {
            decode(i, domain_size, n, &mut t);
            *sums.entry(composition_of(&t, domain_size)).or_default() += v;
        }
        let mut terms: Vec<(Vec<usize>, f64)> = sums.into_iter().filter(|(_, v)| *v != 0.0).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(SubsampledTest { n, m, terms })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    /// Value on a sample of size `m` with the given counts.
    pub fn value(&self, counts: &[usize]) -> f64 {
        let denom = falling(self.m, self.n);
        self.terms
            .iter()
            .map(|(k, f)| f * k.iter().zip(counts).map(|(&kx, &cx)| falling(cx, kx)).product::<f64>())
            .sum::<f64>()
            / denom
    }

    /// `E_{p^n} f`.
    pub fn iid_value(&self, p: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(k, f)| f * k.iter().zip(p).map(|(&kx, &px)| px.powi(kx as i32)).product::<f64>())
            .sum()
    }
}

/// Count vectors reachable from `counts` within total budget `m`.
pub(crate) fn for_each_reachable_counts(
    rho: &CostFunction,
    counts: &[usize],
    m: usize,
    mut visit: impl FnMut(&[usize]),
) {
    let k = counts.len();
    let reach: Vec<Vec<usize>> = (0..k).map(|x| rho.reachable(x)).collect();
    let splits: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|x| compositions(counts[x], reach[x].len()))
        .collect();
    let mut dest = vec![0usize; k];
    reach_rec(rho, &reach, &splits, 0, Spend::start(rho), m, &mut dest, &mut visit);
}

#[allow(clippy::too_many_arguments)]
fn reach_rec(
    rho: &CostFunction,
    reach: &[Vec<usize>],
    splits: &[Vec<Vec<usize>>],
    x: usize,
    spent: Spend,
    m: usize,
    dest: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if x == reach.len() {
        visit(dest);
        return;
    }
    for split in &splits[x] {
        let mut s = Some(spent);
        for (&y, &cnt) in reach[x].iter().zip(split) {
            s = s.and_then(|s| s.add_times(rho.get(x, y), cnt));
        }
        let Some(s) = s.filter(|s| s.within(m)) else {
            continue;
        };
        for (&y, &cnt) in reach[x].iter().zip(split) {
            dest[y] += cnt;
        }
        reach_rec(rho, reach, splits, x + 1, s, m, dest, visit);
        for (&y, &cnt) in reach[x].iter().zip(split) {
            dest[y] -= cnt;
        }
    }
}

fn check_setup(f: &TestFunction, rho: &CostFunction, base: &Dist, m: usize) -> Result<()> {
    base.domain().ensure_same(rho.domain(), "adaptive_max")?;
    if m == 0 || f.arity() == 0 || f.arity() > m {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= arity ({}) <= sample size ({m})",
            f.arity()
        )));
    }
    Ok(())
}

/// `E_{S ~ base^m} sup_{S' admissible for S} E[f(Phi_{m->n}(S'))]`, exact.
///
/// When `n = m` the test is applied to `S'` directly; otherwise through the
/// subsampling filter. Both cases reduce to count vectors except for a
/// non-exchangeable test with `n = m`, which is enumerated tuple by tuple.
pub fn adaptive_max(f: &TestFunction, rho: &CostFunction, base: &Dist, m: usize, caps: &Caps) -> Result<f64> {
    check_setup(f, rho, base, m)?;
    if f.arity() == m && !f.is_exchangeable() {
        return adaptive_max_tuples(f, rho, base, m, caps);
    }
    let k = base.len();
    let needed = composition_count(m, k);
    if needed > caps.max_states {
        return Err(Error::CapExceeded {
            what: "count vectors",
            needed,
            cap: caps.max_states,
        });
    }
    let g = SubsampledTest::new(f, k, m, caps)?;
    let mut cache: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut total = 0.0;
    for c in compositions(m, k) {
        let p = multinomial_pmf(&c, base.probs());
        if p == 0.0 {
            continue;
        }
        let mut best = f64::NEG_INFINITY;
        for_each_reachable_counts(rho, &c, m, |d| {
            let v = *cache.entry(d.to_vec()).or_insert_with(|| g.value(d));
            best = best.max(v);
        });
        total += p * best;
    }
    Ok(total)
}

/// Same value as [`adaptive_max`], by enumerating every clean tuple and every
/// admissible corruption of it.
pub fn adaptive_max_tuples(
    f: &TestFunction,
    rho: &CostFunction,
    base: &Dist,
    m: usize,
    caps: &Caps,
) -> Result<f64> {
    check_setup(f, rho, base, m)?;
    let k = base.len();
    let needed = power(k, m);
    if needed > caps.max_states {
        return Err(Error::CapExceeded {
            what: "clean tuples",
            needed,
            cap: caps.max_states,
        });
    }
    let score = Scorer::new(f, k, m, caps)?;
    let mut s = vec![0; m];
    let mut total = 0.0;
    for i in 0..needed as usize {
        decode(i, k, m, &mut s);
        let p: f64 = s.iter().map(|&x| base.prob(x)).product();
        if p == 0.0 {
            continue;
        }
        let mut best = f64::NEG_INFINITY;
        for_each_feasible(rho, &s, caps, |t| best = best.max(score.eval(t)))?;
        total += p * best;
    }
    Ok(total)
}

/// Evaluates `f` on a full corrupted sample, directly or through the filter.
pub(crate) enum Scorer {
    Direct(TestFunction),
    Filtered(SubsampledTest, usize),
}

impl Scorer {
    pub fn new(f: &TestFunction, k: usize, m: usize, caps: &Caps) -> Result<Scorer> {
        Ok(if f.arity() == m {
            Scorer::Direct(f.clone())
        } else {
            Scorer::Filtered(SubsampledTest::new(f, k, m, caps)?, k)
        })
    }

    pub fn eval(&self, t: &[usize]) -> f64 {
        match self {
            Scorer::Direct(f) => f.eval(t),
            Scorer::Filtered(g, k) => g.value(&composition_of(t, *k)),
        }
    }
}

/// The lexicographically first admissible corruption of `s` maximising the
/// test, with its value.
pub fn best_response(f: &TestFunction, rho: &CostFunction, s: &Sample, caps: &Caps) -> Result<(Sample, f64)> {
    s.domain().ensure_same(rho.domain(), "best_response")?;
    let score = Scorer::new(f, rho.domain().len(), s.len(), caps)?;
    let (t, v) = best_tuple(&score, rho, s.points(), caps)?;
    Ok((Sample::new(s.domain(), t)?, v))
}

fn best_tuple(score: &Scorer, rho: &CostFunction, s: &[usize], caps: &Caps) -> Result<(Vec<usize>, f64)> {
    let mut best: Option<(Vec<usize>, f64)> = None;
    for_each_feasible(rho, s, caps, |t| {
        let v = score.eval(t);
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((t.to_vec(), v));
        }
    })?;
    Ok(best.expect("the uncorrupted sample is always admissible"))
}

/// A best response for every tuple in `X^m`.
pub fn optimal_strategy(f: &TestFunction, rho: &CostFunction, m: usize, caps: &Caps) -> Result<StrategyTable> {
    if f.arity() > m {
        return Err(Error::InvalidParameter("test arity exceeds sample size".into()));
    }
    let score = Scorer::new(f, rho.domain().len(), m, caps)?;
    StrategyTable::from_fn(rho, m, caps, |s| best_tuple(&score, rho, s, caps).map(|(t, _)| t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::{build_strong, build_subtractive, Rational};
    use crate::probkit::Domain;

    #[test]
    fn equal_pair_under_strong_half() {
        let d = Domain::range(2).unwrap();
        let rho = build_strong(&d, Rational::new(1, 2)).unwrap();
        let base = Dist::uniform(&d);
        let caps = Caps::default();
        let f = TestFunction::new(2, |t| f64::from(u8::from(t[0] == t[1])));
        assert!((adaptive_max(&f, &rho, &base, 2, &caps).unwrap() - 1.0).abs() < 1e-15);
        let fx = TestFunction::all_equal(2);
        assert!((adaptive_max(&fx, &rho, &base, 2, &caps).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn count_route_matches_tuple_route() {
        let d = Domain::range(2).unwrap();
        let (aug, rho) = build_subtractive(&d, Rational::new(1, 2)).unwrap();
        let base = Dist::new(&aug, vec![0.3, 0.7, 0.0]).unwrap();
        let f = TestFunction::new(2, |t| match (t[0], t[1]) {
            (0, 2) => 1.0,
            (1, 1) => 0.4,
            (2, 0) => 0.2,
            _ => 0.0,
        });
        let caps = Caps::default();
        for m in 2..6 {
            let a = adaptive_max(&f, &rho, &base, m, &caps).unwrap();
            let b = adaptive_max_tuples(&f, &rho, &base, m, &caps).unwrap();
            assert!((a - b).abs() < 1e-12, "m={m}: {a} vs {b}");
        }
    }

    #[test]
    fn best_response_prefers_first_maximiser() {
        let d = Domain::range(2).unwrap();
        let rho = build_strong(&d, Rational::new(1, 2)).unwrap();
        let s = Sample::new(&d, vec![0, 1]).unwrap();
        let (t, v) = best_response(&TestFunction::all_equal(2), &rho, &s, &Caps::default()).unwrap();
        assert_eq!(t.points(), &[0, 0]);
        assert_eq!(v, 1.0);
    }
}
