use crate::adversary::budget::Spend;
use crate::adversary::Sample;
use crate::combinatorics::power;
use crate::costs::CostFunction;
use crate::error::{Error, Result};

/// Limits on exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Caps {
    /// Largest state space (tuples, table cells) enumerated densely.
    pub max_states: f64,
    /// Largest feasible set listed for a single sample.
    pub max_feasible: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_states: 1e7,
            max_feasible: 1_000_000,
        }
    }
}

/// Every corruption `S'` of `s` with average cost at most one, in
/// lexicographic order.
pub fn adaptive_feasible(rho: &CostFunction, s: &Sample, caps: &Caps) -> Result<Vec<Sample>> {
    s.domain().ensure_same(rho.domain(), "adaptive_feasible")?;
    let m = s.len();
    let needed = power(rho.degree(), m);
    if needed > caps.max_states {
        return Err(Error::CapExceeded {
            what: "corruption enumeration",
            needed,
            cap: caps.max_states,
        });
    }
    let mut out = Vec::new();
    for_each_feasible(rho, s.points(), caps, |t| {
        out.push(Sample::new(s.domain(), t.to_vec()).expect("destinations lie in the domain"));
    })?;
    Ok(out)
}

/// Depth-first enumeration of admissible corruptions, pruning on budget.
pub(crate) fn for_each_feasible(
    rho: &CostFunction,
    s: &[usize],
    caps: &Caps,
    mut visit: impl FnMut(&[usize]),
) -> Result<usize> {
    let reach: Vec<Vec<usize>> = s.iter().map(|&x| rho.reachable(x)).collect();
    let mut cur = Vec::with_capacity(s.len());
    let mut count = 0usize;
    let mut overflow = false;
    dfs(rho, s, &reach, Spend::start(rho), &mut cur, &mut count, caps.max_feasible, &mut overflow, &mut visit);
    if overflow {
        return Err(Error::CapExceeded {
            what: "feasible set",
            needed: count as f64,
            cap: caps.max_feasible as f64,
        });
    }
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    rho: &CostFunction,
    s: &[usize],
    reach: &[Vec<usize>],
    spent: Spend,
    cur: &mut Vec<usize>,
    count: &mut usize,
    cap: usize,
    overflow: &mut bool,
    visit: &mut impl FnMut(&[usize]),
) {
    if *overflow {
        return;
    }
    let i = cur.len();
    if i == s.len() {
        *count += 1;
        if *count > cap {
            *overflow = true;
            return;
        }
        visit(cur);
        return;
    }
    for &y in &reach[i] {
        let Some(next) = spent.add(rho.get(s[i], y)) else {
            continue;
        };
        if !next.within(s.len()) {
            continue;
        }
        cur.push(y);
        dfs(rho, s, reach, next, cur, count, cap, overflow, visit);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::{build_strong, build_subtractive, Rational};
    use crate::probkit::Domain;

    #[test]
    fn strong_half_two_points() {
        for k in 2..5 {
            let d = Domain::range(k).unwrap();
            let rho = build_strong(&d, Rational::new(1, 2)).unwrap();
            let s = Sample::new(&d, vec![0, 1]).unwrap();
            let all = adaptive_feasible(&rho, &s, &Caps::default()).unwrap();
            assert_eq!(all.len(), 1 + 2 * (k - 1));
        }
    }

    #[test]
    fn subtractive_half_four_points() {
        let (aug, rho) = build_subtractive(&Domain::range(2).unwrap(), Rational::new(1, 2)).unwrap();
        let s = Sample::new(&aug, vec![0, 1, 0, 1]).unwrap();
        let all = adaptive_feasible(&rho, &s, &Caps::default()).unwrap();
        assert_eq!(all.len(), 11);
        assert_eq!(all[0].points(), &[0, 1, 0, 1]);
    }

    #[test]
    fn feasible_cap_is_reported() {
        let d = Domain::range(3).unwrap();
        let rho = build_strong(&d, Rational::from_integer(1)).unwrap();
        let s = Sample::new(&d, vec![0; 6]).unwrap();
        let caps = Caps {
            max_states: 1e9,
            max_feasible: 10,
        };
        assert!(matches!(adaptive_feasible(&rho, &s, &caps), Err(Error::CapExceeded { .. })));
    }
}
