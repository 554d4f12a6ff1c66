//! Removal-only corruption stated natively, and its encoding as a cost
//! function on the domain augmented with a null point.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::ToPrimitive;

use crate::adversary::exact::SubsampledTest;
use crate::adversary::feasible::Caps;
use crate::adversary::models::corrupted_count;
use crate::adversary::oblivious::maximize_on_simplex;
use crate::adversary::TestFunction;
use crate::combinatorics::{binomial_pmf, decode, ordered_selections, power, subsets};
use crate::costs::{validate_eta, Rational};
use crate::error::{Error, Result};
use crate::probkit::{Dist, Domain};

/// `ceil(max(2n, 8 ln(1/eps)) / (1 - eta))`: enough draws that at least `n`
/// survive removal of an `eta` fraction with probability `1 - eps`.
pub fn conversion_sample_size(n: usize, eps: f64, eta: Rational) -> Result<usize> {
    validate_eta(eta)?;
    let e = eta.to_f64().unwrap_or(f64::NAN);
    if e >= 1.0 || !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter("need eta < 1 and 0 < eps < 1".into()));
    }
    let need = (2.0 * n as f64).max(8.0 * (1.0 / eps).ln());
    Ok((need / (1.0 - e)).ceil() as usize)
}

/// `P[Bin(m, 1 - eta) < n]`.
pub fn too_few_survivors(n: usize, eta: Rational, m: usize) -> f64 {
    let keep = 1.0 - eta.to_f64().unwrap_or(f64::NAN);
    (0..n.min(m + 1)).map(|z| binomial_pmf(m, z, keep)).sum()
}

/// The arity-`m` test on the augmented domain that runs `f` on `n` random
/// non-null entries, scoring zero when fewer than `n` remain.
pub fn null_filtered(f: &TestFunction, augmented: &Domain, m: usize, caps: &Caps) -> Result<TestFunction> {
    let null = augmented
        .null_index()
        .ok_or_else(|| Error::DomainMismatch("null filtering needs an augmented domain".into()))?;
    let n = f.arity();
    let k = null;
    let mut by_size = HashMap::new();
    for t in n..=m {
        by_size.insert(t, SubsampledTest::new(f, k, t, caps)?);
    }
    let by_size = Mutex::new(by_size);
    Ok(TestFunction::exchangeable(m, move |s| {
        let mut c = vec![0usize; k];
        for &x in s {
            if x != null {
                c[x] += 1;
            }
        }
        let total: usize = c.iter().sum();
        if total < n {
            return 0.0;
        }
        by_size.lock().expect("lock is never poisoned")[&total].value(&c)
    }))
}

/// `E_{S ~ base^m} max_{R, |R| <= floor(eta m)} E[f(Phi(S without R))]` by
/// enumerating tuples, removal sets and ordered subsamples directly.
pub fn subtractive_adaptive_native(
    f: &TestFunction,
    base: &Dist,
    eta: Rational,
    m: usize,
    caps: &Caps,
) -> Result<f64> {
    validate_eta(eta)?;
    let n = f.arity();
    let r = corrupted_count(eta, m);
    if m < n + r {
        return Err(Error::InvalidParameter(format!(
            "{m} draws minus {r} removals leaves fewer than {n}"
        )));
    }
    let k = base.len();
    let cells = power(k, m);
    if cells > caps.max_states {
        return Err(Error::CapExceeded {
            what: "clean tuples",
            needed: cells,
            cap: caps.max_states,
        });
    }
    let positions: Vec<usize> = (0..m).collect();
    let removals: Vec<Vec<usize>> = (0..=r).flat_map(|j| subsets(&positions, j)).collect();
    let draws: HashMap<usize, Vec<Vec<usize>>> = (m - r..=m).map(|t| (t, ordered_selections(t, n))).collect();
    let mut s = vec![0; m];
    let mut total = 0.0;
    for i in 0..cells as usize {
        decode(i, k, m, &mut s);
        let p: f64 = s.iter().map(|&x| base.prob(x)).product();
        if p == 0.0 {
            continue;
        }
        let mut best = f64::NEG_INFINITY;
        for rem in &removals {
            let kept: Vec<usize> = (0..m).filter(|j| !rem.contains(j)).map(|j| s[j]).collect();
            let sel = &draws[&kept.len()];
            let v: f64 = sel
                .iter()
                .map(|d| f.eval(&d.iter().map(|&j| kept[j]).collect::<Vec<_>>()))
                .sum::<f64>()
                / sel.len() as f64;
            best = best.max(v);
        }
        total += p * best;
    }
    Ok(total)
}

/// `sup E_{(D')^n} f` over `D'` obtained from `base` by conditioning on an
/// event of probability at least `1 - eta`, i.e. `D' <= base / (1 - eta)`.
pub fn subtractive_oblivious_native(
    f: &TestFunction,
    base: &Dist,
    eta: Rational,
    resolution: usize,
    caps: &Caps,
) -> Result<(Dist, f64)> {
    validate_eta(eta)?;
    let keep = 1.0 - eta.to_f64().unwrap_or(f64::NAN);
    let g = SubsampledTest::new(f, base.len(), f.arity(), caps)?;
    let cap: Vec<f64> = base
        .probs()
        .iter()
        .map(|p| if keep > 0.0 { p / keep } else if *p > 0.0 { 1.0 } else { 0.0 })
        .collect();
    let (q, v) = maximize_on_simplex(
        base.len(),
        resolution,
        caps,
        |q| g.iid_value(q),
        |q| q.iter().zip(&cap).all(|(a, b)| *a <= b + 1e-12),
        base.probs(),
    )?;
    Ok((Dist::raw(base.domain(), q), v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversion_size() {
        // max(4, 8 ln 1.25) = 4; 4 / (2/3) = 6
        assert_eq!(conversion_sample_size(2, 0.8, Rational::new(1, 3)).unwrap(), 6);
        assert!(conversion_sample_size(2, 0.8, Rational::from_integer(1)).is_err());
    }
}
