//! Additive, malicious and non-i.i.d. corruption models, valued exactly on
//! count vectors, plus Monte Carlo drivers for the sequential ones.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::adversary::exact::SubsampledTest;
use crate::adversary::feasible::Caps;
use crate::adversary::oblivious::maximize_on_simplex;
use crate::adversary::TestFunction;
use crate::combinatorics::{binomial_pmf, composition_count, compositions, multinomial_pmf};
use crate::costs::{validate_eta, Rational};
use crate::error::{Error, Result};
use crate::probkit::Dist;

/// `floor(eta * m)`: the number of points an additive adversary contributes.
pub fn corrupted_count(eta: Rational, m: usize) -> usize {
    (eta * Rational::from_integer(m as i64)).floor().to_integer() as usize
}

fn eta_f64(eta: Rational) -> f64 {
    eta.to_f64().unwrap_or(f64::NAN)
}

fn setup(f: &TestFunction, base: &Dist, eta: Rational, m: usize, caps: &Caps) -> Result<SubsampledTest> {
    validate_eta(eta)?;
    let needed = composition_count(m, base.len()) * composition_count(m, base.len());
    if needed > caps.max_states {
        return Err(Error::CapExceeded {
            what: "count-vector pairs",
            needed,
            cap: caps.max_states,
        });
    }
    SubsampledTest::new(f, base.len(), m, caps)
}

fn add(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Best completion of clean counts `c` by `extra` arbitrary points.
fn best_completion(g: &SubsampledTest, c: &[usize], extra: usize) -> f64 {
    compositions(extra, c.len())
        .iter()
        .map(|a| g.value(&add(c, a)))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `E_{S clean of size z0} sup_T E[f(Phi(S + T))]` with `z0 = m - floor(eta m)`.
pub fn adaptive_additive_max(f: &TestFunction, base: &Dist, eta: Rational, m: usize, caps: &Caps) -> Result<f64> {
    let g = setup(f, base, eta, m, caps)?;
    let extra = corrupted_count(eta, m);
    Ok(compositions(m - extra, base.len())
        .iter()
        .map(|c| multinomial_pmf(c, base.probs()) * best_completion(&g, c, extra))
        .sum())
}

/// Clean size drawn from `Bin(m, 1 - eta)`, completed to `m` points by the
/// adversary after seeing the clean points.
pub fn binomial_max(f: &TestFunction, base: &Dist, eta: Rational, m: usize, caps: &Caps) -> Result<f64> {
    let g = setup(f, base, eta, m, caps)?;
    let keep = 1.0 - eta_f64(eta);
    let mut total = 0.0;
    for z in 0..=m {
        let pz = binomial_pmf(m, z, keep);
        if pz == 0.0 {
            continue;
        }
        let inner: f64 = compositions(z, base.len())
            .iter()
            .map(|c| multinomial_pmf(c, base.probs()) * best_completion(&g, c, m - z))
            .sum();
        total += pz * inner;
    }
    Ok(total)
}

/// Each point independently is adversarial with probability `eta`; the
/// adversary sees only the points before it. Solved by backward induction on
/// prefix counts.
pub fn malicious_max(f: &TestFunction, base: &Dist, eta: Rational, m: usize, caps: &Caps) -> Result<f64> {
    let g = setup(f, base, eta, m, caps)?;
    let e = eta_f64(eta);
    let k = base.len();
    let mut next: HashMap<Vec<usize>, f64> = compositions(m, k)
        .into_iter()
        .map(|c| {
            let v = g.value(&c);
            (c, v)
        })
        .collect();
    for i in (0..m).rev() {
        let mut layer = HashMap::new();
        for c in compositions(i, k) {
            let mut clean = 0.0;
            let mut worst = f64::NEG_INFINITY;
            let mut d = c.clone();
            for x in 0..k {
                d[x] += 1;
                let v = next[&d];
                d[x] -= 1;
                clean += base.prob(x) * v;
                worst = worst.max(v);
            }
            layer.insert(c, (1.0 - e) * clean + e * worst);
        }
        next = layer;
    }
    Ok(next[&vec![0; k]])
}

/// The adversary fixes `floor(eta m)` points before seeing anything; they
/// are shuffled among `m - floor(eta m)` clean draws.
pub fn noniid_max(f: &TestFunction, base: &Dist, eta: Rational, m: usize, caps: &Caps) -> Result<f64> {
    let g = setup(f, base, eta, m, caps)?;
    let extra = corrupted_count(eta, m);
    let clean = compositions(m - extra, base.len());
    let weights: Vec<f64> = clean.iter().map(|c| multinomial_pmf(c, base.probs())).collect();
    Ok(compositions(extra, base.len())
        .iter()
        .map(|t| clean.iter().zip(&weights).map(|(c, w)| w * g.value(&add(c, t))).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `sup_E E_{((1 - eta) base + eta E)^n} f`, by grid search and refinement.
pub fn oblivious_additive_max(
    f: &TestFunction,
    base: &Dist,
    eta: Rational,
    resolution: usize,
    caps: &Caps,
) -> Result<(Dist, f64)> {
    validate_eta(eta)?;
    let e = eta_f64(eta);
    let g = SubsampledTest::new(f, base.len(), f.arity(), caps)?;
    let mix = |q: &[f64]| -> Vec<f64> { base.probs().iter().zip(q).map(|(p, q)| (1.0 - e) * p + e * q).collect() };
    let (q, v) = maximize_on_simplex(
        base.len(),
        resolution,
        caps,
        |q| g.iid_value(&mix(q)),
        |_| true,
        base.probs(),
    )?;
    Ok((Dist::raw(base.domain(), q), v))
}

/// `n E|Bin(m, 1 - eta) - ceil((1 - eta) m)| / m`.
pub fn additive_binomial_gap_bound(n: usize, eta: Rational, m: usize) -> f64 {
    let z0 = (m - corrupted_count(eta, m)) as f64;
    let keep = 1.0 - eta_f64(eta);
    let dev: f64 = (0..=m).map(|z| binomial_pmf(m, z, keep) * (z as f64 - z0).abs()).sum();
    n as f64 * dev / m as f64
}

/// One malicious sample: each slot is, with probability `eta`, filled by
/// `policy(prefix)` and otherwise drawn from `base`.
pub fn malicious_run<R: Rng + ?Sized>(
    base: &Dist,
    eta: Rational,
    m: usize,
    policy: &dyn Fn(&[usize]) -> usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    validate_eta(eta)?;
    let e = eta_f64(eta);
    let mut s = Vec::with_capacity(m);
    for _ in 0..m {
        let x = if rng.gen::<f64>() < e {
            let x = policy(&s);
            if x >= base.len() {
                return Err(Error::InvalidParameter(format!("policy produced point {x} outside the domain")));
            }
            x
        } else {
            base.sample(rng)
        };
        s.push(x);
    }
    Ok(s)
}

/// One non-i.i.d. sample: `chosen` (exactly `floor(eta m)` points) shuffled
/// together with fresh draws from `base`.
pub fn noniid_run<R: Rng + ?Sized>(
    base: &Dist,
    eta: Rational,
    m: usize,
    chosen: &[usize],
    rng: &mut R,
) -> Result<Vec<usize>> {
    validate_eta(eta)?;
    let extra = corrupted_count(eta, m);
    if chosen.len() != extra {
        return Err(Error::InvalidParameter(format!(
            "expected {extra} chosen points, got {}",
            chosen.len()
        )));
    }
    if chosen.iter().any(|&x| x >= base.len()) {
        return Err(Error::InvalidParameter("chosen point outside the domain".into()));
    }
    let mut s: Vec<usize> = (0..m - extra).map(|_| base.sample(rng)).collect();
    s.extend_from_slice(chosen);
    s.shuffle(rng);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probkit::Domain;

    fn setup() -> (Dist, TestFunction, Caps) {
        let d = Domain::range(2).unwrap();
        let base = Dist::new(&d, vec![0.7, 0.3]).unwrap();
        let f = TestFunction::exchangeable(2, |t| f64::from(u8::from(t[0] == 1 && t[1] == 1)));
        (base, f, Caps::default())
    }

    #[test]
    fn models_are_ordered() {
        let (base, f, caps) = setup();
        let eta = Rational::new(1, 4);
        let m = 8;
        let mal = malicious_max(&f, &base, eta, m, &caps).unwrap();
        let bin = binomial_max(&f, &base, eta, m, &caps).unwrap();
        let add = adaptive_additive_max(&f, &base, eta, m, &caps).unwrap();
        let non = noniid_max(&f, &base, eta, m, &caps).unwrap();
        let (_, obl) = oblivious_additive_max(&f, &base, eta, 50, &caps).unwrap();
        assert!(mal <= bin + 1e-12);
        assert!(non <= add + 1e-12);
        assert!(obl <= mal + 1e-9);
        assert!((add - bin).abs() <= additive_binomial_gap_bound(2, eta, m) + 1e-12);
    }

    #[test]
    fn constant_policy_is_allowed() {
        let (base, _, _) = setup();
        let mut rng = rand::thread_rng();
        let s = malicious_run(&base, Rational::new(1, 2), 10, &|_| 1, &mut rng).unwrap();
        assert_eq!(s.len(), 10);
        assert!(malicious_run(&base, Rational::from_integer(1), 3, &|_| 7, &mut rng).is_err());
        assert!(noniid_run(&base, Rational::new(1, 2), 10, &[1; 4], &mut rng).is_err());
        assert_eq!(noniid_run(&base, Rational::new(1, 2), 10, &[1; 5], &mut rng).unwrap().len(), 10);
    }
}
