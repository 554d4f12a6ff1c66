#![allow(dead_code)]

use advlab::adversary::TestFunction;
use advlab::combinatorics::{decode, ordered_selections};
use advlab::costs::CostFunction;
use advlab::probkit::{Dist, Domain, JointDist};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_dist(rng: &mut ChaCha8Rng, d: &Domain) -> Dist {
    let w: Vec<f64> = (0..d.len()).map(|_| rng.gen::<f64>() + 1e-3).collect();
    Dist::from_weights(d, w).unwrap()
}

pub fn random_joint(rng: &mut ChaCha8Rng, d: &Domain, arity: usize) -> JointDist {
    let cells = d.len().pow(arity as u32);
    let w: Vec<f64> = (0..cells).map(|_| rng.gen::<f64>().powi(3)).collect();
    let s: f64 = w.iter().sum();
    JointDist::new(d, arity, w.into_iter().map(|v| v / s).collect()).unwrap()
}

/// `E f(n ordered draws without replacement from t)`, by listing every draw.
pub fn subsampled_value(f: &TestFunction, t: &[usize]) -> f64 {
    let picks = ordered_selections(t.len(), f.arity());
    let total: f64 = picks
        .iter()
        .map(|p| f.eval(&p.iter().map(|&i| t[i]).collect::<Vec<_>>()))
        .sum();
    total / picks.len() as f64
}

/// Adaptive maximum by brute force: every clean tuple, every corrupted tuple,
/// budget summed in floating point.
pub fn brute_adaptive_max(f: &TestFunction, rho: &CostFunction, base: &Dist, m: usize) -> f64 {
    let k = base.len();
    let cells = k.pow(m as u32);
    let mut s = vec![0; m];
    let mut t = vec![0; m];
    let mut total = 0.0;
    for i in 0..cells {
        decode(i, k, m, &mut s);
        let p: f64 = s.iter().map(|&x| base.prob(x)).product();
        if p == 0.0 {
            continue;
        }
        let mut best = f64::NEG_INFINITY;
        for j in 0..cells {
            decode(j, k, m, &mut t);
            let cost: f64 = s.iter().zip(&t).map(|(&x, &y)| rho.get(x, y).as_f64()).sum();
            if cost <= m as f64 + 1e-9 {
                best = best.max(subsampled_value(f, &t));
            }
        }
        total += p * best;
    }
    total
}
