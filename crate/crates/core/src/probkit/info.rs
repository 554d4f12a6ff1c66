//! Distances and information measures. All logarithms are natural.

use crate::error::{Error, Result};
use crate::probkit::{Dist, JointDist};

/// Total variation distance.
pub fn tv_distance(p: &Dist, q: &Dist) -> Result<f64> {
    p.domain().ensure_same(q.domain(), "tv_distance")?;
    Ok(tv_slices(p.probs(), q.probs()))
}

/// Total variation distance between two joints of equal arity.
pub fn tv_joint(p: &JointDist, q: &JointDist) -> Result<f64> {
    p.domain().ensure_same(q.domain(), "tv_joint")?;
    if p.arity() != q.arity() {
        return Err(Error::InvalidParameter("joint arities differ".into()));
    }
    Ok(tv_slices(p.masses(), q.masses()))
}

pub(crate) fn tv_slices(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Kullback-Leibler divergence `KL(p || q)`; `f64::INFINITY` when `p` puts
/// mass where `q` has none.
pub fn kl_divergence(p: &Dist, q: &Dist) -> Result<f64> {
    p.domain().ensure_same(q.domain(), "kl_divergence")?;
    Ok(kl_slices(p.probs(), q.probs()))
}

pub(crate) fn kl_slices(p: &[f64], q: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a > 0.0 {
            if b <= 0.0 {
                return f64::INFINITY;
            }
            acc += a * (a / b).ln();
        }
    }
    acc.max(0.0)
}

pub fn entropy(p: &Dist) -> f64 {
    -p.probs().iter().filter(|v| **v > 0.0).map(|v| v * v.ln()).sum::<f64>()
}

fn check_blocks(joint: &JointDist, blocks: &[(&str, &[usize], bool)]) -> Result<()> {
    let mut seen = vec![false; joint.arity()];
    for (name, block, may_be_empty) in blocks {
        if block.is_empty() && !may_be_empty {
            return Err(Error::InvalidBlocks(format!("block {name} is empty")));
        }
        for &c in *block {
            if c >= joint.arity() {
                return Err(Error::InvalidBlocks(format!("coordinate {c} out of range")));
            }
            if seen[c] {
                return Err(Error::InvalidBlocks(format!("coordinate {c} appears twice")));
            }
            seen[c] = true;
        }
    }
    Ok(())
}

fn concat(blocks: &[&[usize]]) -> Vec<usize> {
    blocks.iter().flat_map(|b| b.iter().copied()).collect()
}

/// `I(S_a ; S_b)` for disjoint non-empty coordinate blocks.
pub fn mutual_information(joint: &JointDist, a: &[usize], b: &[usize]) -> Result<f64> {
    check_blocks(joint, &[("a", a, false), ("b", b, false)])?;
    Ok(cmi_unchecked(joint, a, b, &[]))
}

/// `I(S_a ; S_b | S_c)`; `c` may be empty.
pub fn conditional_mutual_information(
    joint: &JointDist,
    a: &[usize],
    b: &[usize],
    c: &[usize],
) -> Result<f64> {
    check_blocks(joint, &[("a", a, false), ("b", b, false), ("c", c, true)])?;
    Ok(cmi_unchecked(joint, a, b, c))
}

pub(crate) fn cmi_unchecked(joint: &JointDist, a: &[usize], b: &[usize], c: &[usize]) -> f64 {
    let k = joint.domain().len();
    let (na, nb, nc) = (k.pow(a.len() as u32), k.pow(b.len() as u32), k.pow(c.len() as u32));
    let t = joint.marginal_table(&concat(&[a, b, c]));
    let mut pac = vec![0.0; na * nc];
    let mut pbc = vec![0.0; nb * nc];
    let mut pc = vec![0.0; nc];
    for ia in 0..na {
        for ib in 0..nb {
            for ic in 0..nc {
                let v = t[(ia * nb + ib) * nc + ic];
                pac[ia * nc + ic] += v;
                pbc[ib * nc + ic] += v;
                pc[ic] += v;
            }
        }
    }
    let mut acc = 0.0;
    for ia in 0..na {
        for ib in 0..nb {
            for ic in 0..nc {
                let v = t[(ia * nb + ib) * nc + ic];
                if v > 0.0 {
                    acc += v * (v * pc[ic] / (pac[ia * nc + ic] * pbc[ib * nc + ic])).ln();
                }
            }
        }
    }
    acc.max(0.0)
}

/// Total correlation of a block: KL from its joint law to the product of its
/// single-coordinate marginals.
pub fn total_correlation(joint: &JointDist, block: &[usize]) -> Result<f64> {
    conditional_total_correlation(joint, block, &[])
}

/// Expected total correlation of block `a` given the value of block `b`.
pub fn conditional_total_correlation(joint: &JointDist, a: &[usize], b: &[usize]) -> Result<f64> {
    check_blocks(joint, &[("a", a, false), ("b", b, true)])?;
    Ok(ctc_unchecked(joint, a, b))
}

pub(crate) fn ctc_unchecked(joint: &JointDist, a: &[usize], b: &[usize]) -> f64 {
    let k = joint.domain().len();
    let na = k.pow(a.len() as u32);
    let nb = k.pow(b.len() as u32);
    let t = joint.marginal_table(&concat(&[a, b]));
    let mut pb = vec![0.0; nb];
    // single[i][x * nb + ib] = P(a_i = x, b = ib)
    let mut single = vec![vec![0.0; k * nb]; a.len()];
    let mut tup = vec![0usize; a.len()];
    for ia in 0..na {
        crate::combinatorics::decode(ia, k, a.len(), &mut tup);
        for ib in 0..nb {
            let v = t[ia * nb + ib];
            if v == 0.0 {
                continue;
            }
            pb[ib] += v;
            for (i, &x) in tup.iter().enumerate() {
                single[i][x * nb + ib] += v;
            }
        }
    }
    let mut acc = 0.0;
    for ia in 0..na {
        crate::combinatorics::decode(ia, k, a.len(), &mut tup);
        for ib in 0..nb {
            let v = t[ia * nb + ib];
            if v == 0.0 {
                continue;
            }
            // ln [ P(a|b) / prod_i P(a_i|b) ]
            let mut ln = (v / pb[ib]).ln();
            for (i, &x) in tup.iter().enumerate() {
                ln -= (single[i][x * nb + ib] / pb[ib]).ln();
            }
            acc += v * ln;
        }
    }
    acc.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probkit::Domain;

    fn bits() -> Domain {
        Domain::range(2).unwrap()
    }

    fn copies(n: usize) -> JointDist {
        JointDist::from_weights(&bits(), n, |t| if t.iter().all(|&x| x == t[0]) { 1.0 } else { 0.0 })
            .unwrap()
    }

    #[test]
    fn tv_of_uniform_and_skewed_bit() {
        let u = Dist::uniform(&bits());
        let q = Dist::new(&bits(), vec![0.25, 0.75]).unwrap();
        assert!((tv_distance(&u, &q).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn kl_of_bernoullis() {
        let p = Dist::uniform(&bits());
        let q = Dist::new(&bits(), vec![0.75, 0.25]).unwrap();
        let expected = 2f64.ln() - 0.5 * 3f64.ln();
        assert!((kl_divergence(&p, &q).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 0.143841).abs() < 1e-6);
        let d = Dist::point(&bits(), 0).unwrap();
        assert_eq!(kl_divergence(&p, &d).unwrap(), f64::INFINITY);
    }

    #[test]
    fn copied_bits_share_one_nat_of_log_two() {
        let j = copies(2);
        assert!((mutual_information(&j, &[0], &[1]).unwrap() - 2f64.ln()).abs() < 1e-12);
        assert!(mutual_information(&j, &[0], &[0]).is_err());
        assert!(mutual_information(&j, &[], &[1]).is_err());
    }

    #[test]
    fn three_copies() {
        let j = copies(3);
        assert!(conditional_mutual_information(&j, &[0], &[1], &[2]).unwrap().abs() < 1e-12);
        assert!((total_correlation(&j, &[0, 1, 2]).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-12);
        assert!(conditional_total_correlation(&j, &[0, 1], &[2]).unwrap().abs() < 1e-12);
    }
}
