//! Information quantities averaged over uniformly random disjoint blocks of
//! coordinates.

use crate::combinatorics::subsets;
use crate::error::{Error, Result};
use crate::probkit::{cmi_unchecked, ctc_unchecked, JointDist};

/// Calls `visit` on every tuple of pairwise disjoint subsets of `0..m` with
/// the given sizes; returns the number of tuples.
pub(crate) fn for_each_blocks(m: usize, sizes: &[usize], mut visit: impl FnMut(&[Vec<usize>])) -> usize {
    let mut chosen = Vec::with_capacity(sizes.len());
    let mut count = 0;
    rec(m, sizes, &mut chosen, &mut count, &mut visit);
    count
}

fn rec(m: usize, sizes: &[usize], chosen: &mut Vec<Vec<usize>>, count: &mut usize, visit: &mut impl FnMut(&[Vec<usize>])) {
    if chosen.len() == sizes.len() {
        *count += 1;
        visit(chosen);
        return;
    }
    let free: Vec<usize> = (0..m).filter(|i| !chosen.iter().any(|b| b.contains(i))).collect();
    for b in subsets(&free, sizes[chosen.len()]) {
        chosen.push(b);
        rec(m, sizes, chosen, count, visit);
        chosen.pop();
    }
}

fn check_sizes(joint: &JointDist, sizes: &[usize], nonempty: usize) -> Result<()> {
    let total: usize = sizes.iter().sum();
    if total > joint.arity() {
        return Err(Error::InvalidBlocks(format!(
            "blocks of total size {total} exceed {} coordinates",
            joint.arity()
        )));
    }
    if sizes[..nonempty].contains(&0) {
        return Err(Error::InvalidBlocks("block sizes must be positive".into()));
    }
    Ok(())
}

fn average(joint: &JointDist, sizes: &[usize], f: impl Fn(&[Vec<usize>]) -> f64) -> f64 {
    let mut acc = 0.0;
    let n = for_each_blocks(joint.arity(), sizes, |b| acc += f(b));
    acc / n as f64
}

/// Average of `I(S_A ; S_B)` over disjoint blocks with `|A| = a`, `|B| = b`.
pub fn block_mutual_information(joint: &JointDist, a: usize, b: usize) -> Result<f64> {
    check_sizes(joint, &[a, b], 2)?;
    Ok(average(joint, &[a, b], |bl| cmi_unchecked(joint, &bl[0], &bl[1], &[])))
}

/// Average of `I(S_A ; S_B | S_C)` over disjoint blocks of sizes `a, b, c`.
pub fn block_conditional_mutual_information(joint: &JointDist, a: usize, b: usize, c: usize) -> Result<f64> {
    check_sizes(joint, &[a, b, c], 2)?;
    Ok(average(joint, &[a, b, c], |bl| cmi_unchecked(joint, &bl[0], &bl[1], &bl[2])))
}

/// Average over disjoint blocks of the total correlation of `S_A` given `S_B`.
pub fn block_correlation(joint: &JointDist, a: usize, b: usize) -> Result<f64> {
    check_sizes(joint, &[a, b], 1)?;
    Ok(average(joint, &[a, b], |bl| ctc_unchecked(joint, &bl[0], &bl[1])))
}

/// `I_S(1; r)`, the average information one coordinate carries about `r` others.
pub fn single_coordinate_information(joint: &JointDist, r: usize) -> Result<f64> {
    if r == 0 {
        return Ok(0.0);
    }
    block_mutual_information(joint, 1, r)
}

/// Block quantities using one representative block choice; valid when the
/// joint is exchangeable.
pub(crate) fn representative_correlation(joint: &JointDist, a: usize, b: usize) -> f64 {
    let a_block: Vec<usize> = (0..a).collect();
    let b_block: Vec<usize> = (a..a + b).collect();
    ctc_unchecked(joint, &a_block, &b_block)
}

pub(crate) fn representative_information(joint: &JointDist, r: usize) -> f64 {
    if r == 0 {
        return 0.0;
    }
    let rest: Vec<usize> = (1..=r).collect();
    cmi_unchecked(joint, &[0], &rest, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_tuple_counts() {
        // 5!/(1! 2! 2!) = 30
        assert_eq!(for_each_blocks(5, &[1, 2], |_| {}), 30);
        assert_eq!(for_each_blocks(4, &[2, 0], |_| {}), 6);
    }
}
