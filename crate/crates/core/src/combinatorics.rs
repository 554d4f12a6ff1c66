//! Small enumeration helpers shared by the exact solvers.

/// All vectors of `parts` non-negative integers summing to `total`, in
/// lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0usize; parts];
    fill(total, 0, &mut cur, &mut out);
    out
}

fn fill(left: usize, pos: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for v in 0..=left {
        cur[pos] = v;
        fill(left - v, pos + 1, cur, out);
    }
}

/// Number of compositions of `total` into `parts` parts.
pub fn composition_count(total: usize, parts: usize) -> f64 {
    if parts == 0 {
        return if total == 0 { 1.0 } else { 0.0 };
    }
    binomial(total + parts - 1, parts - 1)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// Falling factorial `n (n-1) ... (n-k+1)` as a float.
pub fn falling(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).map(|i| (n - i) as f64).product()
}

/// Multinomial probability of the count vector `counts` under `probs`.
pub fn multinomial_pmf(counts: &[usize], probs: &[f64]) -> f64 {
    let total: usize = counts.iter().sum();
    let mut ln = ln_factorial(total);
    for (&c, &p) in counts.iter().zip(probs) {
        if c == 0 {
            continue;
        }
        if p <= 0.0 {
            return 0.0;
        }
        ln += c as f64 * p.ln() - ln_factorial(c);
    }
    ln.exp()
}

/// Binomial pmf `P[Bin(n, p) = k]`.
pub fn binomial_pmf(n: usize, k: usize, p: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    if p <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p >= 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    let ln = ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
        + k as f64 * p.ln()
        + (n - k) as f64 * (1.0 - p).ln();
    ln.exp()
}

/// Ordered tuples of `k` distinct indices from `0..m`, lexicographic.
pub fn ordered_selections(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut used = vec![false; m];
    ordered_rec(m, k, &mut cur, &mut used, &mut out);
    out
}

fn ordered_rec(
    m: usize,
    k: usize,
    cur: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in 0..m {
        if !used[i] {
            used[i] = true;
            cur.push(i);
            ordered_rec(m, k, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
}

/// Increasing `k`-subsets of `pool`, lexicographic.
pub fn subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    subsets_rec(pool, k, 0, &mut cur, &mut out);
    out
}

fn subsets_rec(
    pool: &[usize],
    k: usize,
    start: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..pool.len() {
        if pool.len() - i < k - cur.len() {
            break;
        }
        cur.push(pool[i]);
        subsets_rec(pool, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Decode a row-major index (last coordinate fastest) into a tuple.
pub fn decode(mut index: usize, base: usize, arity: usize, out: &mut [usize]) {
    for slot in out[..arity].iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
}

pub fn encode(tuple: &[usize], base: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * base + x)
}

/// Count vector of a tuple over `base` symbols.
pub fn composition_of(tuple: &[usize], base: usize) -> Vec<usize> {
    let mut c = vec![0; base];
    for &x in tuple {
        c[x] += 1;
    }
    c
}

/// `base^arity` as a float, for cap checks that must not overflow.
pub fn power(base: usize, arity: usize) -> f64 {
    (base as f64).powi(arity as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts_match_enumeration() {
        for total in 0..6 {
            for parts in 1..4 {
                let v = compositions(total, parts);
                assert_eq!(v.len() as f64, composition_count(total, parts));
                assert!(v.iter().all(|c| c.iter().sum::<usize>() == total));
            }
        }
    }

    #[test]
    fn multinomial_sums_to_one() {
        let p = [0.2, 0.3, 0.5];
        let s: f64 = compositions(7, 3).iter().map(|c| multinomial_pmf(c, &p)).sum();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn selections_and_subsets_have_expected_sizes() {
        assert_eq!(ordered_selections(5, 2).len(), 20);
        assert_eq!(subsets(&[0, 1, 2, 3, 4], 2).len(), 10);
        assert_eq!(subsets(&[1, 3], 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn encode_inverts_decode() {
        let mut t = [0usize; 3];
        for i in 0..27 {
            decode(i, 3, 3, &mut t);
            assert_eq!(encode(&t, 3), i);
        }
    }
}
