use crate::adversary::StrategyTable;
use crate::costs::CostFunction;
use crate::error::{Error, Result};
use crate::probkit::{nearest_oblivious, tv_slices, Dist, JointDist};
use crate::simulate::blocks::{
    block_correlation, representative_correlation, representative_information, single_coordinate_information,
};
use crate::simulate::grouping::{goal_of, GroupedDist};

/// Result of scanning core sizes for the one that makes the sample look
/// closest to independent.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundingScan {
    /// Smallest minimiser of the correlation over `0..=k_max`.
    pub k_star: usize,
    /// `Cor_S(n | k)` for `k = 0..=k_max`.
    pub values: Vec<f64>,
    /// `I_S(1; n + k_max - 1)`.
    pub information: f64,
    /// `n (n - 1) / (2 (k_max + 1)) * information`.
    pub rhs: f64,
    /// True when a single representative block choice was used.
    pub used_shortcut: bool,
}

impl RoundingScan {
    pub fn min_value(&self) -> f64 {
        self.values[self.k_star]
    }

    /// `rhs - min_k Cor_S(n | k)`; non-negative when the bound holds.
    pub fn residual(&self) -> f64 {
        self.rhs - self.min_value()
    }
}

const TIE_TOLERANCE: f64 = 1e-12;

/// Computes `Cor_S(n | k)` for every `k <= k_max` and the information bound
/// on their minimum.
pub fn correlation_rounding_scan(joint: &JointDist, n: usize, k_max: usize) -> Result<RoundingScan> {
    let m = joint.arity();
    if n == 0 || n + k_max > m {
        return Err(Error::InvalidParameter(format!("need 1 <= n and n + k_max <= m, got n={n}, k_max={k_max}, m={m}")));
    }
    let shortcut = joint.is_exchangeable(1e-15);
    let r = n + k_max - 1;
    let (values, information) = if shortcut {
        (
            (0..=k_max).map(|k| representative_correlation(joint, n, k)).collect::<Vec<_>>(),
            representative_information(joint, r),
        )
    } else {
        (
            (0..=k_max).map(|k| block_correlation(joint, n, k)).collect::<Result<Vec<_>>>()?,
            single_coordinate_information(joint, r)?,
        )
    };
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let k_star = values.iter().position(|&v| v <= min + TIE_TOLERANCE).expect("scan is non-empty");
    let rhs = (n * (n - 1)) as f64 / (2.0 * (k_max + 1) as f64) * information;
    Ok(RoundingScan {
        k_star,
        values,
        information,
        rhs,
        used_shortcut: shortcut,
    })
}

/// Average information one corrupted coordinate carries about `r` others,
/// against `(m / (m - r)) ln d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowDegreeCheck {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn low_degree_info_check(
    base: &Dist,
    strategy: &StrategyTable,
    rho: &CostFunction,
    r: usize,
) -> Result<LowDegreeCheck> {
    let m = strategy.sample_size();
    if r == 0 || r >= m {
        return Err(Error::InvalidParameter(format!("need 1 <= r < m, got r={r}, m={m}")));
    }
    let joint = strategy.pushforward(base)?;
    let lhs = single_coordinate_information(&joint, r)?;
    let rhs = m as f64 / (m - r) as f64 * (rho.degree() as f64).ln();
    Ok(LowDegreeCheck { lhs, rhs })
}

/// Cost of replacing each goal by the nearest reachable distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundingError {
    /// `E_c [n * tv(D'(c), goal(c))]`, an upper bound on the product distance.
    pub value: f64,
    /// `E_c tv(D'(c)^n, goal(c)^n)`.
    pub exact: f64,
    /// `2 n sqrt(k ln d / m)`.
    pub bound: f64,
    /// `(probability, rounded distribution)` per core with positive mass.
    pub components: Vec<(f64, Dist)>,
}

pub fn rounding_bound(n: usize, k: usize, degree: usize, m: usize) -> f64 {
    2.0 * n as f64 * (k as f64 * (degree as f64).ln() / m as f64).sqrt()
}

pub fn rounding_error(grouped: &GroupedDist, rho: &CostFunction, base: &Dist) -> Result<RoundingError> {
    if 2 * grouped.k() > grouped.m() {
        return Err(Error::InvalidParameter(format!(
            "core size {} exceeds half the sample size {}",
            grouped.k(),
            grouped.m()
        )));
    }
    let n = grouped.n();
    let mut value = 0.0;
    let mut exact = 0.0;
    let mut components = Vec::new();
    for c in grouped.cores() {
        let goal = goal_of(&c);
        let (rounded, tv) = nearest_oblivious(rho, base, &goal)?;
        value += c.prob * n as f64 * tv;
        let a = JointDist::product_power(&goal, n)?;
        let b = JointDist::product_power(&rounded, n)?;
        exact += c.prob * tv_slices(a.masses(), b.masses());
        components.push((c.prob, rounded));
    }
    Ok(RoundingError {
        value,
        exact,
        bound: rounding_bound(n, grouped.k(), rho.degree(), grouped.m()),
        components,
    })
}
