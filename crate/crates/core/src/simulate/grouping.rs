use crate::combinatorics::ordered_selections;
use crate::error::{Error, Result};
use crate::probkit::{check_mass, tv_slices, Dist, Domain, JointDist};

/// Joint law of `(S, c)`: `n + k` distinct positions of the adaptive sample,
/// drawn uniformly in order, split into a sample `S` of size `n` followed by
/// a core `c` of size `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupedDist {
    n: usize,
    k: usize,
    m: usize,
    joint: JointDist,
    /// True when the input was exchangeable and a single block choice was used.
    pub used_shortcut: bool,
}

/// Groups an adaptive sample law into sample and core.
pub fn grouped(adaptive: &JointDist, n: usize, k: usize) -> Result<GroupedDist> {
    let m = adaptive.arity();
    if n == 0 || n + k > m {
        return Err(Error::InvalidParameter(format!("need 1 <= n and n + k <= m, got n={n}, k={k}, m={m}")));
    }
    let width = n + k;
    let (joint, used_shortcut) = if adaptive.is_exchangeable(1e-15) {
        (adaptive.marginal(&(0..width).collect::<Vec<_>>())?, true)
    } else {
        let picks = ordered_selections(m, width);
        let w = 1.0 / picks.len() as f64;
        let mut mass = vec![0.0; adaptive.domain().len().pow(width as u32)];
        for sel in &picks {
            for (a, b) in mass.iter_mut().zip(adaptive.marginal_table(sel)) {
                *a += w * b;
            }
        }
        (JointDist::new(adaptive.domain(), width, mass)?, false)
    };
    Ok(GroupedDist {
        n,
        k,
        m,
        joint,
        used_shortcut,
    })
}

/// One value of the core with its probability and the conditional law of `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct Core {
    pub core: Vec<usize>,
    pub prob: f64,
    pub sample_law: JointDist,
}

impl GroupedDist {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn domain(&self) -> &Domain {
        self.joint.domain()
    }

    pub fn joint(&self) -> &JointDist {
        &self.joint
    }

    /// Law of `S` alone.
    pub fn sample_law(&self) -> JointDist {
        self.joint.marginal(&(0..self.n).collect::<Vec<_>>()).expect("valid coordinates")
    }

    /// Every core value with positive probability, in lexicographic order.
    pub fn cores(&self) -> Vec<Core> {
        let q = self.domain().len();
        let nc = q.pow(self.k as u32);
        let ns = q.pow(self.n as u32);
        let mass = self.joint.masses();
        let mut out = Vec::new();
        let mut core = vec![0; self.k];
        for ic in 0..nc {
            let prob: f64 = (0..ns).map(|is| mass[is * nc + ic]).sum();
            if prob <= 0.0 {
                continue;
            }
            crate::combinatorics::decode(ic, q, self.k, &mut core);
            let cond: Vec<f64> = (0..ns).map(|is| mass[is * nc + ic] / prob).collect();
            debug_assert!(check_mass(&cond).is_ok());
            out.push(Core {
                core: core.clone(),
                prob,
                sample_law: JointDist::new(self.domain(), self.n, cond).expect("conditional law is normalised"),
            });
        }
        out
    }

    /// `E[Unif(S) | c]` for the given core value.
    pub fn goal(&self, core: &[usize]) -> Result<Dist> {
        self.cores()
            .into_iter()
            .find(|c| c.core == core)
            .map(|c| goal_of(&c))
            .ok_or_else(|| Error::InvalidParameter(format!("core {core:?} has probability zero")))
    }
}

pub(crate) fn goal_of(c: &Core) -> Dist {
    c.sample_law.average_marginal()
}

/// `E[Unif(S) | c]`.
pub fn goal_distribution(grouped: &GroupedDist, core: &[usize]) -> Result<Dist> {
    grouped.goal(core)
}

/// Expected distance between the conditional law of `S` and the `n`-fold
/// product of its goal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupingError {
    pub value: f64,
    /// `sqrt(n^2 ln d / (2 k_max))`, which bounds the value at the best
    /// `k <= k_max`.
    pub bound: f64,
}

pub fn grouping_bound(n: usize, degree: usize, k_max: usize) -> f64 {
    if k_max == 0 {
        return f64::INFINITY;
    }
    ((n * n) as f64 * (degree as f64).ln() / (2.0 * k_max as f64)).sqrt()
}

pub fn grouping_error(grouped: &GroupedDist, degree: usize, k_max: usize) -> Result<GroupingError> {
    let mut value = 0.0;
    for c in grouped.cores() {
        let goal = goal_of(&c);
        let prod = JointDist::product_power(&goal, grouped.n)?;
        value += c.prob * tv_slices(c.sample_law.masses(), prod.masses());
    }
    Ok(GroupingError {
        value,
        bound: grouping_bound(grouped.n, degree, k_max),
    })
}
