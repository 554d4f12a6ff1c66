use crate::adversary::{SubsampledTest, TestFunction};
use crate::costs::CostFunction;
use crate::error::{Error, Result};
use crate::probkit::{nearest_oblivious, tv_slices, Dist, JointDist};
use crate::simulate::grouping::{grouped, grouping_error, GroupedDist};
use crate::simulate::report::{SimulationMethod, SimulationReport};
use crate::simulate::rounding::{correlation_rounding_scan, rounding_bound, rounding_error};

/// Replaces an adaptive sample law by a mixture of i.i.d. laws, each
/// reachable from `base`: pick the core size from the correlation scan,
/// group, then round every goal to the nearest reachable distribution.
pub fn simulate_randomized_oblivious(
    adaptive: &JointDist,
    rho: &CostFunction,
    base: &Dist,
    n: usize,
    k_max: usize,
) -> Result<SimulationReport> {
    base.domain().ensure_same(adaptive.domain(), "simulation")?;
    let m = adaptive.arity();
    let scan = correlation_rounding_scan(adaptive, n, k_max)?;
    let g: GroupedDist = grouped(adaptive, n, scan.k_star)?;
    let d = rho.degree();
    let ge = grouping_error(&g, d, k_max)?;
    let re = rounding_error(&g, rho, base)?;
    let target = adaptive.subsample(n)?;
    let total = mixture_distance(&target, &re.components, n)?;
    Ok(SimulationReport {
        method: SimulationMethod::Grouped,
        n,
        m,
        k: scan.k_star,
        k_max,
        degree: d,
        scan: scan.values.clone(),
        grouping_error: ge.value,
        grouping_bound: ge.bound,
        rounding_error: re.value,
        rounding_error_exact: re.exact,
        rounding_bound: re.bound,
        total_error: total,
        mixture: re.components,
    })
}

/// The mixture over corrupted samples `S'` of the reachable distribution
/// nearest to the empirical law of `S'`. Needs no room for a core, so it
/// also applies when the sample size equals `n`.
pub fn simulate_empirical_oblivious(
    adaptive: &JointDist,
    rho: &CostFunction,
    base: &Dist,
    n: usize,
) -> Result<SimulationReport> {
    base.domain().ensure_same(adaptive.domain(), "simulation")?;
    let m = adaptive.arity();
    if n == 0 || n > m {
        return Err(Error::InvalidParameter(format!("need 1 <= n <= m, got n={n}, m={m}")));
    }
    let q = adaptive.domain().len();
    let mut mixture = Vec::new();
    let mut rounding = 0.0;
    let mut rounding_exact = 0.0;
    let mut grouping = 0.0;
    let mut cells = Vec::new();
    adaptive.for_each_positive(|t, p| cells.push((t.to_vec(), p)));
    for (t, p) in cells {
        let counts = crate::combinatorics::composition_of(&t, q);
        let empirical = Dist::raw(adaptive.domain(), counts.iter().map(|&c| c as f64 / m as f64).collect());
        let (rounded, tv) = nearest_oblivious(rho, base, &empirical)?;
        let emp_n = JointDist::product_power(&empirical, n)?;
        let drawn = draws_without_replacement(&t, q, n);
        grouping += p * tv_slices(&drawn, emp_n.masses());
        rounding += p * n as f64 * tv;
        let rounded_n = JointDist::product_power(&rounded, n)?;
        rounding_exact += p * tv_slices(emp_n.masses(), rounded_n.masses());
        mixture.push((p, rounded));
    }
    let target = adaptive.subsample(n)?;
    let total = mixture_distance(&target, &mixture, n)?;
    Ok(SimulationReport {
        method: SimulationMethod::Empirical,
        n,
        m,
        k: 0,
        k_max: 0,
        degree: rho.degree(),
        scan: Vec::new(),
        grouping_error: grouping,
        grouping_bound: f64::INFINITY,
        rounding_error: rounding,
        rounding_error_exact: rounding_exact,
        rounding_bound: rounding_bound(n, m, rho.degree(), m),
        total_error: total,
        mixture,
    })
}

/// Law of `n` ordered draws without replacement from the entries of `t`.
fn draws_without_replacement(t: &[usize], q: usize, n: usize) -> Vec<f64> {
    let picks = crate::combinatorics::ordered_selections(t.len(), n);
    let w = 1.0 / picks.len() as f64;
    let mut mass = vec![0.0; q.pow(n as u32)];
    for sel in picks {
        mass[sel.iter().fold(0, |acc, &i| acc * q + t[i])] += w;
    }
    mass
}

/// Law of `n` i.i.d. draws from a mixture component chosen by weight.
pub fn mixture_of_products(mixture: &[(f64, Dist)], n: usize) -> Result<JointDist> {
    let parts = mixture
        .iter()
        .map(|(w, d)| Ok((*w, JointDist::product_power(d, n)?)))
        .collect::<Result<Vec<_>>>()?;
    JointDist::mixture(&parts)
}

fn mixture_distance(target: &JointDist, mixture: &[(f64, Dist)], n: usize) -> Result<f64> {
    let mix = mixture_of_products(mixture, n)?;
    Ok(tv_slices(target.masses(), mix.masses()))
}

/// Values of a test under an adaptive sample law and under a mixture of
/// products. The gap can never exceed the total variation between the two
/// laws.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Indistinguishability {
    pub adaptive_value: f64,
    pub mixture_value: f64,
    pub gap: f64,
    pub tv: f64,
}

pub fn indistinguishability_gap(
    adaptive: &JointDist,
    mixture: &[(f64, Dist)],
    f: &TestFunction,
) -> Result<Indistinguishability> {
    let n = f.arity();
    let k = adaptive.domain().len();
    let target = adaptive.subsample(n)?;
    let table = f.table(k, crate::probkit::DEFAULT_JOINT_CAP)?;
    let adaptive_value: f64 = target.masses().iter().zip(&table).map(|(p, v)| p * v).sum();
    let g = SubsampledTest::new(f, k, n, &Default::default())?;
    let mixture_value: f64 = mixture.iter().map(|(w, d)| w * g.iid_value(d.probs())).sum();
    let tv = mixture_distance(&target, mixture, n)?;
    Ok(Indistinguishability {
        adaptive_value,
        mixture_value,
        gap: (adaptive_value - mixture_value).abs(),
        tv,
    })
}
