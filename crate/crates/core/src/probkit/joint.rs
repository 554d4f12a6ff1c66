use crate::combinatorics::{decode, encode, ordered_selections, power};
use crate::error::{Error, Result};
use crate::probkit::check_mass;
use crate::probkit::{Dist, Domain};

/// Default cap on `arity * |X|^arity` for dense joint tables.
pub const DEFAULT_JOINT_CAP: f64 = 1e7;

/// A distribution over `X^arity`, stored densely in row-major order with the
/// last coordinate varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDist {
    domain: Domain,
    arity: usize,
    mass: Vec<f64>,
}

pub(crate) fn check_cap(domain_size: usize, arity: usize, cap: f64) -> Result<()> {
    let needed = arity.max(1) as f64 * power(domain_size, arity);
    if needed > cap {
        return Err(Error::CapExceeded {
            what: "joint table",
            needed,
            cap,
        });
    }
    Ok(())
}

impl JointDist {
    pub fn new(domain: &Domain, arity: usize, mass: Vec<f64>) -> Result<JointDist> {
        Self::with_cap(domain, arity, mass, DEFAULT_JOINT_CAP)
    }

    pub fn with_cap(domain: &Domain, arity: usize, mass: Vec<f64>, cap: f64) -> Result<JointDist> {
        check_cap(domain.len(), arity, cap)?;
        let cells = domain.len().pow(arity as u32);
        if mass.len() != cells {
            return Err(Error::InvalidDistribution(format!(
                "joint table has {} cells, expected {cells}",
                mass.len()
            )));
        }
        check_mass(&mass)?;
        Ok(JointDist {
            domain: domain.clone(),
            arity,
            mass,
        })
    }

    /// Builds a joint table from a (not necessarily normalised) weight function.
    pub fn from_weights(
        domain: &Domain,
        arity: usize,
        mut weight: impl FnMut(&[usize]) -> f64,
    ) -> Result<JointDist> {
        check_cap(domain.len(), arity, DEFAULT_JOINT_CAP)?;
        let k = domain.len();
        let cells = k.pow(arity as u32);
        let mut t = vec![0usize; arity];
        let mut mass = Vec::with_capacity(cells);
        for i in 0..cells {
            decode(i, k, arity, &mut t);
            mass.push(weight(&t));
        }
        let s: f64 = mass.iter().sum();
        if !(s > 0.0) {
            return Err(Error::InvalidDistribution("joint weights have zero total".into()));
        }
        mass.iter_mut().for_each(|v| *v /= s);
        JointDist::new(domain, arity, mass)
    }

    /// The law of `n` independent draws from `p`.
    pub fn product_power(p: &Dist, n: usize) -> Result<JointDist> {
        check_cap(p.len(), n, DEFAULT_JOINT_CAP)?;
        let k = p.len();
        let mut mass = vec![1.0f64];
        for _ in 0..n {
            let mut next = Vec::with_capacity(mass.len() * k);
            for &m in &mass {
                next.extend(p.probs().iter().map(|q| m * q));
            }
            mass = next;
        }
        Ok(JointDist {
            domain: p.domain().clone(),
            arity: n,
            mass,
        })
    }

    /// A finite mixture of joints sharing domain and arity.
    pub fn mixture(parts: &[(f64, JointDist)]) -> Result<JointDist> {
        let first = &parts
            .first()
            .ok_or_else(|| Error::InvalidDistribution("empty mixture".into()))?
            .1;
        let mut mass = vec![0.0; first.mass.len()];
        for (w, j) in parts {
            first.domain.ensure_same(&j.domain, "mixture")?;
            if j.arity != first.arity {
                return Err(Error::InvalidDistribution("mixture arities differ".into()));
            }
            for (a, b) in mass.iter_mut().zip(&j.mass) {
                *a += w * b;
            }
        }
        JointDist::new(&first.domain, first.arity, mass)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    pub fn mass_of(&self, tuple: &[usize]) -> f64 {
        self.mass[encode(tuple, self.domain.len())]
    }

    /// Calls `visit(tuple, mass)` for every cell with positive mass.
    pub fn for_each_positive(&self, mut visit: impl FnMut(&[usize], f64)) {
        let mut t = vec![0usize; self.arity];
        for (i, &m) in self.mass.iter().enumerate() {
            if m > 0.0 {
                decode(i, self.domain.len(), self.arity, &mut t);
                visit(&t, m);
            }
        }
    }

    /// Joint law of the listed coordinates, in the listed order.
    pub fn marginal(&self, coords: &[usize]) -> Result<JointDist> {
        for (i, &c) in coords.iter().enumerate() {
            if c >= self.arity || coords[..i].contains(&c) {
                return Err(Error::InvalidBlocks(format!("bad coordinate list {coords:?}")));
            }
        }
        Ok(JointDist {
            domain: self.domain.clone(),
            arity: coords.len(),
            mass: self.marginal_table(coords),
        })
    }

    /// Unchecked marginal as a flat table.
    pub(crate) fn marginal_table(&self, coords: &[usize]) -> Vec<f64> {
        let k = self.domain.len();
        let mut out = vec![0.0; k.pow(coords.len() as u32)];
        let mut t = vec![0usize; self.arity];
        for (i, &m) in self.mass.iter().enumerate() {
            if m == 0.0 {
                continue;
            }
            decode(i, k, self.arity, &mut t);
            let j = coords.iter().fold(0, |acc, &c| acc * k + t[c]);
            out[j] += m;
        }
        out
    }

    pub fn coordinate(&self, i: usize) -> Result<Dist> {
        let m = self.marginal(&[i])?;
        Dist::new(&self.domain, m.mass)
    }

    /// Average of the single-coordinate marginals.
    pub fn average_marginal(&self) -> Dist {
        let k = self.domain.len();
        let mut p = vec![0.0; k];
        for i in 0..self.arity {
            for (a, b) in p.iter_mut().zip(self.marginal_table(&[i])) {
                *a += b / self.arity as f64;
            }
        }
        Dist::raw(&self.domain, p)
    }

    /// True when the table is invariant under swapping adjacent coordinates.
    pub fn is_exchangeable(&self, tol: f64) -> bool {
        let k = self.domain.len();
        let mut t = vec![0usize; self.arity];
        for (i, &m) in self.mass.iter().enumerate() {
            decode(i, k, self.arity, &mut t);
            for s in 0..self.arity.saturating_sub(1) {
                t.swap(s, s + 1);
                let other = self.mass[encode(&t, k)];
                t.swap(s, s + 1);
                if (other - m).abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Law of `n` coordinates drawn uniformly without replacement, in draw order.
    pub fn subsample(&self, n: usize) -> Result<JointDist> {
        if n > self.arity || n == 0 {
            return Err(Error::InvalidParameter(format!(
                "cannot subsample {n} of {} coordinates",
                self.arity
            )));
        }
        if self.is_exchangeable(1e-15) {
            return self.marginal(&(0..n).collect::<Vec<_>>());
        }
        let picks = ordered_selections(self.arity, n);
        let w = 1.0 / picks.len() as f64;
        let mut mass = vec![0.0; self.domain.len().pow(n as u32)];
        for sel in &picks {
            for (a, b) in mass.iter_mut().zip(self.marginal_table(sel)) {
                *a += w * b;
            }
        }
        JointDist::new(&self.domain, n, mass)
    }

    /// Pushes the table through a tuple map into a table of arity `out_arity`.
    pub fn push_forward(
        &self,
        out_domain: &Domain,
        out_arity: usize,
        mut map: impl FnMut(&[usize]) -> Vec<usize>,
    ) -> Result<JointDist> {
        check_cap(out_domain.len(), out_arity, DEFAULT_JOINT_CAP)?;
        let mut mass = vec![0.0; out_domain.len().pow(out_arity as u32)];
        let mut err = None;
        self.for_each_positive(|t, m| {
            let image = map(t);
            if image.len() != out_arity || image.iter().any(|&x| x >= out_domain.len()) {
                err = Some(Error::InvalidParameter(format!("map produced invalid tuple {image:?}")));
                return;
            }
            mass[encode(&image, out_domain.len())] += m;
        });
        if let Some(e) = err {
            return Err(e);
        }
        JointDist::new(out_domain, out_arity, mass)
    }

    /// Expectation of `f` under this joint.
    pub fn expect(&self, mut f: impl FnMut(&[usize]) -> f64) -> f64 {
        let mut acc = 0.0;
        self.for_each_positive(|t, m| acc += m * f(t));
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits() -> Domain {
        Domain::range(2).unwrap()
    }

    #[test]
    fn product_power_is_iid() {
        let p = Dist::new(&bits(), vec![0.25, 0.75]).unwrap();
        let j = JointDist::product_power(&p, 3).unwrap();
        assert!((j.mass_of(&[1, 0, 1]) - 0.75 * 0.25 * 0.75).abs() < 1e-15);
        assert!(j.is_exchangeable(1e-15));
    }

    #[test]
    fn marginal_orders_coordinates() {
        let j = JointDist::from_weights(&bits(), 2, |t| if t == [0, 1] { 1.0 } else { 0.0 }).unwrap();
        let swapped = j.marginal(&[1, 0]).unwrap();
        assert_eq!(swapped.mass_of(&[1, 0]), 1.0);
        assert!(j.marginal(&[0, 0]).is_err());
    }

    #[test]
    fn subsample_averages_positions() {
        let j = JointDist::from_weights(&bits(), 2, |t| if t == [0, 1] { 1.0 } else { 0.0 }).unwrap();
        let s = j.subsample(1).unwrap();
        assert_eq!(s.masses(), &[0.5, 0.5]);
    }

    #[test]
    fn cap_is_enforced() {
        let d = Domain::range(10).unwrap();
        let p = Dist::uniform(&d);
        assert!(matches!(JointDist::product_power(&p, 8), Err(Error::CapExceeded { .. })));
    }
}
