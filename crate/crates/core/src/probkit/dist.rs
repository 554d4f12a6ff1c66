use crate::error::{Error, Result};
use crate::probkit::Domain;

pub const MASS_TOLERANCE: f64 = 1e-9;

/// A probability distribution over a finite domain.
#[derive(Clone, Debug, PartialEq)]
pub struct Dist {
    domain: Domain,
    p: Vec<f64>,
}

pub(crate) fn check_mass(p: &[f64]) -> Result<()> {
    if let Some(v) = p.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::InvalidDistribution(format!("entry {v} is not a probability")));
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::InvalidDistribution(format!("mass sums to {s}")));
    }
    Ok(())
}

impl Dist {
    pub fn new(domain: &Domain, p: Vec<f64>) -> Result<Dist> {
        if p.len() != domain.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} entries for a domain of {} points",
                p.len(),
                domain.len()
            )));
        }
        check_mass(&p)?;
        Ok(Dist {
            domain: domain.clone(),
            p,
        })
    }

    /// Normalises non-negative weights.
    pub fn from_weights(domain: &Domain, w: Vec<f64>) -> Result<Dist> {
        let s: f64 = w.iter().sum();
        if !(s > 0.0) || w.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidDistribution("weights must be non-negative with positive sum".into()));
        }
        Dist::new(domain, w.into_iter().map(|v| v / s).collect())
    }

    pub fn uniform(domain: &Domain) -> Dist {
        let n = domain.len();
        Dist {
            domain: domain.clone(),
            p: vec![1.0 / n as f64; n],
        }
    }

    /// Uniform over the non-null points of `domain`.
    pub fn uniform_base(domain: &Domain) -> Dist {
        let n = domain.len() - usize::from(domain.is_augmented());
        let mut p = vec![1.0 / n as f64; n];
        p.resize(domain.len(), 0.0);
        Dist {
            domain: domain.clone(),
            p,
        }
    }

    pub fn point(domain: &Domain, i: usize) -> Result<Dist> {
        if i >= domain.len() {
            return Err(Error::InvalidDistribution(format!("point {i} outside domain")));
        }
        let mut p = vec![0.0; domain.len()];
        p[i] = 1.0;
        Ok(Dist {
            domain: domain.clone(),
            p,
        })
    }

    /// The same distribution on the augmented domain, with no null mass.
    pub fn lift(&self, augmented: &Domain) -> Result<Dist> {
        if !augmented.is_augmented() || augmented.base()? != self.domain {
            return Err(Error::DomainMismatch("lift target must augment this domain".into()));
        }
        let mut p = self.p.clone();
        p.push(0.0);
        Ok(Dist {
            domain: augmented.clone(),
            p,
        })
    }

    /// Mixes `weight` of `other` into this distribution.
    pub fn mix(&self, other: &Dist, weight: f64) -> Result<Dist> {
        self.domain.ensure_same(&other.domain, "mix")?;
        let p = self
            .p
            .iter()
            .zip(&other.p)
            .map(|(a, b)| (1.0 - weight) * a + weight * b)
            .collect();
        Dist::new(&self.domain, p)
    }

    /// Skips validation; callers guarantee a normalised vector.
    pub(crate) fn raw(domain: &Domain, p: Vec<f64>) -> Dist {
        debug_assert_eq!(p.len(), domain.len());
        Dist {
            domain: domain.clone(),
            p,
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn probs(&self) -> &[f64] {
        &self.p
    }

    pub fn prob(&self, i: usize) -> f64 {
        self.p[i]
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Draws one point by inversion.
    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for (i, &v) in self.p.iter().enumerate() {
            acc += v;
            if u < acc {
                return i;
            }
        }
        self.p.iter().rposition(|&v| v > 0.0).unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_mass() {
        let d = Domain::range(2).unwrap();
        assert!(Dist::new(&d, vec![0.5, 0.6]).is_err());
        assert!(Dist::new(&d, vec![-0.1, 1.1]).is_err());
        assert!(Dist::new(&d, vec![0.5]).is_err());
        assert!(Dist::new(&d, vec![0.5, 0.5 + 1e-10]).is_ok());
    }

    #[test]
    fn uniform_base_skips_null() {
        let d = Domain::range(2).unwrap().augment().unwrap();
        assert_eq!(Dist::uniform_base(&d).probs(), &[0.5, 0.5, 0.0]);
    }
}
