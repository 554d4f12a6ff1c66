use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::costs::{Cost, CostFunction, Rational};
use crate::error::{Error, Result};
use crate::probkit::Domain;

/// Checks `0 < eta <= 1`.
pub fn validate_eta(eta: Rational) -> Result<()> {
    if eta <= Rational::zero() || eta > Rational::one() {
        return Err(Error::InvalidParameter(format!("eta must lie in (0, 1], got {eta}")));
    }
    Ok(())
}

/// Closest rational with a small denominator; `0.5` becomes `1/2`.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational64::approximate_float(x)
        .ok_or_else(|| Error::InvalidParameter(format!("{x} has no rational approximation")))
}

fn inverse(eta: Rational) -> Result<Cost> {
    validate_eta(eta)?;
    Ok(Cost::Exact(eta.recip()))
}

/// Every change costs `1/eta`.
pub fn build_strong(domain: &Domain, eta: Rational) -> Result<CostFunction> {
    let c = inverse(eta)?;
    CostFunction::from_fn(domain, |x, y| if x == y { Cost::zero() } else { c })
}

/// Inputs paired with labels; points of the product are labelled `x|y`.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledDomain {
    pub inputs: Domain,
    pub labels: Domain,
}

impl LabeledDomain {
    pub fn new(inputs: &Domain, labels: &Domain) -> LabeledDomain {
        LabeledDomain {
            inputs: inputs.clone(),
            labels: labels.clone(),
        }
    }

    /// The product domain, input-major.
    pub fn product(&self) -> Result<Domain> {
        let mut out = Vec::new();
        for x in self.inputs.labels() {
            for y in self.labels.labels() {
                out.push(format!("{x}|{y}"));
            }
        }
        Domain::new(out)
    }

    pub fn index(&self, input: usize, label: usize) -> usize {
        input * self.labels.len() + label
    }
}

/// Labels may change at cost `1/eta`; inputs may not change.
pub fn build_agnostic(domain: &LabeledDomain, eta: Rational) -> Result<CostFunction> {
    let c = inverse(eta)?;
    let k = domain.labels.len();
    CostFunction::from_fn(&domain.product()?, |a, b| {
        if a == b {
            Cost::zero()
        } else if a / k == b / k {
            c
        } else {
            Cost::Infinite
        }
    })
}

/// Points may be replaced by the null point at cost `1/eta`.
pub fn build_subtractive(domain: &Domain, eta: Rational) -> Result<(Domain, CostFunction)> {
    let c = inverse(eta)?;
    let aug = domain.augment()?;
    let null = aug.len() - 1;
    let rho = CostFunction::from_fn(&aug, |x, y| {
        if x == y {
            Cost::zero()
        } else if y == null {
            c
        } else {
            Cost::Infinite
        }
    })?;
    Ok((aug, rho))
}

/// The null point may be replaced by anything at cost `1/eta`.
pub fn build_additive(domain: &Domain, eta: Rational) -> Result<(Domain, CostFunction)> {
    let c = inverse(eta)?;
    let aug = domain.augment()?;
    let null = aug.len() - 1;
    let rho = CostFunction::from_fn(&aug, |x, y| {
        if x == y {
            Cost::zero()
        } else if x == null {
            c
        } else {
            Cost::Infinite
        }
    })?;
    Ok((aug, rho))
}
