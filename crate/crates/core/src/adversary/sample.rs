use crate::error::{Error, Result};
use crate::probkit::Domain;

/// An ordered tuple of domain points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sample {
    domain: Domain,
    points: Vec<usize>,
}

impl Sample {
    pub fn new(domain: &Domain, points: Vec<usize>) -> Result<Sample> {
        if let Some(&x) = points.iter().find(|&&x| x >= domain.len()) {
            return Err(Error::InvalidParameter(format!("point {x} is outside the domain")));
        }
        Ok(Sample {
            domain: domain.clone(),
            points,
        })
    }

    pub fn from_labels(domain: &Domain, labels: &[&str]) -> Result<Sample> {
        let points = labels
            .iter()
            .map(|l| {
                domain
                    .index_of(l)
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown label {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Sample {
            domain: domain.clone(),
            points,
        })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.points.iter().map(|&x| self.domain.label(x)).collect()
    }
}
