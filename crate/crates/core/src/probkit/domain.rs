use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Label used for the sentinel "removed" point of an augmented domain.
pub const NULL_LABEL: &str = "⌀";

/// A finite, ordered set of labelled points.
///
/// Cloning is cheap; the label list is shared.
#[derive(Clone)]
pub struct Domain(Arc<Inner>);

#[derive(PartialEq, Eq)]
struct Inner {
    labels: Vec<String>,
    augmented: bool,
}

impl Domain {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Domain> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        Self::build(labels, false)
    }

    /// Points labelled `0..size`.
    pub fn range(size: usize) -> Result<Domain> {
        Self::new((0..size).map(|i| i.to_string()))
    }

    /// Rebuilds a domain from a label list, treating a trailing null label as
    /// the augmentation marker.
    pub fn from_labels(labels: Vec<String>) -> Result<Domain> {
        if labels.last().map(String::as_str) == Some(NULL_LABEL) {
            let mut base = labels;
            base.pop();
            Domain::new(base)?.augment()
        } else {
            Domain::new(labels)
        }
    }

    fn build(labels: Vec<String>, augmented: bool) -> Result<Domain> {
        if labels.is_empty() {
            return Err(Error::InvalidDomain("domain must have at least one point".into()));
        }
        let real = if augmented { &labels[..labels.len() - 1] } else { &labels[..] };
        for (i, l) in real.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::InvalidDomain(format!("bad label {l:?}")));
            }
            if l == NULL_LABEL {
                return Err(Error::InvalidDomain("the null label is reserved".into()));
            }
            if real[..i].contains(l) {
                return Err(Error::InvalidDomain(format!("duplicate label {l:?}")));
            }
        }
        Ok(Domain(Arc::new(Inner { labels, augmented })))
    }

    /// This domain with the null point appended.
    pub fn augment(&self) -> Result<Domain> {
        if self.is_augmented() {
            return Err(Error::InvalidDomain("domain is already augmented".into()));
        }
        let mut labels = self.0.labels.clone();
        labels.push(NULL_LABEL.to_string());
        Self::build(labels, true)
    }

    /// The domain without its null point.
    pub fn base(&self) -> Result<Domain> {
        if !self.is_augmented() {
            return Ok(self.clone());
        }
        let labels = self.0.labels[..self.len() - 1].to_vec();
        Self::build(labels, false)
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_augmented(&self) -> bool {
        self.0.augmented
    }

    pub fn null_index(&self) -> Option<usize> {
        self.is_augmented().then(|| self.len() - 1)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    pub(crate) fn ensure_same(&self, other: &Domain, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!(
                "{what}: {} points vs {} points",
                self.len(),
                other.len()
            )))
        }
    }
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Domain {}

impl std::hash::Hash for Domain {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.labels.hash(state);
        self.0.augmented.hash(state);
    }
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Domain{:?}", self.0.labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn augmentation_appends_null_last() {
        let d = Domain::range(3).unwrap().augment().unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.null_index(), Some(3));
        assert_eq!(d.label(3), NULL_LABEL);
        assert!(d.augment().is_err());
        assert_eq!(d.base().unwrap(), Domain::range(3).unwrap());
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(Domain::new(["a", "a"]).is_err());
        assert!(Domain::new(Vec::<String>::new()).is_err());
        assert!(Domain::new([NULL_LABEL]).is_err());
    }

    #[test]
    fn round_trips_through_labels() {
        let d = Domain::new(["x", "y"]).unwrap().augment().unwrap();
        assert_eq!(Domain::from_labels(d.labels().to_vec()).unwrap(), d);
    }
}
