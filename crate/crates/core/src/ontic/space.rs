use std::collections::HashMap;

use crate::error::{Error, Result};

/// Finite, ordered set of ontic state labels.
///
/// The order fixed at construction is the order of every dense vector indexed
/// by this space.
#[derive(Debug, Clone)]
pub struct OnticStateSpace {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl OnticStateSpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::domain("an ontic state space needs at least one state"));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateName {
                    kind: "ontic state",
                    name: label.clone(),
                });
            }
        }
        Ok(Self { labels, index })
    }

    /// States labelled `prefix0`, `prefix1`, ...
    pub fn numbered(prefix: &str, n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::unknown("ontic state", label))
    }

    /// Same space under a new labelling; used by relabelling invariance checks.
    pub fn relabeled(&self, f: impl Fn(usize, &str) -> String) -> Result<Self> {
        Self::new(self.labels.iter().enumerate().map(|(i, l)| f(i, l)))
    }
}

impl PartialEq for OnticStateSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_construction_order() {
        let s = OnticStateSpace::new(["b", "a", "c"]).unwrap();
        assert_eq!(s.index_of("b"), Some(0));
        assert_eq!(s.index_of("c"), Some(2));
        assert_eq!(s.label(1), "a");
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(matches!(
            OnticStateSpace::new(["x", "x"]),
            Err(Error::DuplicateName { .. })
        ));
        assert!(OnticStateSpace::new(Vec::<String>::new()).is_err());
    }
}
