//! Incremental independence checks shared by the independent-set searches.

use crate::index_set::IndexSet;
use crate::semigroup::FiniteSemigroup;

/// An independent set with, for each member `a`, the closed set `⟨U \ {a}⟩`.
pub(crate) struct Node {
    pub(crate) members: Vec<usize>,
    pub(crate) without: Vec<IndexSet>,
    pub(crate) closed: IndexSet,
    pub(crate) counts: Vec<usize>,
}

impl Node {
    pub(crate) fn root(s: &FiniteSemigroup, strata: usize) -> Node {
        Node {
            members: Vec::new(),
            without: Vec::new(),
            closed: s.empty_set(),
            counts: vec![0; strata],
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.members.len()
    }

    pub(crate) fn to_set(&self, m: usize) -> IndexSet {
        IndexSet::from_indices(m, self.members.iter().copied())
    }

    /// Whether `U ∪ {y}` is still independent.
    pub(crate) fn accepts(&self, s: &FiniteSemigroup, y: usize) -> bool {
        !self.closed.contains(y)
            && self
                .members
                .iter()
                .zip(&self.without)
                .all(|(&a, w)| !s.extended_reaches(w, y, a))
    }

    pub(crate) fn extend(&self, s: &FiniteSemigroup, y: usize, stratum: Option<usize>) -> Node {
        let mut without: Vec<IndexSet> =
            self.without.iter().map(|w| s.extend_closed(w, y)).collect();
        without.push(self.closed.clone());
        let mut members = self.members.clone();
        members.push(y);
        let mut counts = self.counts.clone();
        if let Some(k) = stratum {
            counts[k] += 1;
        }
        Node {
            members,
            without,
            closed: s.extend_closed(&self.closed, y),
            counts,
        }
    }
}
