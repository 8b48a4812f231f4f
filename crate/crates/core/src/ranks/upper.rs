use super::formulas::constant_upper_rank;
use super::independent::Node;
use super::{Meter, SearchBudget, SearchOutcome, SearchResult};
use crate::aplus::{APlus, Stratum};
use crate::error::{invalid, Result};
use crate::index_set::IndexSet;
use crate::perm::factorial;
use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, Default)]
pub struct UpperSearchOptions {
    /// Disjoint subsets, each with a cap on how many members an independent
    /// set can hold. Caps must be valid upper bounds; they only tighten pruning.
    pub strata: Vec<(IndexSet, usize)>,
    /// A known independent set. The search then only looks for larger ones.
    pub seed: Option<IndexSet>,
}

/// Caps for `A⁺(B_n)`, `n ≥ 2`: constants `⌊n²/4⌋ + n`, singleton-support maps
/// `n²(⌊n²/4⌋ + n)`, n-support maps `(n!)n²`. They sum to `κ`.
pub fn aplus_strata_caps(a: &APlus) -> Vec<(IndexSet, usize)> {
    let n = a.n();
    let c = constant_upper_rank(n);
    let mut constants = a.stratum_set(Stratum::Zero);
    constants.union_with(&a.stratum_set(Stratum::Full));
    vec![
        (constants, c),
        (a.stratum_set(Stratum::Singleton), n * n * c),
        (a.stratum_set(Stratum::NSupport), factorial(n) * n * n),
    ]
}

/// Upper rank `r₄`: a maximum independent set by branch and bound.
///
/// Independence is hereditary, so each node keeps only the later elements
/// that can still be added on their own, and the node's bound is its size
/// plus that candidate count (capped per stratum when strata are given).
/// Elements are tried in index order, including before excluding.
pub fn upper_rank_search(
    s: &FiniteSemigroup,
    budget: SearchBudget,
    options: &UpperSearchOptions,
) -> Result<SearchResult> {
    let m = s.size();
    if m == 0 {
        return Err(invalid("empty semigroup"));
    }
    let mut stratum_of = vec![None; m];
    for (k, (set, _)) in options.strata.iter().enumerate() {
        for i in set.iter() {
            if stratum_of[i].replace(k).is_some() {
                return Err(invalid("strata overlap"));
            }
        }
    }
    let (best, witness) = match &options.seed {
        Some(seed) => {
            if !s.is_independent(seed)? {
                return Err(invalid("seed set is not independent"));
            }
            (seed.len(), seed.clone())
        }
        None => (0, s.empty_set()),
    };
    let mut search = Search {
        s,
        caps: options.strata.iter().map(|(_, c)| *c).collect(),
        stratum_of,
        meter: budget.meter(),
        best,
        witness,
    };
    let root = Node::root(s, options.strata.len());
    let candidates: Vec<usize> = (0..m).collect();
    let pending = search.walk(&root, &candidates);
    let outcome = match pending {
        None => SearchOutcome::Exact {
            value: search.best,
            witness: search.witness,
        },
        Some(upper) => SearchOutcome::Bounds {
            lower: search.best,
            upper: upper.max(search.best),
            witness: Some(search.witness).filter(|w| !w.is_empty()),
        },
    };
    Ok(SearchResult {
        outcome,
        nodes: search.meter.nodes(),
        elapsed: search.meter.elapsed(),
    })
}

struct Search<'a> {
    s: &'a FiniteSemigroup,
    caps: Vec<usize>,
    stratum_of: Vec<Option<usize>>,
    meter: Meter,
    best: usize,
    witness: IndexSet,
}

impl Search<'_> {
    /// How many of `candidates` an independent superset of `node` could take.
    fn room(&self, node: &Node, candidates: &[usize]) -> usize {
        if self.caps.is_empty() {
            return candidates.len();
        }
        let mut per = vec![0usize; self.caps.len()];
        let mut free = 0;
        for &c in candidates {
            match self.stratum_of[c] {
                Some(k) => per[k] += 1,
                None => free += 1,
            }
        }
        free + per
            .iter()
            .zip(&self.caps)
            .zip(&node.counts)
            .map(|((&avail, &cap), &used)| avail.min(cap.saturating_sub(used)))
            .sum::<usize>()
    }

    /// Explores `node`; on budget exhaustion returns an upper bound on what
    /// the unexplored part could still contain.
    fn walk(&mut self, node: &Node, candidates: &[usize]) -> Option<usize> {
        if !self.meter.tick() {
            return Some(node.len() + self.room(node, candidates));
        }
        if node.len() > self.best {
            self.best = node.len();
            self.witness = node.to_set(self.s.size());
        }
        for idx in 0..candidates.len() {
            if node.len() + self.room(node, &candidates[idx..]) <= self.best {
                return None;
            }
            let y = candidates[idx];
            let child = node.extend(self.s, y, self.stratum_of[y]);
            if self.stratum_of[y].is_some_and(|k| child.counts[k] > self.caps[k]) {
                continue;
            }
            let mut child_candidates = Vec::new();
            for &z in &candidates[idx + 1..] {
                if self.meter.expired() {
                    return Some(node.len() + self.room(node, &candidates[idx..]));
                }
                if child.accepts(self.s, z) {
                    child_candidates.push(z);
                }
            }
            if child.len() + self.room(&child, &child_candidates) > self.best {
                if let Some(pending) = self.walk(&child, &child_candidates) {
                    let siblings = node.len() + self.room(node, &candidates[idx + 1..]);
                    return Some(pending.max(siblings));
                }
            }
        }
        None
    }
}
