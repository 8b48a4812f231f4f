use super::formulas::r3;
use super::independent::Node;
use super::witness::{construct_witness, WitnessKind};
use super::{Meter, SearchBudget, SearchOutcome, SearchResult};
use crate::aplus::{APlus, Stratum};
use crate::error::{invalid, Error, Result};
use crate::index_set::IndexSet;
use crate::perm::factorial;
use crate::semigroup::FiniteSemigroup;

/// Visits every independent generating set, in include-first index order.
/// Returns `false` if the budget ran out before the enumeration finished.
///
/// A branch is abandoned once its set together with every element that could
/// still join it no longer generates the semigroup.
pub fn for_each_independent_generating<F>(
    s: &FiniteSemigroup,
    budget: SearchBudget,
    mut visit: F,
) -> bool
where
    F: FnMut(&IndexSet),
{
    let mut meter = budget.meter();
    let root = Node::root(s, 0);
    let candidates: Vec<usize> = (0..s.size()).collect();
    let mut on_set = |u: &IndexSet| -> bool {
        visit(u);
        false
    };
    walk(
        s,
        &mut meter,
        &root,
        &candidates,
        &mut |_, _| false,
        &mut on_set,
    );
    !meter.exhausted()
}

/// Intermediate rank `r₃`: the largest independent generating set, found by
/// branch and bound over the same tree.
pub fn max_independent_generating(
    s: &FiniteSemigroup,
    budget: SearchBudget,
) -> Result<SearchResult> {
    if s.size() == 0 {
        return Err(invalid("empty semigroup"));
    }
    let mut meter = budget.meter();
    let root = Node::root(s, 0);
    let candidates: Vec<usize> = (0..s.size()).collect();
    let mut best: Option<IndexSet> = None;
    let best_len = std::cell::Cell::new(0usize);
    walk(
        s,
        &mut meter,
        &root,
        &candidates,
        &mut |size, room| size + room <= best_len.get(),
        &mut |u| {
            if u.len() > best_len.get() {
                best_len.set(u.len());
                best = Some(u.clone());
            }
            false
        },
    );
    let outcome = match best {
        Some(witness) if !meter.exhausted() => SearchOutcome::Exact {
            value: witness.len(),
            witness,
        },
        witness => SearchOutcome::Bounds {
            lower: best_len.get(),
            upper: s.size(),
            witness,
        },
    };
    Ok(SearchResult {
        outcome,
        nodes: meter.nodes(),
        elapsed: meter.elapsed(),
    })
}

/// Returns `true` to abort.
fn walk(
    s: &FiniteSemigroup,
    meter: &mut Meter,
    node: &Node,
    candidates: &[usize],
    prune: &mut dyn FnMut(usize, usize) -> bool,
    visit: &mut dyn FnMut(&IndexSet) -> bool,
) -> bool {
    if !meter.tick() {
        return true;
    }
    if node.closed.is_full() {
        // no proper superset of a generating set is independent
        return visit(&node.to_set(s.size()));
    }
    let mut reachable = node.to_set(s.size());
    for &c in candidates {
        reachable.insert(c);
    }
    if !s.is_generating(&reachable) {
        return false;
    }
    for idx in 0..candidates.len() {
        if prune(node.len(), candidates.len() - idx) {
            return false;
        }
        let y = candidates[idx];
        let child = node.extend(s, y, None);
        let child_candidates: Vec<usize> = candidates[idx + 1..]
            .iter()
            .copied()
            .filter(|&z| child.accepts(s, z))
            .collect();
        if walk(s, meter, &child, &child_candidates, prune, visit) {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone)]
pub struct IntermediateRank {
    pub value: usize,
    pub witness: IndexSet,
    /// All independent generating sets were enumerated (only done for `n = 2`).
    pub exhaustive: bool,
    pub sets_examined: usize,
}

/// Checks that `S′ ∪ T` is an independent generating set of the predicted
/// size. For `n = 2` also enumerates every independent generating set and
/// checks that none is larger, none holds a singleton-support map, each has
/// exactly `n·n!` n-support maps, and between `n` and `2n − 2` nonzero constants.
pub fn intermediate_rank_verify(a: &APlus, budget: SearchBudget) -> Result<IntermediateRank> {
    let n = a.n();
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    let s = a.semigroup();
    let expected: usize = r3(n).try_into().map_err(|_| invalid("n too large"))?;
    let witness = construct_witness(a, &WitnessKind::SprimeUnionT)?;
    let mismatch = |msg: String| Err(Error::TheoremMismatch(msg));
    if witness.len() != expected {
        return mismatch(format!(
            "|S' ∪ T| = {} but n(n!) + 2n - 2 = {expected}",
            witness.len()
        ));
    }
    if !s.is_generating(&witness) {
        return mismatch("S' ∪ T does not generate".into());
    }
    if !s.is_independent(&witness)? {
        return mismatch("S' ∪ T is not independent".into());
    }
    if n != 2 {
        return Ok(IntermediateRank {
            value: expected,
            witness,
            exhaustive: false,
            sets_examined: 0,
        });
    }

    let nsupport = a.stratum_set(Stratum::NSupport);
    let full = a.stratum_set(Stratum::Full);
    let singletons = a.stratum_set(Stratum::Singleton);
    let mut largest = 0;
    let mut count = 0;
    let mut problem = None;
    let complete = for_each_independent_generating(s, budget, |u| {
        count += 1;
        largest = largest.max(u.len());
        let full_count = u.intersection_len(&full);
        if problem.is_none()
            && (u.intersects(&singletons)
                || u.intersection_len(&nsupport) != n * factorial(n)
                || !(n..=2 * n - 2).contains(&full_count))
        {
            problem = Some(s.labels_of(u));
        }
    });
    if let Some(labels) = problem {
        return mismatch(format!(
            "independent generating set {labels:?} breaks the stratification"
        ));
    }
    if complete && largest != expected {
        return mismatch(format!(
            "largest independent generating set has {largest} elements"
        ));
    }
    Ok(IntermediateRank {
        value: expected,
        witness,
        exhaustive: complete,
        sets_examined: count,
    })
}
