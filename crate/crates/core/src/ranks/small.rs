use std::ops::ControlFlow;

use super::{SearchBudget, SearchOutcome, SearchResult};
use crate::combinations::for_each_combination;
use crate::error::{invalid, Result};
use crate::index_set::IndexSet;
use crate::semigroup::FiniteSemigroup;

/// Small rank `r₁`. A finite semigroup with at least two elements that is not
/// a band has `r₁ = 1`; a witness is `{a, a + a}` for a non-idempotent `a`.
/// Bands fall back to [`small_rank_by_definition`].
pub fn small_rank(s: &FiniteSemigroup, budget: SearchBudget) -> Result<SearchResult> {
    if s.size() >= 2 {
        if let Some(a) = (0..s.size()).find(|&a| s.add(a, a) != a) {
            return Ok(SearchResult {
                outcome: SearchOutcome::Exact {
                    value: 1,
                    witness: IndexSet::from_indices(s.size(), [a, s.add(a, a)]),
                },
                nodes: 0,
                elapsed: Default::default(),
            });
        }
    }
    small_rank_by_definition(s, budget)
}

/// Largest `k` such that every `k`-subset is independent, by enumerating
/// subsets of increasing size. The witness is the first dependent
/// `(k+1)`-subset, or the whole semigroup when it is independent.
pub fn small_rank_by_definition(s: &FiniteSemigroup, budget: SearchBudget) -> Result<SearchResult> {
    let m = s.size();
    if m == 0 {
        return Err(invalid("empty semigroup"));
    }
    let mut meter = budget.meter();
    for k in 2..=m {
        let mut found = None;
        let flow = for_each_combination(m, k, |c| {
            if !meter.tick() {
                return ControlFlow::Break(());
            }
            let u = IndexSet::from_indices(m, c.iter().copied());
            if !s.is_independent_unchecked(&u) {
                found = Some(u);
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if let Some(witness) = found {
            return Ok(done(
                SearchOutcome::Exact {
                    value: k - 1,
                    witness,
                },
                &meter,
            ));
        }
        if flow.is_break() {
            // every (k-1)-subset is independent; some k-subset is unchecked
            return Ok(done(
                SearchOutcome::Bounds {
                    lower: k - 1,
                    upper: m,
                    witness: None,
                },
                &meter,
            ));
        }
    }
    Ok(done(
        SearchOutcome::Exact {
            value: m,
            witness: s.full_set(),
        },
        &meter,
    ))
}

fn done(outcome: SearchOutcome, meter: &super::Meter) -> SearchResult {
    SearchResult {
        outcome,
        nodes: meter.nodes(),
        elapsed: meter.elapsed(),
    }
}
