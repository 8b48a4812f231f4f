use std::time::Instant;

use super::formulas::{kappa, r3, r4_lower};
use super::intermediate::{intermediate_rank_verify, max_independent_generating};
use super::large::large_rank_exact;
use super::lower::{generation_lower_bound, lower_rank_exact};
use super::small::small_rank;
use super::upper::{aplus_strata_caps, upper_rank_search, UpperSearchOptions};
use super::witness::{construct_witness, WitnessKind};
use super::{Provenance, RankEntry, RankValue, SearchBudget, SearchOutcome, SearchResult};
use crate::aplus::APlus;
use crate::error::Result;
use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RankKind {
    R1,
    R2,
    R3,
    R4,
    R5,
}

impl RankKind {
    pub const ALL: [RankKind; 5] = [
        RankKind::R1,
        RankKind::R2,
        RankKind::R3,
        RankKind::R4,
        RankKind::R5,
    ];
}

/// A rank entry straight from a search result.
pub fn entry_from_search(s: &FiniteSemigroup, r: &SearchResult) -> RankEntry {
    let (value, provenance) = match &r.outcome {
        SearchOutcome::Exact { value, .. } => (RankValue::exact(*value), Provenance::ExactSearch),
        SearchOutcome::Bounds { lower, upper, .. } => {
            (RankValue::bounds(*lower, *upper), Provenance::Bounds)
        }
    };
    RankEntry {
        value,
        provenance,
        witness: r.outcome.witness().map(|w| s.labels_of(w)),
        elapsed: r.elapsed,
    }
}

/// Computes one rank of `A⁺(B_n)` the cheapest sound way available:
///
/// * `r₁`, `r₅`: exact search.
/// * `r₂`: the generating set `S ∪ T` when its size meets the disjoint-family
///   lower bound, otherwise exact search.
/// * `r₃`: for `n ≥ 2`, the verified witness `S′ ∪ T`; for `n = 2` the full
///   enumeration of independent generating sets backs it.
/// * `r₄`: branch and bound seeded with `I` (or `P` when `n = 2`); the upper
///   end of a partial result is capped at `κ`. `strata_caps` tightens pruning.
///   From `n = 5` on the search is skipped and the closed-form bounds are
///   returned.
pub fn aplus_rank(
    a: &APlus,
    kind: RankKind,
    budget: SearchBudget,
    strata_caps: bool,
) -> Result<RankEntry> {
    let n = a.n();
    let s = a.semigroup();
    let start = Instant::now();
    let entry = match kind {
        RankKind::R1 => entry_from_search(s, &small_rank(s, budget)?),
        RankKind::R2 => {
            let bound = generation_lower_bound(s).lower();
            let witness = if n >= 2 {
                let mut w = construct_witness(a, &WitnessKind::S)?;
                w.union_with(&construct_witness(a, &WitnessKind::T)?);
                Some(w).filter(|w| s.is_generating(w))
            } else {
                None
            };
            match witness {
                Some(w) if w.len() == bound && n >= 3 => RankEntry {
                    value: RankValue::exact(bound),
                    provenance: Provenance::Witness,
                    witness: Some(s.labels_of(&w)),
                    elapsed: start.elapsed(),
                },
                witness => {
                    let r = lower_rank_exact(s, budget)?;
                    let mut e = entry_from_search(s, &r);
                    if let (SearchOutcome::Bounds { lower, .. }, Some(w)) = (&r.outcome, witness) {
                        e.value = RankValue::bounds((*lower).max(bound), w.len());
                        e.witness = Some(s.labels_of(&w));
                    }
                    e
                }
            }
        }
        RankKind::R3 if n == 1 => entry_from_search(s, &max_independent_generating(s, budget)?),
        RankKind::R3 => {
            let r = intermediate_rank_verify(a, budget)?;
            let (value, provenance) = match (n, r.exhaustive) {
                (2, true) => (RankValue::exact(r.value), Provenance::ExactSearch),
                (2, false) => (RankValue::bounds(r.value, s.size()), Provenance::Bounds),
                _ => (RankValue::Exact(r3(n)), Provenance::Witness),
            };
            RankEntry {
                value,
                provenance,
                witness: Some(s.labels_of(&r.witness)),
                elapsed: start.elapsed(),
            }
        }
        RankKind::R4 if n >= 5 => RankEntry {
            value: RankValue::Bounds {
                lower: r4_lower(n),
                upper: kappa(n),
            },
            provenance: Provenance::Bounds,
            witness: None,
            elapsed: start.elapsed(),
        },
        RankKind::R4 => {
            let options = if n >= 2 {
                let seed = construct_witness(
                    a,
                    if n == 2 {
                        &WitnessKind::P2
                    } else {
                        &WitnessKind::I
                    },
                )?;
                let strata = if strata_caps {
                    aplus_strata_caps(a)
                } else {
                    Vec::new()
                };
                UpperSearchOptions {
                    strata,
                    seed: Some(seed),
                }
            } else {
                UpperSearchOptions::default()
            };
            let mut r = upper_rank_search(s, budget, &options)?;
            if let SearchOutcome::Bounds { upper, .. } = &mut r.outcome {
                if n >= 2 {
                    if let Ok(k) = usize::try_from(kappa(n)) {
                        *upper = (*upper).min(k);
                    }
                }
            }
            entry_from_search(s, &r)
        }
        RankKind::R5 => entry_from_search(s, &large_rank_exact(s, n.max(1), budget)?),
    };
    Ok(entry)
}
