use std::collections::BTreeSet;

use super::{SearchBudget, SearchOutcome, SearchResult};
use crate::error::{invalid, Result};
use crate::index_set::IndexSet;
use crate::semigroup::FiniteSemigroup;

/// All pairs `(b, c)` with `b + c = r`, grouped by `r`.
struct Decompositions {
    offsets: Vec<usize>,
    pairs: Vec<(u32, u32)>,
}

impl Decompositions {
    fn new(s: &FiniteSemigroup) -> Self {
        let m = s.size();
        let mut counts = vec![0usize; m + 1];
        for b in 0..m {
            for r in s.row(b) {
                counts[r + 1] += 1;
            }
        }
        for i in 0..m {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut pairs = vec![(0, 0); m * m];
        for b in 0..m {
            for (c, r) in s.row(b).enumerate() {
                pairs[fill[r]] = (b as u32, c as u32);
                fill[r] += 1;
            }
        }
        Decompositions {
            offsets: counts,
            pairs,
        }
    }

    fn of(&self, r: usize) -> &[(u32, u32)] {
        &self.pairs[self.offsets[r]..self.offsets[r + 1]]
    }
}

/// A smallest nonempty proper prime subset with at most `cap` elements,
/// lexicographically first among those of that size.
///
/// Size one is read off the indecomposable elements. Larger sizes grow a set
/// from its least element: while some `b + c` lands inside with `b, c` both
/// outside, one of `b`, `c` must join, and the search branches on the two.
pub fn smallest_prime_subset(
    s: &FiniteSemigroup,
    cap: usize,
    budget: SearchBudget,
) -> Result<SearchResult> {
    let m = s.size();
    if m < 2 {
        return Err(invalid(
            "a proper nonempty subset needs at least two elements",
        ));
    }
    let cap = cap.min(m - 1);
    let mut meter = budget.meter();
    let finish = |outcome, meter: &super::Meter| SearchResult {
        outcome,
        nodes: meter.nodes(),
        elapsed: meter.elapsed(),
    };
    if let Some(a) = s.indecomposables().first() {
        let witness = IndexSet::from_indices(m, [a]);
        return Ok(finish(SearchOutcome::Exact { value: 1, witness }, &meter));
    }
    let dec = Decompositions::new(s);
    for k in 2..=cap {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in 0..m {
            let mut set = IndexSet::from_indices(m, [a]);
            if grow(&dec, a, k, &mut set, &mut found, &mut meter) {
                let lower = k;
                return Ok(finish(
                    SearchOutcome::Bounds {
                        lower,
                        upper: m - 1,
                        witness: None,
                    },
                    &meter,
                ));
            }
        }
        if let Some(first) = found.into_iter().next() {
            let witness = IndexSet::from_indices(m, first);
            return Ok(finish(SearchOutcome::Exact { value: k, witness }, &meter));
        }
    }
    Ok(finish(
        SearchOutcome::Bounds {
            lower: cap + 1,
            upper: m - 1,
            witness: None,
        },
        &meter,
    ))
}

/// Returns `true` if the budget ran out.
fn grow(
    dec: &Decompositions,
    least: usize,
    k: usize,
    set: &mut IndexSet,
    found: &mut BTreeSet<Vec<usize>>,
    meter: &mut super::Meter,
) -> bool {
    if !meter.tick() {
        return true;
    }
    let violation = set.iter().find_map(|r| {
        dec.of(r)
            .iter()
            .find(|&&(b, c)| !set.contains(b as usize) && !set.contains(c as usize))
            .copied()
    });
    let Some((b, c)) = violation else {
        found.insert(set.to_vec());
        return false;
    };
    if set.len() == k {
        return false;
    }
    let mut options = vec![b as usize];
    if c != b {
        options.push(c as usize);
    }
    for x in options {
        if x < least {
            continue;
        }
        set.insert(x);
        let out = grow(dec, least, k, set, found, meter);
        set.remove(x);
        if out {
            return true;
        }
    }
    false
}

/// Large rank `r₅ = |Γ| − |U*| + 1` for a smallest proper prime subset `U*`,
/// whose complement is a largest proper subsemigroup (returned as witness).
pub fn large_rank_exact(
    s: &FiniteSemigroup,
    cap: usize,
    budget: SearchBudget,
) -> Result<SearchResult> {
    let m = s.size();
    if m == 1 {
        return Ok(SearchResult {
            outcome: SearchOutcome::Exact {
                value: 1,
                witness: s.full_set(),
            },
            nodes: 0,
            elapsed: Default::default(),
        });
    }
    let prime = smallest_prime_subset(s, cap, budget)?;
    let outcome = match prime.outcome {
        SearchOutcome::Exact { value, witness } => SearchOutcome::Exact {
            value: m - value + 1,
            witness: witness.complement(),
        },
        SearchOutcome::Bounds { lower, upper, .. } => SearchOutcome::Bounds {
            lower: m - upper + 1,
            upper: m - lower + 1,
            witness: None,
        },
    };
    Ok(SearchResult { outcome, ..prime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aplus::APlus;
    use crate::combinations::for_each_combination;
    use std::ops::ControlFlow;

    fn brute_smallest_prime(s: &FiniteSemigroup, cap: usize) -> Option<Vec<usize>> {
        let m = s.size();
        for k in 1..=cap {
            let mut hit = None;
            let _ = for_each_combination(m, k, |c| {
                let u = IndexSet::from_indices(m, c.iter().copied());
                if s.is_prime_subset(&u).unwrap() {
                    hit = Some(c.to_vec());
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    #[test]
    fn matches_subset_scan() {
        for n in 1..=3 {
            let a = APlus::new(n).unwrap();
            let s = a.semigroup();
            let r = smallest_prime_subset(s, n.max(2), SearchBudget::UNLIMITED).unwrap();
            let brute = brute_smallest_prime(s, n.max(2)).unwrap();
            assert_eq!(r.outcome.witness().unwrap().to_vec(), brute, "n = {n}");
        }
    }

    #[test]
    fn large_ranks() {
        let expected = [(1, 3), (2, 29), (3, 144)];
        for (n, r5) in expected {
            let a = APlus::new(n).unwrap();
            let r = large_rank_exact(a.semigroup(), n, SearchBudget::UNLIMITED).unwrap();
            assert_eq!(r.outcome.exact_value(), Some(r5));
            let complement = r.outcome.witness().unwrap();
            assert!(a.semigroup().is_closed(complement));
        }
    }

    #[test]
    fn cap_reports_bounds() {
        let a = APlus::new(3).unwrap();
        let r = smallest_prime_subset(a.semigroup(), 1, SearchBudget::UNLIMITED).unwrap();
        assert_eq!(r.outcome.bounds(), (2, 144));
    }
}
