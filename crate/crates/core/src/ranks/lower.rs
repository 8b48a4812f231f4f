use super::{Meter, SearchBudget, SearchOutcome, SearchResult};
use crate::error::{invalid, Result};
use crate::index_set::IndexSet;
use crate::semigroup::{FiniteSemigroup, Side};

/// Sets every generating set must meet, and a lower bound from a disjoint
/// subfamily of them.
#[derive(Debug, Clone)]
pub struct GenerationBound {
    /// Elements outside the subsemigroup generated by everything else.
    pub forced: IndexSet,
    /// For each element `a`, the `u` with `a ∈ uS¹` and those with `a ∈ S¹u`,
    /// plus `{a}` for forced `a`. Deduplicated.
    pub family: Vec<IndexSet>,
    /// Pairwise disjoint members of `family`, chosen greedily smallest first.
    pub packing: Vec<IndexSet>,
}

impl GenerationBound {
    pub fn lower(&self) -> usize {
        self.packing.len()
    }
}

pub fn generation_lower_bound(s: &FiniteSemigroup) -> GenerationBound {
    let m = s.size();
    // ⟨S \ {a}⟩ is S \ {a} or S, and it is S \ {a} exactly when a is indecomposable
    let forced = s.indecomposables();
    let mut family: Vec<IndexSet> = forced
        .iter()
        .map(|a| IndexSet::from_indices(m, [a]))
        .collect();
    family.extend(s.up_sets(Side::Right));
    family.extend(s.up_sets(Side::Left));
    family.sort_by_key(|x| (x.len(), x.to_vec()));
    family.dedup();

    let mut used = s.empty_set();
    let mut packing = Vec::new();
    for set in &family {
        if !set.intersects(&used) {
            used.union_with(set);
            packing.push(set.clone());
        }
    }
    GenerationBound {
        forced,
        family,
        packing,
    }
}

/// Lower rank `r₂`: the smallest generating set, lexicographically first
/// among those of minimum size.
///
/// Sizes are tried upward from the disjoint-family bound. Each size is an
/// include-first walk over the elements in index order, cut off when the
/// chosen elements plus all later ones cannot meet every family set or cannot
/// generate the semigroup.
pub fn lower_rank_exact(s: &FiniteSemigroup, budget: SearchBudget) -> Result<SearchResult> {
    let m = s.size();
    if m == 0 {
        return Err(invalid("empty semigroup"));
    }
    let mut meter = budget.meter();
    let bound = generation_lower_bound(s);
    let family_max: Vec<usize> = bound.family.iter().map(|f| f.last().unwrap()).collect();
    for k in bound.lower().max(1)..=m {
        let mut search = Search {
            s,
            bound: &bound,
            family_max: &family_max,
            k,
            meter: &mut meter,
            chosen: s.empty_set(),
            found: None,
        };
        search.walk(0);
        if let Some(witness) = search.found {
            return Ok(finish(SearchOutcome::Exact { value: k, witness }, &meter));
        }
        if meter.exhausted() {
            return Ok(finish(
                SearchOutcome::Bounds {
                    lower: k,
                    upper: m,
                    witness: None,
                },
                &meter,
            ));
        }
    }
    unreachable!("the whole semigroup generates itself")
}

fn finish(outcome: SearchOutcome, meter: &Meter) -> SearchResult {
    SearchResult {
        outcome,
        nodes: meter.nodes(),
        elapsed: meter.elapsed(),
    }
}

struct Search<'a> {
    s: &'a FiniteSemigroup,
    bound: &'a GenerationBound,
    family_max: &'a [usize],
    k: usize,
    meter: &'a mut Meter,
    chosen: IndexSet,
    found: Option<IndexSet>,
}

impl Search<'_> {
    /// Returns `true` to stop: a generating set was found or the budget ran out.
    fn walk(&mut self, i: usize) -> bool {
        if !self.meter.tick() {
            return true;
        }
        let m = self.s.size();
        let remaining = self.k - self.chosen.len();
        if remaining == 0 {
            if self.s.is_generating(&self.chosen) {
                self.found = Some(self.chosen.clone());
                return true;
            }
            return false;
        }
        if m - i < remaining {
            return false;
        }
        let unhit_packing = self
            .bound
            .packing
            .iter()
            .filter(|p| !p.intersects(&self.chosen))
            .count();
        if unhit_packing > remaining {
            return false;
        }
        let stranded = self
            .bound
            .family
            .iter()
            .zip(self.family_max)
            .any(|(f, &mx)| mx < i && !f.intersects(&self.chosen));
        if stranded {
            return false;
        }
        let mut reachable = self.chosen.clone();
        for j in i..m {
            reachable.insert(j);
        }
        if !self.s.is_generating(&reachable) {
            return false;
        }

        self.chosen.insert(i);
        let stop = self.walk(i + 1);
        self.chosen.remove(i);
        if stop {
            return true;
        }
        self.walk(i + 1)
    }
}
