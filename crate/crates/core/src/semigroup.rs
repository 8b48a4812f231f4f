//! Finite semigroups given by a Cayley table, and the subset machinery the
//! rank computations run on.

use std::collections::HashMap;
use std::fmt::Display;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::index_set::IndexSet;

const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;
const ASSOCIATIVITY_SAMPLES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    n: Option<usize>,
    labels: Vec<String>,
    table: Vec<u32>,
    /// `transposed[a·m + b] = b + a`, so closures read rows only.
    transposed: Vec<u32>,
    m: usize,
}

impl FiniteSemigroup {
    /// Builds the Cayley table of `elements` under `add`. Fails if a sum
    /// leaves the list or the operation is not associative.
    pub fn from_elements<T, F>(elements: &[T], add: F) -> Result<Self>
    where
        T: Eq + Hash + Display,
        F: Fn(&T, &T) -> T,
    {
        if elements.is_empty() {
            return Err(invalid("a semigroup needs at least one element"));
        }
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        if index.len() != elements.len() {
            return Err(invalid("element list contains duplicates"));
        }
        let m = elements.len();
        let mut table = Vec::with_capacity(m * m);
        for a in elements {
            for b in elements {
                let s = add(a, b);
                match index.get(&s) {
                    Some(&i) => table.push(i as u32),
                    None => {
                        return Err(Error::ClosureViolation {
                            left: a.to_string(),
                            right: b.to_string(),
                        })
                    }
                }
            }
        }
        let labels = elements.iter().map(|x| x.to_string()).collect();
        let s = FiniteSemigroup::assemble(None, labels, table);
        s.check_associativity()?;
        Ok(s)
    }

    /// Validates and wraps a table given as rows of indices.
    pub fn from_table(
        n: Option<usize>,
        labels: Vec<String>,
        rows: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::Validation("empty label list".into()));
        }
        if rows.len() != m {
            return Err(Error::Validation(format!(
                "{} rows for {m} labels",
                rows.len()
            )));
        }
        let mut table = Vec::with_capacity(m * m);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Validation(format!(
                    "row {a} has {} entries, expected {m}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= m {
                    return Err(Error::Validation(format!(
                        "row {a} has entry {x} outside [0, {m})"
                    )));
                }
                table.push(x as u32);
            }
        }
        let s = FiniteSemigroup::assemble(n, labels, table);
        s.check_associativity()?;
        Ok(s)
    }

    /// Wraps a table whose closure and associativity the caller guarantees.
    pub(crate) fn from_raw_parts(n: Option<usize>, labels: Vec<String>, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), labels.len() * labels.len());
        FiniteSemigroup::assemble(n, labels, table)
    }

    fn assemble(n: Option<usize>, labels: Vec<String>, table: Vec<u32>) -> Self {
        let m = labels.len();
        let mut transposed = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                transposed[b * m + a] = table[a * m + b];
            }
        }
        FiniteSemigroup {
            n,
            labels,
            table,
            transposed,
            m,
        }
    }

    pub fn with_n(mut self, n: Option<usize>) -> Self {
        self.n = n;
        self
    }

    /// Exhaustive up to 256 elements, a fixed-seed sample of a million triples above.
    pub fn check_associativity(&self) -> Result<()> {
        let m = self.m;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                Err(Error::Validation(format!(
                    "not associative: ({0} + {1}) + {2} != {0} + ({1} + {2})",
                    self.labels[a], self.labels[b], self.labels[c]
                )))
            } else {
                Ok(())
            }
        };
        if m <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                check(
                    rng.random_range(0..m),
                    rng.random_range(0..m),
                    rng.random_range(0..m),
                )?;
            }
        }
        Ok(())
    }

    pub fn n(&self) -> Option<usize> {
        self.n
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels_of(&self, set: &IndexSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.table[a * self.m + b] as usize
    }

    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.table[a * self.m..(a + 1) * self.m]
            .iter()
            .map(|&x| x as usize)
    }

    pub fn empty_set(&self) -> IndexSet {
        IndexSet::new(self.m)
    }

    pub fn full_set(&self) -> IndexSet {
        IndexSet::full(self.m)
    }

    /// Runs the worklist from `members[start..]`, assuming `members[..start]`
    /// is already closed. Returns `true` as soon as `stop_at` enters the set.
    fn close_from(
        &self,
        set: &mut IndexSet,
        members: &mut Vec<usize>,
        start: usize,
        stop_at: Option<usize>,
    ) -> bool {
        if let Some(t) = stop_at {
            if set.contains(t) {
                return true;
            }
        }
        let m = self.m;
        let mut i = start;
        while i < members.len() {
            let a = members[i];
            let right = &self.table[a * m..(a + 1) * m];
            let left = &self.transposed[a * m..(a + 1) * m];
            for j in 0..=i {
                let b = members[j];
                for s in [right[b] as usize, left[b] as usize] {
                    if set.insert(s) {
                        if stop_at == Some(s) {
                            return true;
                        }
                        members.push(s);
                    }
                }
            }
            i += 1;
        }
        false
    }

    /// `⟨U⟩`, the least subsemigroup containing `U`; `⟨∅⟩ = ∅`.
    pub fn closure(&self, generators: &IndexSet) -> IndexSet {
        self.words(generators, None).0
    }

    /// Every element of `⟨U⟩` is a sum `u₁ + … + u_k`, so a search that only
    /// appends generators on the right finds them all in `|⟨U⟩|·|U|` steps.
    fn words(&self, generators: &IndexSet, stop_at: Option<usize>) -> (IndexSet, bool) {
        let gens = generators.to_vec();
        let mut set = generators.clone();
        if stop_at.is_some_and(|t| set.contains(t)) {
            return (set, true);
        }
        let mut queue = gens.clone();
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            let row = &self.table[x * self.m..(x + 1) * self.m];
            for &g in &gens {
                let y = row[g] as usize;
                if set.insert(y) {
                    if stop_at == Some(y) {
                        return (set, true);
                    }
                    queue.push(y);
                }
            }
            i += 1;
        }
        (set, false)
    }

    /// `⟨C ∪ {x}⟩` for a closed set `C`.
    pub fn extend_closed(&self, closed: &IndexSet, x: usize) -> IndexSet {
        let mut set = closed.clone();
        if set.contains(x) {
            return set;
        }
        let mut members = closed.to_vec();
        let start = members.len();
        set.insert(x);
        members.push(x);
        self.close_from(&mut set, &mut members, start, None);
        set
    }

    /// Whether `target ∈ ⟨C ∪ {x}⟩` for a closed set `C`, stopping early.
    pub fn extended_reaches(&self, closed: &IndexSet, x: usize, target: usize) -> bool {
        if closed.contains(target) || x == target {
            return true;
        }
        if closed.contains(x) {
            return false;
        }
        let mut set = closed.clone();
        let mut members = closed.to_vec();
        let start = members.len();
        set.insert(x);
        members.push(x);
        self.close_from(&mut set, &mut members, start, Some(target))
    }

    pub fn is_generating(&self, set: &IndexSet) -> bool {
        self.closure(set).is_full()
    }

    /// Every `a ∈ U` lies outside `⟨U \ {a}⟩`.
    pub fn is_independent(&self, set: &IndexSet) -> Result<bool> {
        if set.is_empty() {
            return Err(invalid("independence is defined for nonempty sets"));
        }
        Ok(self.is_independent_unchecked(set))
    }

    pub(crate) fn is_independent_unchecked(&self, set: &IndexSet) -> bool {
        set.iter().all(|a| {
            let mut rest = set.clone();
            rest.remove(a);
            !self.reaches(&rest, a)
        })
    }

    /// Whether `target ∈ ⟨U⟩`, stopping early.
    pub fn reaches(&self, generators: &IndexSet, target: usize) -> bool {
        self.words(generators, Some(target)).1
    }

    /// `{a} ∪ aS` for the right side, `{a} ∪ Sa` for the left.
    pub fn principal_ideal(&self, a: usize, side: Side) -> IndexSet {
        let mut set = self.empty_set();
        set.insert(a);
        for s in 0..self.m {
            set.insert(match side {
                Side::Right => self.add(a, s),
                Side::Left => self.add(s, a),
            });
        }
        set
    }

    /// Green's R (or L) classes, each sorted, ordered by smallest member.
    pub fn greens_classes(&self, side: Side) -> Vec<Vec<usize>> {
        let mut by_ideal: HashMap<IndexSet, Vec<usize>> = HashMap::new();
        for a in 0..self.m {
            by_ideal
                .entry(self.principal_ideal(a, side))
                .or_default()
                .push(a);
        }
        let mut classes: Vec<Vec<usize>> = by_ideal.into_values().collect();
        classes.sort();
        classes
    }

    /// For each `a`, the elements `u` with `a ∈ uS¹` (right) or `a ∈ S¹u` (left).
    /// Any sum equal to `a` starts (ends) with such a `u`.
    pub fn up_sets(&self, side: Side) -> Vec<IndexSet> {
        let mut up: Vec<IndexSet> = (0..self.m)
            .map(|a| IndexSet::from_indices(self.m, [a]))
            .collect();
        for u in 0..self.m {
            for s in 0..self.m {
                let r = match side {
                    Side::Right => self.add(u, s),
                    Side::Left => self.add(s, u),
                };
                up[r].insert(u);
            }
        }
        up
    }

    pub fn is_band(&self) -> bool {
        (0..self.m).all(|a| self.add(a, a) == a)
    }

    /// Elements `a` with no `b, c ≠ a` such that `a = b + c`.
    pub fn indecomposables(&self) -> IndexSet {
        let mut decomposable = self.empty_set();
        for b in 0..self.m {
            for c in 0..self.m {
                let r = self.add(b, c);
                if r != b && r != c {
                    decomposable.insert(r);
                }
            }
        }
        decomposable.complement()
    }

    /// `a + b ∈ U ⟹ a ∈ U ∨ b ∈ U`; equivalently the complement is closed.
    pub fn is_prime_subset(&self, set: &IndexSet) -> Result<bool> {
        if set.is_empty() {
            return Err(invalid("prime subsets are nonempty"));
        }
        Ok(self.complement_is_closed(set))
    }

    pub(crate) fn complement_is_closed(&self, set: &IndexSet) -> bool {
        let outside: Vec<usize> = set.complement().to_vec();
        outside
            .iter()
            .all(|&a| outside.iter().all(|&b| !set.contains(self.add(a, b))))
    }

    pub fn is_closed(&self, set: &IndexSet) -> bool {
        let members = set.to_vec();
        members
            .iter()
            .all(|&a| members.iter().all(|&b| set.contains(self.add(a, b))))
    }

    /// The subsemigroup on a closed subset, re-indexed in increasing order.
    pub fn subsemigroup(&self, set: &IndexSet) -> Result<FiniteSemigroup> {
        if set.is_empty() || !self.is_closed(set) {
            return Err(invalid("subset is empty or not closed"));
        }
        let members = set.to_vec();
        let mut position = vec![usize::MAX; self.m];
        for (i, &a) in members.iter().enumerate() {
            position[a] = i;
        }
        let mut table = Vec::with_capacity(members.len() * members.len());
        for &a in &members {
            for &b in &members {
                table.push(position[self.add(a, b)] as u32);
            }
        }
        let labels = members.iter().map(|&a| self.labels[a].clone()).collect();
        Ok(FiniteSemigroup::from_raw_parts(self.n, labels, table))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.m).map(|a| self.row(a).collect()).collect()
    }
}
