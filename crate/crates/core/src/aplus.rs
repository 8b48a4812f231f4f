//! `A⁺(B_n)` as an indexed [`FiniteSemigroup`], together with the closed-form
//! characterisations the generic engine is checked against.

use std::collections::BTreeMap;

use crate::affine::{add_maps, enumerate_a_plus, AffineMapElement};
use crate::brandt::BnElement;
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::semigroup::{FiniteSemigroup, Side};

/// Support classes of `A⁺(B_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stratum {
    /// `ξ_ϑ`, support 0.
    Zero,
    /// Nonzero constants, support `n² + 1`.
    Full,
    Singleton,
    /// `(p, q; σ)`, support `n`.
    NSupport,
}

/// Largest `n` whose Cayley table is built (`|A⁺(B_5)| = 3651`; `n = 6`
/// would need 27 253² entries).
pub const MAX_TABLE_N: usize = 5;

#[derive(Debug, Clone)]
pub struct APlus {
    n: usize,
    elements: Vec<AffineMapElement>,
    semigroup: FiniteSemigroup,
}

impl APlus {
    /// Enumerates the elements and fills the Cayley table with closed-form sums,
    /// locating each sum by its arithmetic index.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_TABLE_N {
            return Err(Error::Capability(format!(
                "Cayley tables are built for n <= {MAX_TABLE_N}, got n = {n}"
            )));
        }
        let elements = enumerate_a_plus(n)?;
        let m = elements.len();
        let mut table = Vec::with_capacity(m * m);
        for f in &elements {
            for g in &elements {
                let idx = add_maps(n, f, g)
                    .a_plus_index(n)
                    .expect("sums of canonical elements are canonical");
                table.push(idx as u32);
            }
        }
        let labels = elements.iter().map(|f| f.to_string()).collect();
        let semigroup = FiniteSemigroup::from_raw_parts(Some(n), labels, table);
        Ok(APlus {
            n,
            elements,
            semigroup,
        })
    }

    /// Same semigroup built through the generic hash-indexed constructor, which
    /// also re-checks closure and associativity.
    pub fn via_generic_constructor(n: usize) -> Result<FiniteSemigroup> {
        let elements = enumerate_a_plus(n)?;
        Ok(FiniteSemigroup::from_elements(&elements, |f, g| add_maps(n, f, g))?.with_n(Some(n)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[AffineMapElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &AffineMapElement {
        &self.elements[i]
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, f: &AffineMapElement) -> Option<usize> {
        f.a_plus_index(self.n)
            .filter(|&i| self.elements.get(i) == Some(f))
    }

    pub fn support_size(&self, i: usize) -> usize {
        self.elements[i].support_size(self.n)
    }

    pub fn stratum(&self, i: usize) -> Stratum {
        match &self.elements[i] {
            AffineMapElement::ConstZero => Stratum::Zero,
            AffineMapElement::Const { .. } => Stratum::Full,
            AffineMapElement::Singleton { .. } => Stratum::Singleton,
            AffineMapElement::NSupport { .. } => Stratum::NSupport,
            AffineMapElement::Raw(_) => unreachable!("A⁺(B_n) holds canonical maps only"),
        }
    }

    pub fn stratum_set(&self, stratum: Stratum) -> IndexSet {
        IndexSet::from_indices(
            self.size(),
            (0..self.size()).filter(|&i| self.stratum(i) == stratum),
        )
    }

    pub fn set_of<'a>(&self, maps: impl IntoIterator<Item = &'a AffineMapElement>) -> IndexSet {
        IndexSet::from_indices(
            self.size(),
            maps.into_iter().map(|f| {
                self.index_of(f)
                    .unwrap_or_else(|| panic!("{f} is not in A⁺(B_{})", self.n))
            }),
        )
    }

    /// R-classes of the nonzero elements from supports and first projections
    /// of images.
    pub fn r_classes_by_support(&self) -> Vec<Vec<usize>> {
        self.classes_by_key((1..self.size()).collect(), |f, n| {
            let table = f.table(n);
            table
                .iter()
                .enumerate()
                .filter_map(|(x, v)| match v {
                    BnElement::Pair(p, _) => Some((x, *p)),
                    BnElement::Zero => None,
                })
                .collect::<Vec<_>>()
        })
    }

    /// L-classes of the nonzero constants from second projections.
    pub fn l_classes_of_constants(&self) -> Vec<Vec<usize>> {
        let constants = (1..self.size())
            .filter(|&i| self.stratum(i) == Stratum::Full)
            .collect();
        self.classes_by_key(constants, |f, _| match f {
            AffineMapElement::Const { q, .. } => vec![(0, *q)],
            _ => unreachable!(),
        })
    }

    /// Compares the ideal-based R-classes of the nonzero elements and L-classes
    /// of the nonzero constants with the support characterisation.
    pub fn greens_match_characterisation(&self) -> bool {
        let s = &self.semigroup;
        let restrict = |classes: Vec<Vec<usize>>, keep: &dyn Fn(usize) -> bool| {
            let mut out: Vec<Vec<usize>> = classes
                .into_iter()
                .map(|c| c.into_iter().filter(|&i| keep(i)).collect::<Vec<_>>())
                .filter(|c| !c.is_empty())
                .collect();
            out.sort();
            out
        };
        restrict(s.greens_classes(Side::Right), &|i| i != 0) == self.r_classes_by_support()
            && restrict(s.greens_classes(Side::Left), &|i| {
                self.stratum(i) == Stratum::Full
            }) == self.l_classes_of_constants()
    }

    fn classes_by_key<F>(&self, members: Vec<usize>, key: F) -> Vec<Vec<usize>>
    where
        F: Fn(&AffineMapElement, usize) -> Vec<(usize, usize)>,
    {
        let mut groups: BTreeMap<Vec<(usize, usize)>, Vec<usize>> = BTreeMap::new();
        for i in members {
            groups
                .entry(key(&self.elements[i], self.n))
                .or_default()
                .push(i);
        }
        let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
        classes.sort();
        classes
    }
}
