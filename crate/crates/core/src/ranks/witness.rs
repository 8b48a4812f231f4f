//! The explicit subsets behind the closed-form ranks.

use crate::affine::{phi_from_perm, pointwise_sum, AffineMapElement};
use crate::aplus::APlus;
use crate::brandt::{bn_elements, BnElement};
use crate::error::{invalid, Result};
use crate::index_set::IndexSet;
use crate::perm::all_permutations;
use crate::semigroup::FiniteSemigroup;

use AffineMapElement::{Const, Singleton};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessKind {
    /// `{ξ_(i,i+1) : i < n} ∪ {ξ_(n,1)}`, generating the constants.
    S,
    /// `{φ_σ + h : σ ∈ S_n, h ∈ S}`.
    T,
    /// `{ξ_(1,i)} ∪ {ξ_(j,1)}` for `i, j ≥ 2`, together with `T`.
    SprimeUnionT,
    /// All n-support maps plus the idempotent constants `ξ_(i,i)`.
    I,
    /// The 14-element independent set of `A⁺(B_2)`.
    P2,
    /// `{ξ_(n,k) : k < n}`, a smallest prime subset.
    V,
    /// `{⟨(k,l) → α⟩ : α ∈ Q}` for an independent `Q ⊆ B_n`.
    Qprime(Vec<BnElement>),
}

pub fn construct_witness(a: &APlus, kind: &WitnessKind) -> Result<IndexSet> {
    let n = a.n();
    if n < 2 {
        return Err(invalid("witness sets are defined for n >= 2"));
    }
    let maps = match kind {
        WitnessKind::S => s_set(n),
        WitnessKind::T => t_set(n)?,
        WitnessKind::SprimeUnionT => {
            let mut v: Vec<_> = (1..n).map(|i| Const { p: 0, q: i }).collect();
            v.extend((1..n).map(|j| Const { p: j, q: 0 }));
            v.extend(t_set(n)?);
            v
        }
        WitnessKind::I => {
            let mut v: Vec<_> = (0..n).map(|i| Const { p: i, q: i }).collect();
            v.extend(
                a.elements()
                    .iter()
                    .filter(|f| matches!(f, AffineMapElement::NSupport { .. }))
                    .cloned(),
            );
            v
        }
        WitnessKind::P2 => {
            if n != 2 {
                return Err(invalid("P is defined for n = 2 only"));
            }
            let q = [
                BnElement::Pair(0, 0),
                BnElement::Pair(0, 1),
                BnElement::Pair(1, 1),
            ];
            let mut v = singletons_onto(n, &q);
            v.push(Const { p: 0, q: 0 });
            v.push(Const { p: 1, q: 1 });
            v
        }
        WitnessKind::V => (0..n - 1).map(|k| Const { p: n - 1, q: k }).collect(),
        WitnessKind::Qprime(q) => {
            if q.is_empty() || q.iter().any(|x| x.is_zero() || !x.is_valid(n)) {
                return Err(invalid(
                    "Q must be a nonempty set of nonzero elements of B_n",
                ));
            }
            let bn = FiniteSemigroup::from_elements(&bn_elements(n)?, |x: &BnElement, y| *x + *y)?;
            let qs = IndexSet::from_indices(bn.size(), q.iter().map(|x| x.index(n)));
            if !bn.is_independent_unchecked(&qs) {
                return Err(invalid("Q is not independent in B_n"));
            }
            singletons_onto(n, q)
        }
    };
    Ok(a.set_of(&maps))
}

fn s_set(n: usize) -> Vec<AffineMapElement> {
    let mut v: Vec<_> = (0..n - 1).map(|i| Const { p: i, q: i + 1 }).collect();
    v.push(Const { p: n - 1, q: 0 });
    v
}

/// Built from the definition, `φ_σ + h` summed pointwise and then recognised.
fn t_set(n: usize) -> Result<Vec<AffineMapElement>> {
    let mut out = Vec::new();
    for sigma in all_permutations(n) {
        let phi = phi_from_perm(n, &sigma)?;
        for h in s_set(n) {
            out.push(AffineMapElement::from_table(n, &pointwise_sum(n, &phi, &h)));
        }
    }
    Ok(out)
}

fn singletons_onto(n: usize, targets: &[BnElement]) -> Vec<AffineMapElement> {
    let mut v = Vec::new();
    for k in 0..n {
        for l in 0..n {
            for t in targets {
                if let BnElement::Pair(p, q) = *t {
                    v.push(Singleton { k, l, p, q });
                }
            }
        }
    }
    v
}
