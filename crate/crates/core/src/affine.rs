//! Elements of `A⁺(B_n)` as maps `B_n → B_n`.
//!
//! Every element of `A⁺(B_n)` has one of four canonical shapes: the zero
//! constant, a nonzero constant, a singleton-support map, or an n-support map
//! `(p, q; σ)` sending `(i, p)` to `(iσ, q)`. Canonical shapes compare equal
//! exactly when they are equal as maps, so the engine never needs tables.
//! `Raw` tables exist for the brute-force oracles only.

use std::collections::HashSet;
use std::fmt;

use crate::brandt::{bn_elements, BnElement};
use crate::error::{invalid, Error, Result};
use crate::perm::{all_permutations, factorial, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AffineMapElement {
    /// `ξ_ϑ`
    ConstZero,
    /// `ξ_(p,q)`
    Const { p: usize, q: usize },
    /// `⟨(k,l) → (p,q)⟩`; every other argument goes to zero.
    Singleton {
        k: usize,
        l: usize,
        p: usize,
        q: usize,
    },
    /// `(p, q; σ)`: `(i, p) ↦ (iσ, q)`, everything else to zero.
    NSupport {
        p: usize,
        q: usize,
        sigma: Permutation,
    },
    /// Full value table indexed by canonical `B_n` order.
    Raw(Vec<BnElement>),
}

use AffineMapElement::*;

impl AffineMapElement {
    pub fn constant(c: BnElement) -> Self {
        match c {
            BnElement::Zero => ConstZero,
            BnElement::Pair(p, q) => Const { p, q },
        }
    }

    pub fn is_raw(&self) -> bool {
        matches!(self, Raw(_))
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let ok = match self {
            ConstZero => true,
            Const { p, q } => *p < n && *q < n,
            Singleton { k, l, p, q } => [k, l, p, q].iter().all(|&&x| x < n),
            NSupport { p, q, sigma } => *p < n && *q < n && sigma.degree() == n,
            Raw(t) => t.len() == n * n + 1 && t.iter().all(|x| x.is_valid(n)),
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("{self} is not a map on B_{n}")))
        }
    }

    /// `xf` for a valid `x`.
    pub fn eval(&self, n: usize, x: BnElement) -> BnElement {
        match (self, x) {
            (ConstZero, _) => BnElement::Zero,
            (Const { p, q }, _) => BnElement::Pair(*p, *q),
            (Singleton { k, l, p, q }, BnElement::Pair(i, j)) if i == *k && j == *l => {
                BnElement::Pair(*p, *q)
            }
            (NSupport { p, q, sigma }, BnElement::Pair(i, j)) if j == *p => {
                BnElement::Pair(sigma.apply(i), *q)
            }
            (Raw(t), x) => t[x.index(n)],
            _ => BnElement::Zero,
        }
    }

    pub fn table(&self, n: usize) -> Vec<BnElement> {
        (0..=n * n)
            .map(|idx| self.eval(n, BnElement::from_index(n, idx)))
            .collect()
    }

    /// Recognises a canonical shape from a value table; anything else stays `Raw`.
    pub fn from_table(n: usize, table: &[BnElement]) -> Self {
        assert_eq!(table.len(), n * n + 1);
        let support: Vec<usize> = (0..table.len()).filter(|&i| !table[i].is_zero()).collect();
        if support.is_empty() {
            return ConstZero;
        }
        if support.len() == table.len() && table.iter().all(|&x| x == table[0]) {
            if let BnElement::Pair(p, q) = table[0] {
                return Const { p, q };
            }
        }
        if support.len() == n {
            if let Some(f) = nsupport_from_table(n, table, &support) {
                return f;
            }
        }
        if support.len() == 1 {
            let (BnElement::Pair(k, l), BnElement::Pair(p, q)) =
                (BnElement::from_index(n, support[0]), table[support[0]])
            else {
                unreachable!("support excludes zero")
            };
            return Singleton { k, l, p, q };
        }
        Raw(table.to_vec())
    }

    /// In `B_1` the only singleton-support map is `(1,1;id)`.
    fn normalized(self, n: usize) -> Self {
        match self {
            Singleton { .. } if n == 1 => NSupport {
                p: 0,
                q: 0,
                sigma: Permutation::identity(1),
            },
            f => f,
        }
    }

    pub fn support_size(&self, n: usize) -> usize {
        match self {
            ConstZero => 0,
            Const { .. } => n * n + 1,
            Singleton { .. } => 1,
            NSupport { .. } => n,
            Raw(t) => t.iter().filter(|x| !x.is_zero()).count(),
        }
    }

    /// Position in [`enumerate_a_plus`] order; `None` for `Raw`.
    pub fn a_plus_index(&self, n: usize) -> Option<usize> {
        if n == 1 {
            return match self {
                ConstZero => Some(0),
                Const { .. } => Some(1),
                NSupport { .. } | Singleton { .. } => Some(2),
                Raw(_) => None,
            };
        }
        let n2 = n * n;
        Some(match self {
            ConstZero => 0,
            Const { p, q } => 1 + p * n + q,
            Singleton { k, l, p, q } => 1 + n2 + ((k * n + l) * n + p) * n + q,
            NSupport { p, q, sigma } => {
                1 + n2 + n2 * n2 + (p * n + q) * factorial(n) + sigma.lex_rank()
            }
            Raw(_) => return None,
        })
    }
}

fn nsupport_from_table(
    n: usize,
    table: &[BnElement],
    support: &[usize],
) -> Option<AffineMapElement> {
    let BnElement::Pair(_, p) = BnElement::from_index(n, support[0]) else {
        return None;
    };
    let BnElement::Pair(_, q) = table[support[0]] else {
        return None;
    };
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        match table[BnElement::Pair(i, p).index(n)] {
            BnElement::Pair(a, b) if b == q => images.push(a),
            _ => return None,
        }
    }
    let sigma = Permutation::new(images).ok()?;
    Some(NSupport { p, q, sigma })
}

impl fmt::Display for AffineMapElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstZero => write!(f, "xi(0)"),
            Const { p, q } => write!(f, "xi({},{})", p + 1, q + 1),
            Singleton { k, l, p, q } => {
                write!(f, "s({},{}->{},{})", k + 1, l + 1, p + 1, q + 1)
            }
            NSupport { p, q, sigma } => write!(f, "ns({},{};{})", p + 1, q + 1, sigma),
            Raw(t) => {
                write!(f, "raw[")?;
                for (i, x) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// `xf`, rejecting arguments or maps that do not belong to `B_n`.
pub fn apply(n: usize, f: &AffineMapElement, x: BnElement) -> Result<BnElement> {
    f.validate(n)?;
    if !x.is_valid(n) {
        return Err(invalid(format!("{x} is not an element of B_{n}")));
    }
    Ok(f.eval(n, x))
}

/// Pointwise sum `γ(f + g) = γf + γg`.
///
/// Canonical inputs are combined in closed form and stay canonical. If either
/// side is `Raw` the sum is computed from tables and returned `Raw`.
pub fn add_maps(n: usize, f: &AffineMapElement, g: &AffineMapElement) -> AffineMapElement {
    if f.is_raw() || g.is_raw() {
        return Raw(pointwise_sum(n, f, g));
    }
    let sum = match (f, g) {
        (ConstZero, _) | (_, ConstZero) => ConstZero,
        (Const { p: a, q: b }, Const { p: c, q: d }) => {
            if b == c {
                Const { p: *a, q: *d }
            } else {
                ConstZero
            }
        }
        (Const { p: a, q: b }, Singleton { k, l, p, q }) => {
            if b == p {
                Singleton {
                    k: *k,
                    l: *l,
                    p: *a,
                    q: *q,
                }
            } else {
                ConstZero
            }
        }
        (Singleton { k, l, p, q }, Const { p: a, q: b }) => {
            if q == a {
                Singleton {
                    k: *k,
                    l: *l,
                    p: *p,
                    q: *b,
                }
            } else {
                ConstZero
            }
        }
        (
            Singleton { k, l, p, q },
            Singleton {
                k: k2,
                l: l2,
                p: p2,
                q: q2,
            },
        ) => {
            if k == k2 && l == l2 && q == p2 {
                Singleton {
                    k: *k,
                    l: *l,
                    p: *p,
                    q: *q2,
                }
            } else {
                ConstZero
            }
        }
        (Const { p: a, q: b }, NSupport { p, q, sigma }) => Singleton {
            k: sigma.apply_inverse(*b),
            l: *p,
            p: *a,
            q: *q,
        },
        (NSupport { p, q, sigma }, Const { p: a, q: b }) => {
            if q == a {
                NSupport {
                    p: *p,
                    q: *b,
                    sigma: sigma.clone(),
                }
            } else {
                ConstZero
            }
        }
        (NSupport { p, q, sigma }, Singleton { k, l, p: a, q: b }) => {
            if l == p && q == a {
                Singleton {
                    k: *k,
                    l: *l,
                    p: sigma.apply(*k),
                    q: *b,
                }
            } else {
                ConstZero
            }
        }
        (Singleton { k, l, p: a, q: b }, NSupport { p, q, sigma }) => {
            if l == p && *b == sigma.apply(*k) {
                Singleton {
                    k: *k,
                    l: *l,
                    p: *a,
                    q: *q,
                }
            } else {
                ConstZero
            }
        }
        (
            NSupport { p, q, sigma },
            NSupport {
                p: p2,
                q: q2,
                sigma: tau,
            },
        ) => {
            if p == p2 {
                let i = tau.apply_inverse(*q);
                Singleton {
                    k: i,
                    l: *p,
                    p: sigma.apply(i),
                    q: *q2,
                }
            } else {
                ConstZero
            }
        }
        (Raw(_), _) | (_, Raw(_)) => unreachable!(),
    };
    sum.normalized(n)
}

pub(crate) fn pointwise_sum(
    n: usize,
    f: &AffineMapElement,
    g: &AffineMapElement,
) -> Vec<BnElement> {
    (0..=n * n)
        .map(|idx| {
            let x = BnElement::from_index(n, idx);
            f.eval(n, x) + g.eval(n, x)
        })
        .collect()
}

pub fn support_size(n: usize, f: &AffineMapElement) -> usize {
    f.support_size(n)
}

/// The automorphism `φ_σ: (i,j) ↦ (iσ, jσ)` as a table. It has support `n²`,
/// so it is not itself an element of `A⁺(B_n)`.
pub fn phi_from_perm(n: usize, sigma: &Permutation) -> Result<AffineMapElement> {
    if sigma.degree() != n {
        return Err(invalid(format!("{sigma} does not act on [{n}]")));
    }
    let table = bn_elements(n)?
        .into_iter()
        .map(|x| match x {
            BnElement::Zero => BnElement::Zero,
            BnElement::Pair(i, j) => BnElement::Pair(sigma.apply(i), sigma.apply(j)),
        })
        .collect();
    Ok(Raw(table))
}

/// For `(p, q; σ)` returns `(σ, (pσ, q))`, so that `φ_σ + ξ_(pσ,q)` is the map.
pub fn decompose_affine(n: usize, f: &AffineMapElement) -> Option<(Permutation, BnElement)> {
    match f {
        NSupport { p, q, sigma } if sigma.degree() == n => {
            Some((sigma.clone(), BnElement::Pair(sigma.apply(*p), *q)))
        }
        _ => None,
    }
}

/// All elements of `A⁺(B_n)`: constants, then singletons, then n-support maps,
/// each block lexicographic. `n = 1` gives `ξ_ϑ, ξ_(1,1), (1,1;id)`.
pub fn enumerate_a_plus(n: usize) -> Result<Vec<AffineMapElement>> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if n == 1 {
        return Ok(vec![
            ConstZero,
            Const { p: 0, q: 0 },
            NSupport {
                p: 0,
                q: 0,
                sigma: Permutation::identity(1),
            },
        ]);
    }
    let perms = all_permutations(n);
    let mut out = Vec::with_capacity(a_plus_size(n));
    out.push(ConstZero);
    for p in 0..n {
        for q in 0..n {
            out.push(Const { p, q });
        }
    }
    for k in 0..n {
        for l in 0..n {
            for p in 0..n {
                for q in 0..n {
                    out.push(Singleton { k, l, p, q });
                }
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for sigma in &perms {
                out.push(NSupport {
                    p,
                    q,
                    sigma: sigma.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// `(n!+1)n² + n⁴ + 1` for `n ≥ 2`, and 3 for `n = 1`.
pub fn a_plus_size(n: usize) -> usize {
    match n {
        0 => 0,
        1 => 3,
        _ => (factorial(n) + 1) * n * n + n.pow(4) + 1,
    }
}

const ORACLE_LIMIT: usize = 2;

/// Every endomorphism of `B_n`, found by testing all `(n²+1)^(n²+1)` maps.
pub fn endomorphisms_bruteforce(n: usize) -> Result<Vec<AffineMapElement>> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if n > ORACLE_LIMIT {
        return Err(Error::Capability(format!(
            "End(B_{n}) search space is too large for brute force"
        )));
    }
    let size = n * n + 1;
    let els = bn_elements(n)?;
    let total = size.pow(size as u32);
    let mut out = Vec::new();
    let mut digits = vec![0usize; size];
    for code in 0..total {
        let mut c = code;
        for d in digits.iter_mut() {
            *d = c % size;
            c /= size;
        }
        let image = |x: BnElement| els[digits[x.index(n)]];
        let hom = els
            .iter()
            .all(|&a| els.iter().all(|&b| image(a + b) == image(a) + image(b)));
        if hom {
            out.push(Raw(digits.iter().map(|&d| els[d]).collect()));
        }
    }
    Ok(out)
}

/// Closes `{g + ξ_c : g ∈ End(B_n), c ∈ B_n}` under pointwise addition, using
/// full tables throughout. Returned sorted by table.
pub fn affine_closure_oracle(n: usize) -> Result<Vec<AffineMapElement>> {
    let ends = endomorphisms_bruteforce(n)?;
    let consts: Vec<AffineMapElement> = bn_elements(n)?
        .into_iter()
        .map(|c| Raw(vec![c; n * n + 1]))
        .collect();
    let mut seen: HashSet<Vec<BnElement>> = HashSet::new();
    let mut members: Vec<AffineMapElement> = Vec::new();
    for g in &ends {
        for h in &consts {
            let t = pointwise_sum(n, g, h);
            if seen.insert(t.clone()) {
                members.push(Raw(t));
            }
        }
    }
    let mut i = 0;
    while i < members.len() {
        for j in 0..=i {
            for (a, b) in [(i, j), (j, i)] {
                let t = pointwise_sum(n, &members[a], &members[b]);
                if seen.insert(t.clone()) {
                    members.push(Raw(t));
                }
            }
        }
        i += 1;
    }
    let mut tables: Vec<Vec<BnElement>> = seen.into_iter().collect();
    tables.sort();
    Ok(tables.into_iter().map(Raw).collect())
}
