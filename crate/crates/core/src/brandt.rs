//! The Brandt semigroup `B_n`: pairs `(i, j)` over `[n]` plus an absorbing zero.
//!
//! Indices are stored 0-based. Labels print them 1-based, `0` for the zero.

use std::fmt;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BnElement {
    Zero,
    Pair(usize, usize),
}

impl BnElement {
    pub fn is_zero(self) -> bool {
        matches!(self, BnElement::Zero)
    }

    pub fn is_valid(self, n: usize) -> bool {
        match self {
            BnElement::Zero => true,
            BnElement::Pair(i, j) => i < n && j < n,
        }
    }

    /// Position in the canonical order: zero first, then pairs row-major.
    pub fn index(self, n: usize) -> usize {
        match self {
            BnElement::Zero => 0,
            BnElement::Pair(i, j) => 1 + i * n + j,
        }
    }

    pub fn from_index(n: usize, idx: usize) -> BnElement {
        if idx == 0 {
            BnElement::Zero
        } else {
            BnElement::Pair((idx - 1) / n, (idx - 1) % n)
        }
    }
}

/// Unchecked product; callers validate indices.
impl std::ops::Add for BnElement {
    type Output = BnElement;

    #[inline]
    fn add(self, other: BnElement) -> BnElement {
        match (self, other) {
            (BnElement::Pair(i, j), BnElement::Pair(k, l)) if j == k => BnElement::Pair(i, l),
            _ => BnElement::Zero,
        }
    }
}

impl fmt::Display for BnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BnElement::Zero => write!(f, "0"),
            BnElement::Pair(i, j) => write!(f, "({},{})", i + 1, j + 1),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(invalid("n must be at least 1"))
    } else {
        Ok(())
    }
}

/// All `n² + 1` elements of `B_n` in canonical order.
pub fn bn_elements(n: usize) -> Result<Vec<BnElement>> {
    check_n(n)?;
    let mut out = Vec::with_capacity(n * n + 1);
    out.push(BnElement::Zero);
    for i in 0..n {
        for j in 0..n {
            out.push(BnElement::Pair(i, j));
        }
    }
    Ok(out)
}

/// `(i,j) + (k,l) = (i,l)` when `j = k`, otherwise zero.
pub fn bn_add(n: usize, a: BnElement, b: BnElement) -> Result<BnElement> {
    check_n(n)?;
    for x in [a, b] {
        if !x.is_valid(n) {
            return Err(invalid(format!("{x} is not an element of B_{n}")));
        }
    }
    Ok(a + b)
}
