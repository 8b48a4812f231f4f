use num_bigint::BigUint;

use serde::Serialize;

use super::{serialize_big, RankEntry, RankReport, RankValue, Ranks};
use crate::error::{invalid, Result};

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

/// `⌊n²/4⌋ + n`, the upper rank of `B_n` (and of its constant maps).
pub(crate) fn constant_upper_rank(n: usize) -> usize {
    n * n / 4 + n
}

/// Upper bound on independent sets obtained by capping each support class:
/// `(n!)n² + (⌊n²/4⌋ + n) + n²(⌊n²/4⌋ + n)`.
pub fn kappa(n: usize) -> BigUint {
    let c = big(constant_upper_rank(n));
    factorial(n) * big(n * n) + c.clone() + big(n * n) * c
}

/// Element counts of `A⁺(B_n)` by support size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeBreakdown {
    pub n: usize,
    /// Constant maps, `ξ_ϑ` included: `n² + 1`.
    #[serde(serialize_with = "serialize_big")]
    pub constants: BigUint,
    /// Maps with one-point support: `n⁴`.
    #[serde(serialize_with = "serialize_big")]
    pub singleton_support: BigUint,
    /// Maps with n-point support: `(n!)n²`.
    #[serde(serialize_with = "serialize_big")]
    pub n_support: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub total: BigUint,
}

/// `|A⁺(B_n)| = (n!+1)n² + n⁴ + 1`; `A⁺(B₁)` is `{ξ_ϑ, ξ_(1,1), id}`.
pub fn size_breakdown(n: usize) -> Result<SizeBreakdown> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let (constants, singleton_support, n_support) = if n == 1 {
        (big(2), big(0), big(1))
    } else {
        (big(n * n + 1), big(n).pow(4), factorial(n) * big(n * n))
    };
    let total = constants.clone() + singleton_support.clone() + n_support.clone();
    Ok(SizeBreakdown {
        n,
        constants,
        singleton_support,
        n_support,
        total,
    })
}

pub(crate) fn r2(n: usize) -> BigUint {
    big(n) * (factorial(n) + 1u32)
}

pub(crate) fn r3(n: usize) -> BigUint {
    big(n) * factorial(n) + big(2 * n) - 2u32
}

/// `(n!)n² + n`, realised by the independent set of all n-support maps plus
/// the idempotent constants.
pub(crate) fn r4_lower(n: usize) -> BigUint {
    if n == 2 {
        big(14)
    } else {
        factorial(n) * big(n * n) + big(n)
    }
}

pub(crate) fn r5(n: usize) -> BigUint {
    factorial(n) * big(n * n) + big(n * n) + big(n).pow(4) + 3u32 - big(n)
}

/// Closed-form ranks of `A⁺(B_n)`. The upper rank is exact for `n = 1` and
/// `n ≥ 6`; for `2 ≤ n ≤ 5` it is reported as `[lower, κ]`.
pub fn rank_formulas(n: usize) -> Result<RankReport> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let e = RankEntry::formula;
    if n == 1 {
        let three = || e(RankValue::exact(3u32));
        return Ok(RankReport {
            n,
            ranks: Ranks {
                r1: three(),
                r2: three(),
                r3: three(),
                r4: three(),
                r5: three(),
            },
        });
    }
    let r4 = if n >= 6 {
        RankValue::Exact(r4_lower(n))
    } else {
        RankValue::Bounds {
            lower: r4_lower(n),
            upper: kappa(n),
        }
    };
    Ok(RankReport {
        n,
        ranks: Ranks {
            r1: e(RankValue::exact(1u32)),
            r2: e(RankValue::Exact(r2(n))),
            r3: e(RankValue::Exact(r3(n))),
            r4: e(r4),
            r5: e(RankValue::Exact(r5(n))),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::a_plus_size;
    use crate::ranks::Provenance;

    fn exact(v: &RankValue) -> u64 {
        u64::try_from(v.as_exact().unwrap()).unwrap()
    }

    #[test]
    fn small_cases() {
        let r = rank_formulas(1).unwrap();
        assert!(r.entries().iter().all(|e| exact(&e.value) == 3));

        let r = rank_formulas(2).unwrap();
        assert_eq!(exact(&r.ranks.r1.value), 1);
        assert_eq!(exact(&r.ranks.r2.value), 6);
        assert_eq!(exact(&r.ranks.r3.value), 6);
        assert_eq!(r.ranks.r4.value, RankValue::bounds(14u32, 23u32));
        assert_eq!(r.ranks.r4.provenance, Provenance::Bounds);
        assert_eq!(exact(&r.ranks.r5.value), 29);

        let r = rank_formulas(3).unwrap();
        assert_eq!(exact(&r.ranks.r2.value), 21);
        assert_eq!(exact(&r.ranks.r3.value), 22);
        assert_eq!(r.ranks.r4.value, RankValue::bounds(57u32, 104u32));
        assert_eq!(exact(&r.ranks.r5.value), 144);

        let r = rank_formulas(6).unwrap();
        assert_eq!(exact(&r.ranks.r4.value), 25_926);
        assert_eq!(r.ranks.r4.provenance, Provenance::Formula);
        assert!(rank_formulas(0).is_err());
    }

    #[test]
    fn breakdown_matches_enumeration() {
        for n in 1..=6 {
            assert_eq!(size_breakdown(n).unwrap().total, big(a_plus_size(n)));
        }
        assert_eq!(size_breakdown(2).unwrap().total, big(29));
        assert!(size_breakdown(0).is_err());
        assert!(size_breakdown(25).is_ok());
    }

    #[test]
    fn large_rank_is_size_minus_n_plus_two() {
        for n in 2..=8 {
            assert_eq!(r5(n), big(a_plus_size(n) - n + 2));
        }
    }

    #[test]
    fn chain_holds_for_many_n() {
        for n in 1..=40 {
            assert!(rank_formulas(n).unwrap().chain_holds(), "n = {n}");
        }
        // 30! overflows u64
        let r = rank_formulas(30).unwrap();
        assert!(u64::try_from(r.ranks.r5.value.as_exact().unwrap()).is_err());
    }
}
