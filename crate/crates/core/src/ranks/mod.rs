//! The five ranks: closed forms, witness sets, and exact searches.
//!
//! Searches never fail on budget exhaustion; they report bounds instead.

mod compute;
mod formulas;
mod independent;
mod intermediate;
mod large;
mod lower;
mod small;
mod upper;
mod verify;
mod witness;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::index_set::IndexSet;
use crate::semigroup::FiniteSemigroup;

pub use compute::{aplus_rank, entry_from_search, RankKind};
pub use formulas::{kappa, rank_formulas, size_breakdown, SizeBreakdown};
pub use intermediate::{
    for_each_independent_generating, intermediate_rank_verify, max_independent_generating,
    IntermediateRank,
};
pub use large::{large_rank_exact, smallest_prime_subset};
pub use lower::{generation_lower_bound, lower_rank_exact};
pub use small::{small_rank, small_rank_by_definition};
pub use upper::{aplus_strata_caps, upper_rank_search, UpperSearchOptions};
pub use verify::{verify_all, CheckResult, CheckStatus, VerificationReport};
pub use witness::{construct_witness, WitnessKind};

/// Wall-clock and node limits for a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget {
        time_limit: None,
        node_limit: None,
    };

    pub fn new(time_limit: Duration, node_limit: u64) -> Self {
        SearchBudget {
            time_limit: Some(time_limit),
            node_limit: Some(node_limit),
        }
    }

    pub fn seconds(secs: f64) -> Self {
        SearchBudget {
            time_limit: Some(Duration::from_secs_f64(secs)),
            node_limit: None,
        }
    }

    pub fn nodes(limit: u64) -> Self {
        SearchBudget {
            time_limit: None,
            node_limit: Some(limit),
        }
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            budget: *self,
            start: Instant::now(),
            nodes: 0,
            exhausted: false,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(Duration::from_secs(60), 100_000_000)
    }
}

/// Counts search nodes and latches once the budget runs out.
#[derive(Debug)]
pub(crate) struct Meter {
    budget: SearchBudget,
    start: Instant,
    nodes: u64,
    exhausted: bool,
}

impl Meter {
    /// Registers one node; `false` once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if let Some(limit) = self.budget.node_limit {
            if self.nodes > limit {
                self.exhausted = true;
            }
        }
        if let Some(limit) = self.budget.time_limit {
            if self.start.elapsed() > limit {
                self.exhausted = true;
            }
        }
        !self.exhausted
    }

    /// Checks the clock without counting a node, for long stretches of work
    /// inside one node.
    pub(crate) fn expired(&mut self) -> bool {
        if let Some(limit) = self.budget.time_limit {
            if self.start.elapsed() > limit {
                self.exhausted = true;
            }
        }
        self.exhausted
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

/// Result of a budgeted search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Exact {
        value: usize,
        witness: IndexSet,
    },
    /// The search stopped early. `witness` realises `lower` when present.
    Bounds {
        lower: usize,
        upper: usize,
        witness: Option<IndexSet>,
    },
}

impl SearchOutcome {
    pub fn exact_value(&self) -> Option<usize> {
        match self {
            SearchOutcome::Exact { value, .. } => Some(*value),
            SearchOutcome::Bounds { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&IndexSet> {
        match self {
            SearchOutcome::Exact { witness, .. } => Some(witness),
            SearchOutcome::Bounds { witness, .. } => witness.as_ref(),
        }
    }

    pub fn bounds(&self) -> (usize, usize) {
        match self {
            SearchOutcome::Exact { value, .. } => (*value, *value),
            SearchOutcome::Bounds { lower, upper, .. } => (*lower, *upper),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SearchOutcome::Exact { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Formula,
    Witness,
    ExactSearch,
    Bounds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankValue {
    Exact(BigUint),
    Bounds { lower: BigUint, upper: BigUint },
}

impl RankValue {
    pub fn exact(v: impl Into<BigUint>) -> Self {
        RankValue::Exact(v.into())
    }

    pub fn bounds(lower: impl Into<BigUint>, upper: impl Into<BigUint>) -> Self {
        RankValue::Bounds {
            lower: lower.into(),
            upper: upper.into(),
        }
    }

    pub fn lower(&self) -> &BigUint {
        match self {
            RankValue::Exact(v) => v,
            RankValue::Bounds { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> &BigUint {
        match self {
            RankValue::Exact(v) => v,
            RankValue::Bounds { upper, .. } => upper,
        }
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            RankValue::Exact(v) => Some(v),
            RankValue::Bounds { .. } => None,
        }
    }
}

impl std::fmt::Display for RankValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RankValue::Exact(v) => write!(f, "{v}"),
            RankValue::Bounds { lower, upper } => write!(f, "[{lower}, {upper}]"),
        }
    }
}

/// Integers that fit in a u64 serialise as JSON numbers, larger ones as decimal strings.
pub(crate) fn serialize_big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(v) {
        Ok(x) => s.serialize_u64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

#[derive(Serialize)]
struct BigNum<'a>(#[serde(serialize_with = "serialize_big")] &'a BigUint);

impl Serialize for RankValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(1))?;
        match self {
            RankValue::Exact(v) => map.serialize_entry("value", &BigNum(v))?,
            RankValue::Bounds { lower, upper } => {
                map.serialize_entry("bounds", &[BigNum(lower), BigNum(upper)])?
            }
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    #[serde(flatten)]
    pub value: RankValue,
    pub provenance: Provenance,
    /// Labels of the witness set, when one backs the value.
    pub witness: Option<Vec<String>>,
    #[serde(rename = "elapsed_ms", serialize_with = "serialize_ms")]
    pub elapsed: Duration,
}

fn serialize_ms<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl RankEntry {
    pub fn formula(value: RankValue) -> Self {
        let provenance = match value {
            RankValue::Exact(_) => Provenance::Formula,
            RankValue::Bounds { .. } => Provenance::Bounds,
        };
        RankEntry {
            value,
            provenance,
            witness: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn with_witness(mut self, s: &FiniteSemigroup, witness: Option<&IndexSet>) -> Self {
        self.witness = witness.map(|w| s.labels_of(w));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ranks {
    pub r1: RankEntry,
    pub r2: RankEntry,
    pub r3: RankEntry,
    pub r4: RankEntry,
    pub r5: RankEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub n: usize,
    pub ranks: Ranks,
}

impl RankReport {
    pub fn entries(&self) -> [&RankEntry; 5] {
        let r = &self.ranks;
        [&r.r1, &r.r2, &r.r3, &r.r4, &r.r5]
    }

    /// `r₁ ≤ … ≤ r₅` for exact values. With bounds, each lower bound must not
    /// exceed the next value's upper bound.
    pub fn chain_holds(&self) -> bool {
        self.entries()
            .windows(2)
            .all(|w| w[0].value.lower() <= w[1].value.upper())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rank reports serialise")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let e = |v| RankEntry::formula(v);
        let report = RankReport {
            n: 2,
            ranks: Ranks {
                r1: e(RankValue::exact(1u32)),
                r2: e(RankValue::exact(6u32)),
                r3: e(RankValue::exact(6u32)),
                r4: e(RankValue::bounds(14u32, 23u32)),
                r5: e(RankValue::exact(BigUint::from(10u32).pow(30))),
            },
        };
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["ranks"]["r1"]["value"], 1);
        assert_eq!(v["ranks"]["r1"]["provenance"], "formula");
        assert_eq!(v["ranks"]["r4"]["bounds"], serde_json::json!([14, 23]));
        assert_eq!(v["ranks"]["r4"]["provenance"], "bounds");
        assert_eq!(v["ranks"]["r5"]["value"], "1000000000000000000000000000000");
        assert_eq!(v["ranks"]["r2"]["elapsed_ms"], 0);
        assert!(v["ranks"]["r2"]["witness"].is_null());
        assert!(report.chain_holds());
    }

    #[test]
    fn meter_latches() {
        let mut m = SearchBudget::nodes(3).meter();
        assert!(m.tick() && m.tick() && m.tick());
        assert!(!m.tick());
        assert!(!m.tick());
        assert!(m.exhausted());
    }
}
