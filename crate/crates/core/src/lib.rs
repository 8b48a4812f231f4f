//! Exact computations in the additive semigroup `A⁺(B_n)` of affine maps over
//! the Brandt semigroup `B_n`: element enumeration, Cayley tables, Green's
//! relations, and the five ranks `r₁ … r₅`.
//!
//! ```
//! use aplus_core::{APlus, ranks::rank_formulas};
//!
//! let a = APlus::new(2).unwrap();
//! assert_eq!(a.size(), 29);
//! let report = rank_formulas(2).unwrap();
//! assert_eq!(report.ranks.r2.value.to_string(), "6");
//! ```

pub mod affine;
pub mod aplus;
pub mod brandt;
pub mod combinations;
pub mod error;
pub mod index_set;
pub mod io;
pub mod perm;
pub mod ranks;
pub mod semigroup;

pub use affine::AffineMapElement;
pub use aplus::{APlus, Stratum};
pub use brandt::BnElement;
pub use error::{Error, Result};
pub use index_set::IndexSet;
pub use io::{export_table, import_table, TableFormat};
pub use perm::Permutation;
pub use ranks::{RankReport, RankValue, SearchBudget, SearchOutcome, SearchResult};
pub use semigroup::{FiniteSemigroup, Side};
