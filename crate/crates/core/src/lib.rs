//! Exact arithmetic for rank-metric codes over small finite fields.
//!
//! Everything here is decided by exhaustive enumeration or by closed forms
//! checked against it; there is no floating point anywhere.

mod budget;
pub mod codes;
pub mod combinatorics;
pub mod equivalence;
mod error;
pub mod field;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod sweep;

pub use budget::Budget;
pub use codes::RankMetricCode;
pub use error::{Error, Result};
pub use field::{Field, FieldDescription, FieldElement, FieldSpec};
pub use linalg::{Matrix, Subspace};
