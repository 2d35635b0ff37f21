//! Two-row Gog and Magog trapezoids and an explicit bijection between them.
//!
//! * [`trapezoid`]: the two families, per-cell bounds and validation.
//! * [`bijection`]: the Magog-to-Gog map, its inverse, and case analysis.
//! * [`enumeration`]: canonical-order generation, exact counting, rank/unrank.
//! * [`statistics`]: statistic extractors, distributions, counterexamples.
//! * [`harness`]: exhaustive verification reports.
//! * [`format`]: canonical text and JSON encodings.

pub mod bijection;
pub mod enumeration;
pub mod error;
pub mod format;
pub mod harness;
pub mod statistics;
pub mod trapezoid;

pub use bijection::{
    classify_gog, classify_magog, compute_pivot, find_smallest_bug, gog_to_magog, magog_to_gog, CaseTag,
};
pub use enumeration::{count, enumerate, rank, unrank, ColumnCells, ColumnState, CountTable, Enumeration, Ranker};
pub use error::{Error, Result};
pub use format::{Format, ParseError};
pub use harness::{HarnessConfig, VerifyReport};
pub use statistics::{bc_stats, mrr_stats, Pairing, StatComponent, StatSelector, StatVector};
pub use trapezoid::{
    cell_upper_bound, validate_gog, validate_magog, Entry, GogTrapezoid, Kind, MagogTrapezoid, Rule, Trapezoid,
    TrapezoidParams, ValidationReport, Violation,
};

pub use num_bigint::BigUint;
