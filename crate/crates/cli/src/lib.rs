//! Analysis records, the JSON catalog, and the command pipeline behind the `regwt`
//! binary.

pub mod catalog;
pub mod record;

pub use record::{analyze, AnalysisRecord, CatalogEntry, CheckSet, CheckSummary, Options, Toggle};
