//! Generators, bound tables, verification and scans.

pub mod bounds;
pub mod construct;
pub mod corpus;
pub mod generate;
pub mod scan;
pub mod verify;

pub use bounds::{bound_table, BoundReport, BoundRow};
pub use construct::{run_method, ConstructionRecord, ConstructionStatus, Method};
pub use corpus::{Corpus, CorpusEntry, Provenance};
pub use generate::{generate, random_bipartite_regular, random_regular, Family};
pub use scan::{montgomery_scan, ScanReport};
pub use verify::{verify_instance, Verdict, VerdictStatus};
