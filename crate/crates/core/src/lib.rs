//! Dynamic and r-dynamic graph colorings: exact solvers, local-lemma
//! constructions, transversal-forest recoloring and a bound-checking harness.

pub mod codec;
pub mod coloring;
pub mod error;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod lll;
pub mod pipeline;
pub mod transversal;

pub use coloring::{bad_set, is_proper, is_r_dynamic, Coloring, Deficiency};
pub use error::{ColoringError, GraphError, ParseError, PipelineError};
pub use exact::{Budget, Solve, SolveResult};
pub use graph::{DegreeProfile, Graph, VertexSet};
pub use pipeline::{PipelineBudget, PipelineOutput, PipelineRecord, Route};
