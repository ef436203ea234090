//! Local-lemma constructions built on Moser-Tardos resampling.

pub mod dset;
pub mod engine;
pub mod partition;
pub mod product;

pub use dset::{dset_selection, recolor_with_dset, dynamic_coloring_general, dynamic_coloring_regular, DSet, DSetProfile};
pub use engine::{moser_tardos, BadEvent, LllOutcome, RandomModel, VarDist};
pub use partition::r_dynamic_partition_coloring;
pub use product::{balanced_hypergraph_coloring, product_r_dynamic, Hypergraph};
