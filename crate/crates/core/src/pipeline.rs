//! Shared configuration and result records for the coloring constructions.

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::exact::{chromatic_number, dsatur, Budget, Solve};
use crate::graph::Graph;
use crate::lll::engine::DEFAULT_MAX_ROUNDS;

/// Work limits shared by the randomized pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineBudget {
    /// Node budget for exact sub-solves (base coloring, bad-set search).
    pub exact: Budget,
    /// Cap on local-lemma resamplings.
    pub max_rounds: u64,
    /// Cap on greedy repair steps.
    pub repair: usize,
    /// Exact base colorings are attempted only up to this many vertices.
    pub exact_max_n: usize,
}

impl Default for PipelineBudget {
    fn default() -> Self {
        PipelineBudget {
            exact: Budget(2_000_000),
            max_rounds: DEFAULT_MAX_ROUNDS,
            repair: 100_000,
            exact_max_n: 40,
        }
    }
}

/// Proper coloring every construction builds on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseColoring {
    pub coloring: Coloring,
    pub k: usize,
    /// True when `k` is certified equal to the chromatic number.
    pub certified: bool,
}

/// Exact chromatic coloring on small graphs, DSATUR otherwise.
pub fn base_coloring(g: &Graph, budget: &PipelineBudget) -> BaseColoring {
    if g.n() <= budget.exact_max_n {
        let solved = chromatic_number(g, budget.exact);
        let certified = matches!(solved, Solve::Exact(_));
        let coloring = solved.witness().cloned().unwrap_or_else(|| dsatur(g));
        let k = coloring.num_colors();
        return BaseColoring {
            coloring,
            k,
            certified,
        };
    }
    let coloring = dsatur(g);
    BaseColoring {
        k: coloring.num_colors(),
        coloring,
        certified: false,
    }
}

/// Which branch of a construction produced the coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Bounded-palette greedy with repair.
    BoundedPalette,
    /// Pair coloring (proper coloring x balanced hypergraph coloring).
    Product,
    /// Local-lemma D-set recoloring on top of a base coloring.
    DSet,
    /// r-way local-lemma partition.
    Partition,
    /// Exact solver (maximum degree at most 2).
    Exact,
    /// Base coloring already satisfies the requirement.
    Trivial,
}

/// Stable JSON record of one pipeline run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineRecord {
    pub method: String,
    pub route: Route,
    pub r: usize,
    pub k_base: usize,
    pub k_base_certified: bool,
    /// Colors allowed beyond `k_base`; `None` when the bound is infinite.
    pub additive_budget: Option<usize>,
    pub colors_used: usize,
    pub rounds: u64,
    pub converged: bool,
    pub seed: u64,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl PipelineRecord {
    pub fn within_budget(&self) -> bool {
        match self.additive_budget {
            Some(extra) => self.colors_used <= self.k_base + extra,
            None => true,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutput {
    pub coloring: Coloring,
    pub record: PipelineRecord,
}
