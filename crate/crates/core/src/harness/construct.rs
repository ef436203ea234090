//! Uniform entry point for the coloring constructions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coloring::{default_order, greedy_bounded_palette, is_r_dynamic, Coloring, GreedyError, PaletteParams};
use crate::error::PipelineError;
use crate::graph::Graph;
use crate::lll::product::product_condition_value;
use crate::lll::{dynamic_coloring_general, dynamic_coloring_regular, product_r_dynamic, r_dynamic_partition_coloring};
use crate::pipeline::{base_coloring, PipelineBudget, PipelineOutput};
use crate::transversal::square_bound_coloring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Bounded-palette greedy with `Δ+3` colors.
    Delta3,
    Product,
    Dynam1,
    General,
    Partition,
    Square,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Delta3,
        Method::Product,
        Method::Dynam1,
        Method::General,
        Method::Partition,
        Method::Square,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Delta3 => "delta3",
            Method::Product => "product",
            Method::Dynam1 => "dynam1",
            Method::General => "general",
            Method::Partition => "partition",
            Method::Square => "square",
        }
    }

    /// The dynamism a method targets: `r` for product and partition, 2 otherwise.
    pub fn target_r(self, r: usize) -> usize {
        match self {
            Method::Product | Method::Partition => r,
            _ => 2,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConstructionStatus {
    Ok,
    Failed { reason: String },
    NotApplicable { reason: String },
}

/// Outcome of one construction, comparable across methods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionRecord {
    pub method: Method,
    pub r: usize,
    #[serde(flatten)]
    pub status: ConstructionStatus,
    pub colors_used: Option<usize>,
    /// Color count the construction promises, when finite.
    pub bound: Option<usize>,
    pub valid: bool,
    pub seed: u64,
    /// The method's own record.
    pub detail: serde_json::Value,
}

impl ConstructionRecord {
    /// Ran, produced a valid coloring, and stayed within its bound.
    pub fn conforms(&self) -> bool {
        self.status == ConstructionStatus::Ok
            && self.valid
            && match (self.colors_used, self.bound) {
                (Some(used), Some(bound)) => used <= bound,
                (Some(_), None) => true,
                (None, _) => false,
            }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

fn from_pipeline(method: Method, seed: u64, out: &PipelineOutput) -> ConstructionRecord {
    let rec = &out.record;
    ConstructionRecord {
        method,
        r: rec.r,
        status: ConstructionStatus::Ok,
        colors_used: Some(rec.colors_used),
        bound: rec.additive_budget.map(|a| rec.k_base + a),
        valid: rec.valid,
        seed,
        detail: serde_json::to_value(rec).expect("record serializes"),
    }
}

fn failed(method: Method, r: usize, seed: u64, err: &PipelineError) -> ConstructionRecord {
    let status = match err {
        PipelineError::Precondition(reason) => ConstructionStatus::NotApplicable { reason: reason.clone() },
        other => ConstructionStatus::Failed {
            reason: other.to_string(),
        },
    };
    ConstructionRecord {
        method,
        r,
        status,
        colors_used: None,
        bound: None,
        valid: false,
        seed,
        detail: serde_json::Value::Null,
    }
}

/// Runs one construction. The coloring is `None` unless the status is `Ok`.
pub fn run_method(
    g: &Graph,
    method: Method,
    r: usize,
    seed: u64,
    budget: &PipelineBudget,
) -> (Option<Coloring>, ConstructionRecord) {
    let r = method.target_r(r);
    let result = match method {
        Method::Delta3 => return delta3(g, seed, budget),
        Method::Product => product_r_dynamic(g, r, seed, budget),
        Method::Dynam1 => dynamic_coloring_regular(g, seed, budget),
        Method::General => dynamic_coloring_general(g, seed, budget),
        Method::Partition => r_dynamic_partition_coloring(g, r, seed, budget),
        Method::Square => return square(g, seed, budget),
    };
    match result {
        Ok(out) => {
            let record = from_pipeline(method, seed, &out);
            (Some(out.coloring), record)
        }
        Err(PipelineError::NotConverged { rounds }) if method == Method::Product && !product_condition_holds(g, r) => {
            let reason = format!("balanced-coloring condition fails and resampling stopped after {rounds} rounds");
            (None, failed(method, r, seed, &PipelineError::Precondition(reason)))
        }
        Err(e) => (None, failed(method, r, seed, &e)),
    }
}

fn product_condition_holds(g: &Graph, r: usize) -> bool {
    g.degree_stats()
        .is_ok_and(|p| product_condition_value(p.min_degree, p.max_degree, r) <= 1.0)
}

fn delta3(g: &Graph, seed: u64, budget: &PipelineBudget) -> (Option<Coloring>, ConstructionRecord) {
    let palette = g.max_degree() + 3;
    let params = PaletteParams {
        palette_size: palette,
        r: 2,
        repair_budget: budget.repair,
        seed,
    };
    let mut record = ConstructionRecord {
        method: Method::Delta3,
        r: 2,
        status: ConstructionStatus::Ok,
        colors_used: None,
        bound: Some(palette),
        valid: false,
        seed,
        detail: serde_json::json!({ "palette": palette }),
    };
    match greedy_bounded_palette(g, &default_order(g), params) {
        Ok(c) => {
            record.colors_used = Some(c.num_colors());
            record.valid = is_r_dynamic(g, &c, 2).unwrap_or(false);
            (Some(c), record)
        }
        Err(GreedyError::Exhausted(f)) => {
            record.status = ConstructionStatus::Failed {
                reason: format!(
                    "repair budget spent: {} improper edges, {} bad vertices after {} steps",
                    f.improper_edges,
                    f.deficiency.bad.len(),
                    f.steps
                ),
            };
            (None, record)
        }
        Err(GreedyError::Invalid(e)) => {
            record.status = ConstructionStatus::Failed { reason: e.to_string() };
            (None, record)
        }
    }
}

fn square(g: &Graph, seed: u64, budget: &PipelineBudget) -> (Option<Coloring>, ConstructionRecord) {
    let base = base_coloring(g, budget);
    match square_bound_coloring(g, &base.coloring, seed, budget) {
        Ok(out) => {
            let rec = &out.record;
            let record = ConstructionRecord {
                method: Method::Square,
                r: 2,
                status: ConstructionStatus::Ok,
                colors_used: Some(rec.colors_used),
                bound: Some(rec.k + 2 * rec.l),
                valid: rec.valid,
                seed,
                detail: serde_json::to_value(rec).expect("record serializes"),
            };
            (Some(out.coloring), record)
        }
        Err(e) => (None, failed(Method::Square, 2, seed, &e)),
    }
}
