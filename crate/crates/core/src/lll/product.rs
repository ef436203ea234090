//! Balanced hypergraph colorings and the pair-coloring construction
//! `chi_r(G) <= r * chi(G)`.

use serde::{Deserialize, Serialize};

use super::engine::{moser_tardos, BadEvent, RandomModel, VarDist};
use crate::coloring::{is_r_dynamic, Coloring};
use crate::error::PipelineError;
use crate::graph::Graph;
use crate::pipeline::{base_coloring, PipelineBudget, PipelineOutput, PipelineRecord, Route};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self, PipelineError> {
        for (i, e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(PipelineError::Precondition(format!("hyperedge {i} is empty")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(PipelineError::Precondition(format!("hyperedge {i} names vertex {v} >= {n}")));
            }
        }
        Ok(Hypergraph { n, edges })
    }

    /// The neighborhood hypergraph: for each vertex, its `size` smallest neighbors.
    pub fn truncated_neighborhoods(g: &Graph, size: usize) -> Result<Self, PipelineError> {
        let edges = g
            .vertices()
            .map(|v| g.neighbors(v).iter().copied().take(size).collect())
            .collect();
        Hypergraph::new(g.n(), edges)
    }

    pub fn min_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Largest number of other hyperedges any hyperedge meets.
    pub fn max_meets(&self) -> usize {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                incident[v].push(i);
            }
        }
        let mut seen = vec![usize::MAX; self.edges.len()];
        let mut best = 0;
        for (i, e) in self.edges.iter().enumerate() {
            let mut count = 0;
            seen[i] = i;
            for &v in e {
                for &j in &incident[v] {
                    if seen[j] != i {
                        seen[j] = i;
                        count += 1;
                    }
                }
            }
            best = best.max(count);
        }
        best
    }
}

/// `e((d+1)(r-1)+1)(1-1/r)^k`: at most 1 guarantees a coloring in which every
/// hyperedge (at least k points, meeting at most d others) shows all r colors.
pub fn balanced_condition_value(k: usize, d: usize, r: usize) -> f64 {
    let r_f = r as f64;
    std::f64::consts::E * ((d as f64 + 1.0) * (r_f - 1.0) + 1.0) * (1.0 - 1.0 / r_f).powi(k as i32)
}

/// `e((δΔ-δ+1)(r-1)+1)(1-1/r)^δ`: the neighborhood-hypergraph instance of the
/// condition above, with k = δ and d = δ(Δ-1).
pub fn product_condition_value(min_degree: usize, max_degree: usize, r: usize) -> f64 {
    balanced_condition_value(min_degree, min_degree * max_degree.saturating_sub(1), r)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalancedColoring {
    pub colors: Vec<usize>,
    pub rounds: u64,
    pub condition_value: f64,
    pub condition_holds: bool,
}

/// r-colors the vertices so that every hyperedge contains all r colors.
/// The sufficient condition is reported but not required.
pub fn balanced_hypergraph_coloring(
    h: &Hypergraph,
    r: usize,
    seed: u64,
    max_rounds: u64,
) -> Result<BalancedColoring, PipelineError> {
    if r < 2 {
        return Err(PipelineError::Precondition(format!("balanced coloring needs r >= 2, got {r}")));
    }
    let condition_value = balanced_condition_value(h.min_edge_size(), h.max_meets(), r);
    let model = RandomModel {
        vars: vec![VarDist::uniform(r); h.n],
        seed,
    };
    let events: Vec<BadEvent> = h
        .edges
        .iter()
        .enumerate()
        .map(|(i, edge)| {
            let scope = edge.clone();
            BadEvent::new(i, edge.clone(), move |a: &[u32]| {
                let mut present = 0u64;
                for &v in &scope {
                    present |= 1 << a[v];
                }
                present.count_ones() < r as u32
            })
        })
        .collect();
    if r > 64 {
        return Err(PipelineError::Precondition("balanced coloring supports r <= 64".into()));
    }
    let out = moser_tardos(&model, &events, max_rounds)?;
    if !out.converged {
        return Err(PipelineError::NotConverged { rounds: out.rounds });
    }
    Ok(BalancedColoring {
        colors: out.assignment.iter().map(|&x| x as usize).collect(),
        rounds: out.rounds,
        condition_value,
        condition_holds: condition_value <= 1.0,
    })
}

/// Pair coloring `(f(v), g(v))` where `f` is a proper coloring and `g` shows
/// all r colors on the δ smallest neighbors of every vertex.
pub fn product_r_dynamic(
    g: &Graph,
    r: usize,
    seed: u64,
    budget: &PipelineBudget,
) -> Result<PipelineOutput, PipelineError> {
    if r < 2 {
        return Err(PipelineError::Precondition(
            "product construction needs r >= 2; any proper coloring is 1-dynamic".into(),
        ));
    }
    let profile = g.degree_stats()?;
    if profile.min_degree == 0 {
        return Err(PipelineError::Precondition("product construction needs minimum degree >= 1".into()));
    }
    let h = Hypergraph::truncated_neighborhoods(g, profile.min_degree)?;
    let balanced = balanced_hypergraph_coloring(&h, r, seed, budget.max_rounds)?;
    let base = base_coloring(g, budget);
    let colors: Vec<usize> = g
        .vertices()
        .map(|v| base.coloring.color(v) * r + balanced.colors[v])
        .collect();
    let coloring = Coloring::new(colors);
    let valid = is_r_dynamic(g, &coloring, r)?;
    let cond = product_condition_value(profile.min_degree, profile.max_degree, r);
    let record = PipelineRecord {
        method: "product".into(),
        route: Route::Product,
        r,
        k_base: base.k,
        k_base_certified: base.certified,
        additive_budget: Some((r - 1) * base.k),
        colors_used: coloring.num_colors(),
        rounds: balanced.rounds,
        converged: true,
        seed,
        valid,
        notes: vec![format!(
            "balanced-coloring condition {} (value {:.3})",
            if cond <= 1.0 { "holds" } else { "fails" },
            cond
        )],
    };
    if !valid {
        return Err(PipelineError::Structural("pair coloring failed the r-dynamic check".into()));
    }
    Ok(PipelineOutput { coloring, record })
}
