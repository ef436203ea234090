//! r-dynamic colorings from an r-way random partition `D_1, ..., D_r`.
//!
//! Each vertex lands in `D_i` (i < r) with probability `p` and in `D_r`
//! otherwise. After resampling, every neighborhood meets every part and no
//! part `i < r` is overfull in any neighborhood, so each `G[D_i]` has small
//! maximum degree and takes a fresh greedy palette; `D_r` keeps the base colors.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use super::engine::{moser_tardos, BadEvent, RandomModel, VarDist};
use crate::coloring::{default_order, greedy_proper, is_r_dynamic, Coloring};
use crate::error::PipelineError;
use crate::graph::{Graph, VertexSet};
use crate::pipeline::{base_coloring, PipelineBudget, PipelineOutput, PipelineRecord, Route};

/// `log(2er(Δ²+1))`.
pub fn partition_log_term(max_degree: usize, r: usize) -> f64 {
    (2.0 * E * r as f64 * (max_degree * max_degree + 1) as f64).ln()
}

/// `δ / log(2er(Δ²+1))`; the construction needs `r` at most this.
pub fn feasibility_ratio(min_degree: usize, max_degree: usize, r: usize) -> f64 {
    min_degree as f64 / partition_log_term(max_degree, r)
}

/// Largest r >= 2 satisfying the precondition, if any.
pub fn max_feasible_r(min_degree: usize, max_degree: usize) -> Option<usize> {
    (2..=min_degree.max(2))
        .take_while(|&r| r as f64 <= feasibility_ratio(min_degree, max_degree, r))
        .last()
}

/// `(r-1)⌈e(Δ/δ)log(2er(Δ²+1))⌉`.
pub fn partition_additive_term(min_degree: usize, max_degree: usize, r: usize) -> Option<usize> {
    (min_degree > 0 && r >= 1).then(|| {
        let per_part = E * max_degree as f64 / min_degree as f64 * partition_log_term(max_degree, r);
        (r - 1) * per_part.ceil() as usize
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    /// `parts[i]` is `D_{i+1}`; the last part keeps the base coloring.
    pub parts: Vec<VertexSet>,
    pub p: f64,
    pub rounds: u64,
}

/// Samples the partition and checks that every neighborhood meets all parts
/// and no small part is overfull.
pub fn r_way_partition(g: &Graph, r: usize, seed: u64, max_rounds: u64) -> Result<Partition, PipelineError> {
    let stats = g.degree_stats()?;
    let (delta, max) = (stats.min_degree, stats.max_degree);
    if r < 2 {
        return Err(PipelineError::Precondition(format!("partition needs r >= 2, got {r}")));
    }
    let ratio = feasibility_ratio(delta, max, r);
    if delta == 0 || r as f64 > ratio {
        let best = max_feasible_r(delta, max)
            .map_or_else(|| "no r >= 2 is feasible".to_string(), |m| format!("max feasible r is {m}"));
        return Err(PipelineError::Precondition(format!(
            "r = {r} exceeds δ/log(2er(Δ²+1)) = {ratio:.3}; {best}"
        )));
    }
    let p = partition_log_term(max, r) / delta as f64;
    let mut weights = vec![p; r - 1];
    weights.push(1.0 - (r - 1) as f64 * p);
    let model = RandomModel {
        vars: vec![VarDist::Categorical { weights }; g.n()],
        seed,
    };
    let mut events = Vec::with_capacity(2 * g.n());
    for v in g.vertices() {
        let scope = g.neighbors(v).to_vec();
        let threshold = E * g.degree(v) as f64 * p;
        let s = scope.clone();
        events.push(BadEvent::new(2 * v, scope.clone(), move |a: &[u32]| {
            let mut seen = vec![false; r];
            for &u in &s {
                seen[a[u] as usize] = true;
            }
            seen.contains(&false)
        }));
        let s = scope.clone();
        events.push(BadEvent::new(2 * v + 1, scope, move |a: &[u32]| {
            let mut counts = vec![0usize; r];
            for &u in &s {
                counts[a[u] as usize] += 1;
            }
            counts[..r - 1].iter().any(|&c| c as f64 >= threshold)
        }));
    }
    let out = moser_tardos(&model, &events, max_rounds)?;
    if !out.converged {
        return Err(PipelineError::NotConverged { rounds: out.rounds });
    }
    let parts: Vec<VertexSet> = (0..r)
        .map(|i| g.vertices().filter(|&v| out.assignment[v] as usize == i).collect())
        .collect();
    check_partition(g, &parts, p)?;
    Ok(Partition {
        parts,
        p,
        rounds: out.rounds,
    })
}

/// Every neighborhood meets every part; parts other than the last are never
/// overfull (`|N(v) ∩ D_i| < e·deg(v)·p`).
pub fn check_partition(g: &Graph, parts: &[VertexSet], p: f64) -> Result<(), PipelineError> {
    let mut part_of = vec![usize::MAX; g.n()];
    for (i, part) in parts.iter().enumerate() {
        for v in part.iter() {
            if part_of[v] != usize::MAX {
                return Err(PipelineError::Structural(format!("vertex {v} lies in two parts")));
            }
            part_of[v] = i;
        }
    }
    if let Some(v) = part_of.iter().position(|&i| i == usize::MAX) {
        return Err(PipelineError::Structural(format!("vertex {v} lies in no part")));
    }
    let r = parts.len();
    for v in g.vertices() {
        let mut counts = vec![0usize; r];
        for &u in g.neighbors(v) {
            counts[part_of[u]] += 1;
        }
        if let Some(i) = counts.iter().position(|&c| c == 0) {
            return Err(PipelineError::Structural(format!("N({v}) misses part {}", i + 1)));
        }
        if let Some(i) = counts[..r - 1].iter().position(|&c| c as f64 >= E * g.degree(v) as f64 * p) {
            return Err(PipelineError::Structural(format!("N({v}) is overfull in part {}", i + 1)));
        }
    }
    Ok(())
}

/// r-dynamic coloring with at most `k_base + (r-1)⌈e(Δ/δ)log(2er(Δ²+1))⌉` colors.
pub fn r_dynamic_partition_coloring(
    g: &Graph,
    r: usize,
    seed: u64,
    budget: &PipelineBudget,
) -> Result<PipelineOutput, PipelineError> {
    let partition = r_way_partition(g, r, seed, budget.max_rounds)?;
    let base = base_coloring(g, budget);
    let mut colors = vec![0; g.n()];
    let last = partition.parts.len() - 1;
    for v in partition.parts[last].iter() {
        colors[v] = base.coloring.color(v);
    }
    let mut offset = base.coloring.max_color().map_or(0, |c| c + 1);
    let mut notes = Vec::new();
    for (i, part) in partition.parts[..last].iter().enumerate() {
        let (inner, map) = g.induced_subgraph(part)?;
        let inner_colors = greedy_proper(&inner, &default_order(&inner));
        let used = inner_colors.max_color().map_or(0, |c| c + 1);
        notes.push(format!("part {} uses {used} fresh colors", i + 1));
        for (j, &v) in map.iter().enumerate() {
            colors[v] = offset + inner_colors.color(j);
        }
        offset += used;
    }
    let coloring = Coloring::new(colors);
    let valid = is_r_dynamic(g, &coloring, r)?;
    let stats = g.degree_stats()?;
    let record = PipelineRecord {
        method: "partition".into(),
        route: Route::Partition,
        r,
        k_base: base.k,
        k_base_certified: base.certified,
        additive_budget: partition_additive_term(stats.min_degree, stats.max_degree, r),
        colors_used: coloring.num_colors(),
        rounds: partition.rounds,
        converged: true,
        seed,
        valid,
        notes,
    };
    if !valid {
        return Err(PipelineError::Structural(format!("partition coloring is not {r}-dynamic")));
    }
    Ok(PipelineOutput { coloring, record })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::random_regular;

    #[test]
    fn feasibility_arithmetic() {
        assert!((partition_log_term(30, 2) - 9.1898).abs() < 1e-3);
        assert!((feasibility_ratio(30, 30, 2) - 3.264).abs() < 1e-3);
        assert!((feasibility_ratio(30, 30, 3) - 3.127).abs() < 1e-3);
        assert_eq!(partition_additive_term(30, 30, 2), Some(25));
        assert_eq!(max_feasible_r(30, 30), Some(3));
        assert_eq!(max_feasible_r(5, 5), None);
    }

    #[test]
    fn rejects_low_degree() {
        let g = random_regular(20, 5, 1).unwrap();
        let err = r_dynamic_partition_coloring(&g, 2, 0, &PipelineBudget::default()).unwrap_err();
        assert!(matches!(err, PipelineError::Precondition(ref m) if m.contains("no r >= 2")));
    }

    #[test]
    fn thirty_regular_two_and_three() {
        let g = random_regular(100, 30, 8).unwrap();
        for r in [2, 3] {
            let out = r_dynamic_partition_coloring(&g, r, 4, &PipelineBudget::default()).unwrap();
            assert!(out.record.valid);
            assert!(out.record.within_budget());
        }
    }
}
