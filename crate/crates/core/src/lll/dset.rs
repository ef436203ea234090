//! Dynamic colorings from a base coloring plus a recolored set `D ⊆ N(B)`,
//! where `B` is the (independent) set of bad vertices of the base coloring.
//!
//! Every vertex of `N(B)` joins `D` independently with probability `p`; the
//! resampling engine removes three families of bad events:
//!
//! * `v ∈ B`: `N(v)` misses `D` or lies inside `D`;
//! * `v ∈ N(B)`: `|N(v) ∩ D| >= e·deg(v)·p` (keeps `G[D]` sparse);
//! * any other `v`: `N(v) ⊆ D`.
//!
//! `G[D]` is then recolored greedily on a fresh palette.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use super::engine::{moser_tardos, BadEvent, RandomModel, VarDist};
use super::product::product_r_dynamic;
use crate::coloring::{
    bad_set, default_order, greedy_bounded_palette, greedy_proper, is_r_dynamic, Coloring,
    GreedyError, PaletteParams,
};
use crate::error::PipelineError;
use crate::exact::{find_coloring, r_dynamic_number, ColoringMode};
use crate::graph::{Graph, VertexSet};
use crate::pipeline::{base_coloring, BaseColoring, PipelineBudget, PipelineOutput, PipelineRecord, Route};

/// Degree at or below which the regular-graph pipeline uses the Δ+3 palette.
pub const REGULAR_GREEDY_MAX_DEGREE: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DSetProfile {
    /// d-regular, `p = log(e(d²+1))/d`.
    Regular,
    /// Arbitrary degrees, `p = log(2e(Δ²+1))/δ`.
    General,
}

/// Selection probability and its precondition for the given profile.
pub fn selection_probability(g: &Graph, profile: DSetProfile) -> Result<f64, PipelineError> {
    let stats = g.degree_stats()?;
    match profile {
        DSetProfile::Regular => {
            let d = stats
                .degree
                .ok_or_else(|| PipelineError::Precondition("regular profile needs a regular graph".into()))?;
            if d < REGULAR_GREEDY_MAX_DEGREE {
                return Err(PipelineError::Precondition(format!(
                    "regular profile needs d >= {REGULAR_GREEDY_MAX_DEGREE}, got d = {d}"
                )));
            }
            let p = (E * (d * d + 1) as f64).ln() / d as f64;
            if p >= 1.0 {
                return Err(PipelineError::Precondition(format!("p = {p:.4} is not below 1")));
            }
            Ok(p)
        }
        DSetProfile::General => {
            let (delta, max) = (stats.min_degree, stats.max_degree);
            let log_term = general_log_term(max);
            if delta == 0 || log_term > delta as f64 / 2.0 {
                return Err(PipelineError::Precondition(format!(
                    "general profile needs log(2e(Δ²+1)) = {log_term:.4} <= δ/2 = {}",
                    delta as f64 / 2.0
                )));
            }
            Ok(log_term / delta as f64)
        }
    }
}

/// `log(2e(Δ²+1))`.
pub fn general_log_term(max_degree: usize) -> f64 {
    (2.0 * E * (max_degree * max_degree + 1) as f64).ln()
}

/// `⌈e·log(d²+1) + e⌉`, the additive term for d-regular graphs.
pub fn regular_additive_term(d: usize) -> usize {
    (E * ((d * d + 1) as f64).ln() + E).ceil() as usize
}

/// `⌈e·(Δ/δ)·log(2e(Δ²+1))⌉`.
pub fn general_additive_term(min_degree: usize, max_degree: usize) -> Option<usize> {
    (min_degree > 0).then(|| {
        (E * max_degree as f64 / min_degree as f64 * general_log_term(max_degree)).ceil() as usize
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DSet {
    pub set: VertexSet,
    pub p: f64,
    pub rounds: u64,
    /// Largest degree inside `G[D]`.
    pub max_inner_degree: usize,
}

/// Selects `D ⊆ N(B)` avoiding all three event families, then re-checks the
/// structural guarantees directly on the result.
pub fn dset_selection(
    g: &Graph,
    c: &Coloring,
    bad: &VertexSet,
    profile: DSetProfile,
    seed: u64,
    max_rounds: u64,
) -> Result<DSet, PipelineError> {
    let actual = bad_set(g, c, 2)?.bad;
    if &actual != bad {
        return Err(PipelineError::Precondition("B is not the bad set of the coloring".into()));
    }
    if !g.is_independent(bad) {
        return Err(PipelineError::Precondition("bad set is not independent".into()));
    }
    let p = selection_probability(g, profile)?;
    if bad.is_empty() {
        return Ok(DSet {
            set: VertexSet::new(),
            p,
            rounds: 0,
            max_inner_degree: 0,
        });
    }
    let neighborhood = g.neighborhood_of_set(bad);
    let mut var_of = vec![usize::MAX; g.n()];
    for (i, v) in neighborhood.iter().enumerate() {
        var_of[v] = i;
    }
    let in_bad = bad.mask(g.n());
    let model = RandomModel {
        vars: vec![VarDist::Bernoulli { p }; neighborhood.len()],
        seed,
    };

    let mut events = Vec::new();
    for v in g.vertices() {
        let scope: Vec<usize> = g
            .neighbors(v)
            .iter()
            .filter(|&&u| var_of[u] != usize::MAX)
            .map(|&u| var_of[u])
            .collect();
        if scope.is_empty() {
            continue;
        }
        let id = events.len();
        if in_bad[v] {
            let s = scope.clone();
            events.push(BadEvent::new(id, scope, move |a: &[u32]| {
                let inside = s.iter().filter(|&&x| a[x] == 1).count();
                inside == 0 || inside == s.len()
            }));
        } else if var_of[v] != usize::MAX {
            let threshold = E * g.degree(v) as f64 * p;
            let s = scope.clone();
            events.push(BadEvent::new(id, scope, move |a: &[u32]| {
                s.iter().filter(|&&x| a[x] == 1).count() as f64 >= threshold
            }));
        } else if scope.len() == g.degree(v) {
            let s = scope.clone();
            events.push(BadEvent::new(id, scope, move |a: &[u32]| s.iter().all(|&x| a[x] == 1)));
        }
    }
    let out = moser_tardos(&model, &events, max_rounds)?;
    if !out.converged {
        return Err(PipelineError::NotConverged { rounds: out.rounds });
    }
    let set: VertexSet = neighborhood
        .iter()
        .filter(|&v| out.assignment[var_of[v]] == 1)
        .collect();
    let max_inner_degree = check_dset(g, bad, &neighborhood, &set, p)?;
    Ok(DSet {
        set,
        p,
        rounds: out.rounds,
        max_inner_degree,
    })
}

/// Structural postconditions of a D-set; returns the max degree of `G[D]`.
pub fn check_dset(
    g: &Graph,
    bad: &VertexSet,
    neighborhood: &VertexSet,
    set: &VertexSet,
    p: f64,
) -> Result<usize, PipelineError> {
    let in_d = set.mask(g.n());
    if let Some(v) = set.iter().find(|&v| !neighborhood.contains(v)) {
        return Err(PipelineError::Structural(format!("D contains {v} outside N(B)")));
    }
    for v in bad.iter() {
        let inside = g.neighbors(v).iter().filter(|&&u| in_d[u]).count();
        if inside == 0 || inside == g.degree(v) {
            return Err(PipelineError::Structural(format!(
                "bad vertex {v} needs neighbors both in and out of D"
            )));
        }
    }
    for v in neighborhood.iter() {
        let inside = g.neighbors(v).iter().filter(|&&u| in_d[u]).count();
        if inside as f64 >= E * g.degree(v) as f64 * p {
            return Err(PipelineError::Structural(format!("vertex {v} has {inside} neighbors in D")));
        }
    }
    for v in g.vertices() {
        if !bad.contains(v) && g.degree(v) > 0 && g.neighbors(v).iter().all(|&u| in_d[u]) {
            return Err(PipelineError::Structural(format!("vertex {v} has every neighbor in D")));
        }
    }
    Ok(set
        .iter()
        .map(|v| g.neighbors(v).iter().filter(|&&u| in_d[u]).count())
        .max()
        .unwrap_or(0))
}

/// Base coloring kept outside `D`, greedy coloring of `G[D]` on colors
/// `offset..offset + palette`.
fn recolor_dset(g: &Graph, base: &Coloring, dset: &DSet, offset: usize, palette: usize) -> Result<Coloring, PipelineError> {
    let (inner, map) = g.induced_subgraph(&dset.set)?;
    let inner_colors = greedy_proper(&inner, &default_order(&inner));
    if inner_colors.max_color().is_some_and(|c| c >= palette) {
        return Err(PipelineError::Structural(format!(
            "G[D] needed more than {palette} colors"
        )));
    }
    let mut colors = base.clone().into_inner();
    for (i, &v) in map.iter().enumerate() {
        colors[v] = offset + inner_colors.color(i);
    }
    Ok(Coloring::new(colors))
}

fn greedy_route(g: &Graph, palette: usize, seed: u64, budget: &PipelineBudget) -> Result<Coloring, GreedyError> {
    let params = PaletteParams {
        palette_size: palette,
        r: 2,
        repair_budget: budget.repair,
        seed,
    };
    greedy_bounded_palette(g, &default_order(g), params)
}

struct Context {
    base: BaseColoring,
    additive: Option<usize>,
    seed: u64,
    method: &'static str,
    notes: Vec<String>,
}

impl Context {
    fn finish(self, g: &Graph, coloring: Coloring, route: Route, rounds: u64) -> Result<PipelineOutput, PipelineError> {
        let valid = is_r_dynamic(g, &coloring, 2)?;
        let record = PipelineRecord {
            method: self.method.into(),
            route,
            r: 2,
            k_base: self.base.k,
            k_base_certified: self.base.certified,
            additive_budget: self.additive,
            colors_used: coloring.num_colors(),
            rounds,
            converged: true,
            seed: self.seed,
            valid,
            notes: self.notes,
        };
        if !valid {
            return Err(PipelineError::Structural(format!(
                "{} route produced a coloring that is not 2-dynamic",
                serde_json::to_string(&route).unwrap_or_default()
            )));
        }
        Ok(PipelineOutput { coloring, record })
    }

    fn product(mut self, g: &Graph, budget: &PipelineBudget) -> Result<PipelineOutput, PipelineError> {
        let out = product_r_dynamic(g, 2, self.seed, budget)?;
        self.notes.extend(out.record.notes);
        let rounds = out.record.rounds;
        self.finish(g, out.coloring, Route::Product, rounds)
    }
}

/// Independent-bad-set base coloring on `k` colors, if the search finds one.
fn independent_bad_base(g: &Graph, base: &BaseColoring, seed: u64, budget: &PipelineBudget) -> Option<Coloring> {
    let current = bad_set(g, &base.coloring, 2).ok()?.bad;
    if g.is_independent(&current) {
        return Some(base.coloring.clone());
    }
    find_coloring(g, base.k, ColoringMode::IndependentBadSet, budget.exact, seed).coloring()
}

/// Keeps `base` outside a D-set and recolors `G[D]` on fresh colors above
/// the base palette. `base` must have an independent bad set.
pub fn recolor_with_dset(
    g: &Graph,
    base: &Coloring,
    profile: DSetProfile,
    seed: u64,
    budget: &PipelineBudget,
) -> Result<(Coloring, DSet), PipelineError> {
    let bad = bad_set(g, base, 2)?.bad;
    let dset = dset_selection(g, base, &bad, profile, seed, budget.max_rounds)?;
    // G[D] has max degree below e·Δ·p, so floor(e·Δ·p) + 1 colors always suffice.
    let mut palette = (E * g.max_degree() as f64 * dset.p).floor() as usize + 1;
    if let Ok(stats) = g.degree_stats() {
        let hint = match profile {
            DSetProfile::Regular => stats.degree.map(regular_additive_term),
            DSetProfile::General => general_additive_term(stats.min_degree, stats.max_degree),
        };
        palette = palette.max(hint.unwrap_or(0));
    }
    let offset = base.max_color().map_or(0, |c| c + 1);
    let coloring = recolor_dset(g, base, &dset, offset, palette)?;
    Ok((coloring, dset))
}

fn dset_route(
    g: &Graph,
    mut ctx: Context,
    base: Coloring,
    profile: DSetProfile,
    budget: &PipelineBudget,
) -> Result<PipelineOutput, PipelineError> {
    let (coloring, dset) = recolor_with_dset(g, &base, profile, ctx.seed, budget)?;
    ctx.notes.push(format!("|D| = {}, max degree in G[D] = {}", dset.set.len(), dset.max_inner_degree));
    ctx.finish(g, coloring, Route::DSet, dset.rounds)
}

/// 2-dynamic coloring of a d-regular graph with at most
/// `k_base + ⌈e·log(d²+1) + e⌉` colors.
pub fn dynamic_coloring_regular(g: &Graph, seed: u64, budget: &PipelineBudget) -> Result<PipelineOutput, PipelineError> {
    let stats = g.degree_stats()?;
    let d = stats
        .degree
        .ok_or_else(|| PipelineError::Precondition("graph is not regular".into()))?;
    let base = base_coloring(g, budget);
    let mut ctx = Context {
        additive: Some(regular_additive_term(d)),
        base,
        seed,
        method: "dynam1",
        notes: Vec::new(),
    };
    if d == 0 {
        let coloring = Coloring::new(vec![0; g.n()]);
        return ctx.finish(g, coloring, Route::Trivial, 0);
    }
    if d <= REGULAR_GREEDY_MAX_DEGREE {
        return match greedy_route(g, d + 3, seed, budget) {
            Ok(c) => ctx.finish(g, c, Route::BoundedPalette, 0),
            Err(e) => {
                ctx.notes.push(format!("bounded palette failed: {e}"));
                ctx.product(g, budget)
            }
        };
    }
    if ctx.base.k <= 3 {
        ctx.notes.push("base coloring has at most 3 colors".into());
        return ctx.product(g, budget);
    }
    let Some(start) = independent_bad_base(g, &ctx.base, seed ^ 1, budget) else {
        ctx.notes.push("no base coloring with independent bad set found".into());
        return ctx.product(g, budget);
    };
    dset_route(g, ctx, start, DSetProfile::Regular, budget)
}

/// 2-dynamic coloring with at most `k_base + ⌈e(Δ/δ)log(2e(Δ²+1))⌉` colors.
pub fn dynamic_coloring_general(g: &Graph, seed: u64, budget: &PipelineBudget) -> Result<PipelineOutput, PipelineError> {
    let stats = g.degree_stats()?;
    let (delta, max) = (stats.min_degree, stats.max_degree);
    let base = base_coloring(g, budget);
    let mut ctx = Context {
        additive: general_additive_term(delta, max),
        base,
        seed,
        method: "general",
        notes: Vec::new(),
    };
    if max <= 2 {
        let coloring = exact_by_component(g, budget)?;
        return ctx.finish(g, coloring, Route::Exact, 0);
    }
    let lll_regime = delta > 0 && general_log_term(max) < delta as f64 / 2.0;
    if lll_regime {
        if ctx.base.k <= 3 {
            ctx.notes.push("base coloring has at most 3 colors".into());
            match product_r_dynamic(g, 2, seed, budget) {
                Ok(out) => {
                    ctx.notes.extend(out.record.notes);
                    return ctx.finish(g, out.coloring, Route::Product, out.record.rounds);
                }
                Err(e) => ctx.notes.push(format!("product route failed: {e}")),
            }
        } else if let Some(start) = independent_bad_base(g, &ctx.base, seed ^ 1, budget) {
            let notes = ctx.notes.clone();
            let base = ctx.base.clone();
            match dset_route(g, ctx, start, DSetProfile::General, budget) {
                Ok(out) => return Ok(out),
                Err(e) => {
                    ctx = Context {
                        additive: general_additive_term(delta, max),
                        base,
                        seed,
                        method: "general",
                        notes,
                    };
                    ctx.notes.push(format!("D-set route failed: {e}"));
                }
            }
        } else {
            ctx.notes.push("no base coloring with independent bad set found".into());
        }
    }
    let mut last = None;
    for palette in [max + 1, max + 3] {
        match greedy_route(g, palette, seed, budget) {
            Ok(c) => return ctx.finish(g, c, Route::BoundedPalette, 0),
            Err(e) => last = Some(e),
        }
    }
    Err(PipelineError::Stage {
        stage: "bounded palette".into(),
        reason: last.map(|e| e.to_string()).unwrap_or_default(),
    })
}

/// Exact 2-dynamic coloring of each component, sharing one palette.
fn exact_by_component(g: &Graph, budget: &PipelineBudget) -> Result<Coloring, PipelineError> {
    let mut colors = vec![0; g.n()];
    for comp in g.components() {
        let (sub, map) = g.induced_subgraph(&comp)?;
        let solved = r_dynamic_number(&sub, 2, budget.exact);
        let witness = solved.witness().ok_or_else(|| PipelineError::Stage {
            stage: "exact".into(),
            reason: "no witness within budget".into(),
        })?;
        for (i, &v) in map.iter().enumerate() {
            colors[v] = witness.color(i);
        }
    }
    Ok(Coloring::new(colors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{generate, random_regular, Family};

    #[test]
    fn additive_terms() {
        assert_eq!(regular_additive_term(14), 18);
        assert_eq!(general_additive_term(30, 30), Some(24));
        assert_eq!(general_additive_term(0, 3), None);
        let p = selection_probability(&random_regular(200, 14, 1).unwrap(), DSetProfile::Regular).unwrap();
        assert!((p - 0.4488).abs() < 1e-4);
        assert!((E * 14.0 * p - 17.0795).abs() < 1e-3);
    }

    #[test]
    fn regular_profile_rejects_small_degree() {
        let g = random_regular(40, 10, 2).unwrap();
        let c = Coloring::new(crate::exact::dsatur(&g).into_inner());
        let bad = bad_set(&g, &c, 2).unwrap().bad;
        assert!(matches!(
            dset_selection(&g, &c, &bad, DSetProfile::Regular, 0, 100),
            Err(PipelineError::Precondition(_))
        ));
    }

    #[test]
    fn empty_bad_set_gives_empty_dset() {
        let g = random_regular(60, 14, 3).unwrap();
        let c = crate::exact::dsatur(&g);
        let bad = bad_set(&g, &c, 2).unwrap().bad;
        if bad.is_empty() {
            let d = dset_selection(&g, &c, &bad, DSetProfile::Regular, 0, 100).unwrap();
            assert!(d.set.is_empty());
            assert_eq!(d.rounds, 0);
        }
    }

    #[test]
    fn petersen_uses_bounded_palette() {
        let g = generate(&Family::Petersen).unwrap();
        let out = dynamic_coloring_regular(&g, 5, &PipelineBudget::default()).unwrap();
        assert_eq!(out.record.route, Route::BoundedPalette);
        assert!(out.record.valid);
        assert!(out.record.colors_used <= 6);
    }

    #[test]
    fn general_small_cases() {
        let star = generate(&Family::CompleteBipartite { a: 1, b: 5 }).unwrap();
        let out = dynamic_coloring_general(&star, 1, &PipelineBudget::default()).unwrap();
        assert!(out.record.valid);
        assert_eq!(out.record.colors_used, 3);

        let c4 = generate(&Family::Cycle { n: 4 }).unwrap();
        let out = dynamic_coloring_general(&c4, 1, &PipelineBudget::default()).unwrap();
        assert_eq!(out.record.route, Route::Exact);
        assert_eq!(out.record.colors_used, 4);
    }
}
