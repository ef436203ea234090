//! Dynamic colorings with `k + 2l` colors, where `l` is the chromatic number
//! of `G²[B] ∖ E(G)` for the bad set `B` of a proper k-coloring.
//!
//! Each color class `B_i` of `G²[B] ∖ E(G)` has pairwise disjoint
//! neighborhoods. For every class we pick a set `T_i ⊆ N(B_i)` meeting every
//! `N(v)`, `v ∈ B_i`, such that the auxiliary graph `H_i` induces a forest on
//! it, and 2-color that forest on a private pair of colors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{bad_set, is_proper, is_r_dynamic, Coloring};
use crate::error::PipelineError;
use crate::exact::{chromatic_number, dsatur, r_dynamic_number, Budget, Solve};
use crate::graph::{Graph, VertexSet};
use crate::pipeline::PipelineBudget;

/// Exhaustive transversal search is used when the number of transversals is at most this.
pub const EXHAUSTIVE_TRANSVERSALS: u64 = 1_000_000;
/// Full re-runs of the per-class search when the assembled coloring is rejected.
pub const MAX_ASSEMBLY_ATTEMPTS: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadClassDecomposition {
    pub bad: VertexSet,
    pub l: usize,
    pub classes: Vec<VertexSet>,
    /// True when `l` is the certified chromatic number of `G²[B] ∖ E(G)`.
    pub l_exact: bool,
}

/// The graph `G²[B] ∖ E(G)` on the members of `bad` (ids by position).
pub fn bad_square_graph(g: &Graph, bad: &VertexSet) -> Result<Graph, PipelineError> {
    let (sq, map) = g.square().induced_subgraph(bad)?;
    let g_edges: Vec<(usize, usize)> = sq
        .edges()
        .filter(|&(a, b)| g.has_edge(map[a], map[b]))
        .collect();
    Ok(sq.remove_edges(g_edges).0)
}

pub fn bad_class_partition(
    g: &Graph,
    c: &Coloring,
    budget: Budget,
) -> Result<BadClassDecomposition, PipelineError> {
    if !is_proper(g, c)? {
        return Err(PipelineError::Precondition("base coloring is not proper".into()));
    }
    let bad = bad_set(g, c, 2)?.bad;
    if bad.is_empty() {
        return Ok(BadClassDecomposition {
            bad,
            l: 0,
            classes: Vec::new(),
            l_exact: true,
        });
    }
    let aux = bad_square_graph(g, &bad)?;
    let (coloring, l_exact) = match chromatic_number(&aux, budget) {
        Solve::Exact(res) => (res.witness, true),
        Solve::Unknown { witness, .. } => (witness.unwrap_or_else(|| dsatur(&aux)), false),
    };
    let coloring = coloring.normalized();
    let l = coloring.num_colors();
    let mut members = vec![Vec::new(); l];
    for (i, v) in bad.iter().enumerate() {
        members[coloring.color(i)].push(v);
    }
    let classes: Vec<VertexSet> = members.into_iter().map(VertexSet::from_iter).collect();
    let dec = BadClassDecomposition {
        bad,
        l,
        classes,
        l_exact,
    };
    check_decomposition(g, &dec)?;
    Ok(dec)
}

/// Classes partition `B`, and members of a class have disjoint neighborhoods.
pub fn check_decomposition(g: &Graph, dec: &BadClassDecomposition) -> Result<(), PipelineError> {
    let mut owner = vec![usize::MAX; g.n()];
    let mut total = 0;
    for (i, class) in dec.classes.iter().enumerate() {
        total += class.len();
        let mut touched = vec![usize::MAX; g.n()];
        for v in class.iter() {
            if !dec.bad.contains(v) || owner[v] != usize::MAX {
                return Err(PipelineError::Structural(format!("vertex {v} misplaced in class {i}")));
            }
            owner[v] = i;
            for &u in g.neighbors(v) {
                if touched[u] != usize::MAX {
                    return Err(PipelineError::Structural(format!(
                        "class {i}: {v} and {} share neighbor {u}",
                        touched[u]
                    )));
                }
                touched[u] = v;
            }
        }
    }
    if total != dec.bad.len() || dec.classes.len() != dec.l {
        return Err(PipelineError::Structural("classes do not partition the bad set".into()));
    }
    Ok(())
}

/// A potentially-bad vertex of the class and, under condition (a), the two
/// neighbors joined in `H_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentiallyBad {
    pub vertex: usize,
    pub pair: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGadget {
    pub i: usize,
    pub class: VertexSet,
    /// `N_G(B_i)`, the vertex set of `H_i`.
    pub support: VertexSet,
    /// Tractable vertices `S_i = B_i ∩ N_G(B_i)`.
    pub tractable: VertexSet,
    pub potentially_bad: Vec<PotentiallyBad>,
    /// `G` plus the added pair edges; only vertices of `support` matter.
    pub h: Graph,
    pub h_max_degree: usize,
    /// Whether `H_i` has maximum degree at most d.
    pub h_degree_ok: bool,
}

pub fn build_class_gadget(
    g: &Graph,
    dec: &BadClassDecomposition,
    i: usize,
) -> Result<ClassGadget, PipelineError> {
    let d = g
        .degree_stats()?
        .degree
        .ok_or_else(|| PipelineError::Precondition("gadgets need a regular graph".into()))?;
    if d < 3 {
        return Err(PipelineError::Precondition(format!("gadgets need d >= 3, got {d}")));
    }
    let class = dec
        .classes
        .get(i)
        .ok_or_else(|| PipelineError::Precondition(format!("no class {i} among {}", dec.l)))?
        .clone();
    let support = g.neighborhood_of_set(&class);
    let in_support = support.mask(g.n());
    let tractable: VertexSet = class.iter().filter(|&v| in_support[v]).collect();
    let is_tractable = tractable.mask(g.n());

    for u in support.iter() {
        let adjacent: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| is_tractable[w]).collect();
        if adjacent.len() > 1 {
            return Err(PipelineError::Structural(format!(
                "class {i}: vertex {u} is adjacent to tractable vertices {adjacent:?}"
            )));
        }
    }
    for w in tractable.iter() {
        let count = g.neighbors(w).iter().filter(|&&x| is_tractable[x]).count();
        if count != 1 {
            return Err(PipelineError::Structural(format!(
                "class {i}: tractable vertex {w} is adjacent to {count} tractable vertices"
            )));
        }
    }

    let inner_degree: Vec<usize> = g
        .vertices()
        .map(|x| g.neighbors(x).iter().filter(|&&y| in_support[y]).count())
        .collect();
    let mut potentially_bad = Vec::new();
    let mut added = Vec::new();
    for u in g.vertices() {
        if dec.bad.contains(u) {
            continue;
        }
        let nu = g.neighborhood(u);
        if nu.is_empty() || !nu.iter().all(|x| in_support[x]) || !g.is_independent(&nu) {
            continue;
        }
        let light: Vec<usize> = nu.iter().filter(|&x| inner_degree[x] < d).take(2).collect();
        let pair = (light.len() == 2).then(|| (light[0], light[1]));
        if let Some(p) = pair {
            added.push(p);
        }
        potentially_bad.push(PotentiallyBad { vertex: u, pair });
    }
    let h = g.with_edges(added);
    for w in tractable.iter() {
        if h.neighbors(w).iter().filter(|&&x| is_tractable[x]).count() != 1 {
            return Err(PipelineError::Structural(format!(
                "class {i}: H_i on tractable vertices is not a matching at {w}"
            )));
        }
    }
    let h_max_degree = support
        .iter()
        .map(|x| h.neighbors(x).iter().filter(|&&y| in_support[y]).count())
        .max()
        .unwrap_or(0);
    Ok(ClassGadget {
        i,
        class,
        support,
        tractable,
        potentially_bad,
        h,
        h_max_degree,
        h_degree_ok: h_max_degree <= d,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    /// Fixed vertices plus one representative per part.
    pub set: VertexSet,
    pub swaps: u64,
    /// Every part has at least as many vertices as the max degree of the
    /// graph induced on the parts.
    pub hypothesis_ok: bool,
    pub exhaustive: bool,
}

/// One vertex from each part such that the transversal induces a forest in `h`.
pub fn transversal_forest(
    h: &Graph,
    parts: &[VertexSet],
    budget: Budget,
    seed: u64,
) -> Result<Transversal, PipelineError> {
    transversal_forest_with_fixed(h, &VertexSet::new(), parts, budget, seed)
}

/// As [`transversal_forest`], with `fixed` always included.
pub fn transversal_forest_with_fixed(
    h: &Graph,
    fixed: &VertexSet,
    parts: &[VertexSet],
    budget: Budget,
    seed: u64,
) -> Result<Transversal, PipelineError> {
    let n = h.n();
    let mut part_of = vec![usize::MAX; n];
    for (j, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(PipelineError::Precondition(format!("part {j} is empty")));
        }
        for v in part.iter() {
            if v >= n {
                return Err(PipelineError::Precondition(format!("part {j} names vertex {v} >= {n}")));
            }
            if part_of[v] != usize::MAX || fixed.contains(v) {
                return Err(PipelineError::Precondition(format!("vertex {v} is in two parts")));
            }
            part_of[v] = j;
        }
    }
    let covered: VertexSet = parts.iter().flat_map(|p| p.iter()).collect();
    let covered_mask = covered.mask(n);
    let max_degree = covered
        .iter()
        .map(|v| h.neighbors(v).iter().filter(|&&u| covered_mask[u]).count())
        .max()
        .unwrap_or(0);
    let hypothesis_ok = parts.iter().all(|p| p.len() >= max_degree);
    if fixed.iter().any(|v| v >= n) {
        return Err(PipelineError::Precondition("fixed vertex out of range".into()));
    }
    if let Some(cycle) = h.find_cycle_in(fixed) {
        return Err(PipelineError::Structural(format!("fixed vertices contain the cycle {cycle:?}")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reps: Vec<usize> = parts
        .iter()
        .map(|p| p.as_slice()[rng.gen_range(0..p.len())])
        .collect();
    let mut swaps = 0;
    let current = |reps: &[usize]| -> VertexSet { fixed.iter().chain(reps.iter().copied()).collect() };
    while swaps < budget.0 {
        let set = current(&reps);
        let Some(cycle) = h.find_cycle_in(&set) else {
            return Ok(Transversal {
                set,
                swaps,
                hypothesis_ok,
                exhaustive: false,
            });
        };
        let movable: Vec<usize> = cycle
            .iter()
            .copied()
            .filter(|&v| part_of[v] != usize::MAX && parts[part_of[v]].len() > 1)
            .collect();
        if movable.is_empty() {
            break;
        }
        let v = movable[rng.gen_range(0..movable.len())];
        let part = parts[part_of[v]].as_slice();
        let mut w = part[rng.gen_range(0..part.len() - 1)];
        if w == v {
            w = part[part.len() - 1];
        }
        reps[part_of[v]] = w;
        swaps += 1;
    }

    let product = parts
        .iter()
        .try_fold(1u64, |acc, p| acc.checked_mul(p.len() as u64).filter(|&x| x <= EXHAUSTIVE_TRANSVERSALS));
    if product.is_some() {
        if let Some(set) = exhaustive_transversal(h, fixed, parts) {
            return Ok(Transversal {
                set,
                swaps,
                hypothesis_ok,
                exhaustive: true,
            });
        }
        return Err(PipelineError::Stage {
            stage: "transversal".into(),
            reason: "no transversal induces a forest".into(),
        });
    }
    Err(PipelineError::Stage {
        stage: "transversal".into(),
        reason: format!("local search exhausted {swaps} swaps"),
    })
}

/// Union-find with rollback, used by the exhaustive search.
struct Forest {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl Forest {
    fn new(n: usize) -> Self {
        Forest {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Joins the components of `a` and `b`; false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(Some((ra, rb)));
        true
    }

    fn mark(&mut self) {
        self.history.push(None);
    }

    fn rollback(&mut self) {
        while let Some(Some((ra, rb))) = self.history.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
        }
    }
}

fn exhaustive_transversal(h: &Graph, fixed: &VertexSet, parts: &[VertexSet]) -> Option<VertexSet> {
    let n = h.n();
    let mut chosen = fixed.mask(n);
    let mut forest = Forest::new(n);
    for v in fixed.iter() {
        for &u in h.neighbors(v) {
            if u < v && chosen[u] {
                forest.union(u, v);
            }
        }
    }
    let mut picks = Vec::with_capacity(parts.len());
    fn go(
        h: &Graph,
        parts: &[VertexSet],
        j: usize,
        chosen: &mut [bool],
        forest: &mut Forest,
        picks: &mut Vec<usize>,
    ) -> bool {
        if j == parts.len() {
            return true;
        }
        for v in parts[j].iter() {
            forest.mark();
            let ok = h
                .neighbors(v)
                .iter()
                .filter(|&&u| chosen[u])
                .all(|&u| forest.union(u, v));
            if ok {
                chosen[v] = true;
                picks.push(v);
                if go(h, parts, j + 1, chosen, forest, picks) {
                    return true;
                }
                picks.pop();
                chosen[v] = false;
            }
            forest.rollback();
        }
        false
    }
    go(h, parts, 0, &mut chosen, &mut forest, &mut picks)
        .then(|| fixed.iter().chain(picks.iter().copied()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub class_size: usize,
    /// `|S_i|`.
    pub s: usize,
    /// `|T_i|`.
    pub t: usize,
    pub forest_ok: bool,
    pub swaps: u64,
    pub hypothesis_ok: bool,
    pub exhaustive: bool,
    pub h_degree_ok: bool,
    pub fix_pairs: usize,
    /// Potentially-bad vertices without a fixed pair.
    pub unpaired: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareBoundRecord {
    pub k: usize,
    pub l: usize,
    pub l_exact: bool,
    pub classes: usize,
    pub per_class: Vec<ClassRecord>,
    pub colors_used: usize,
    pub valid: bool,
    pub attempts: u32,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SquareBoundRecord {
    pub fn within_bound(&self) -> bool {
        self.colors_used <= self.k + 2 * self.l
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareBoundOutput {
    pub coloring: Coloring,
    pub record: SquareBoundRecord,
    pub gadgets: Vec<ClassGadget>,
    /// `T_i` per class.
    pub transversals: Vec<VertexSet>,
}

/// `T_i = S_i ∪ S'_i` with its checks: a forest in `H_i`, exactly one vertex
/// in `N(v)` for non-tractable `v`, at least one for tractable `v`.
pub fn check_class_transversal(g: &Graph, gadget: &ClassGadget, t: &VertexSet) -> Result<(), PipelineError> {
    if !gadget.h.induces_forest(t) {
        return Err(PipelineError::Structural(format!("class {}: H_i[T_i] has a cycle", gadget.i)));
    }
    for v in gadget.class.iter() {
        let hits = g.neighbors(v).iter().filter(|&&u| t.contains(u)).count();
        let ok = if gadget.tractable.contains(v) { hits >= 1 } else { hits == 1 };
        if !ok {
            return Err(PipelineError::Structural(format!(
                "class {}: T_i meets N({v}) in {hits} vertices",
                gadget.i
            )));
        }
    }
    Ok(())
}

fn solve_class(
    g: &Graph,
    gadget: &ClassGadget,
    budget: Budget,
    seed: u64,
) -> Result<(VertexSet, Transversal), PipelineError> {
    let blocked = g.neighborhood_of_set(&gadget.tractable);
    let parts: Vec<VertexSet> = gadget
        .class
        .iter()
        .filter(|&v| !gadget.tractable.contains(v))
        .map(|v| g.neighborhood(v).difference(&blocked))
        .collect();
    let found = transversal_forest_with_fixed(&gadget.h, &gadget.tractable, &parts, budget, seed)?;
    check_class_transversal(g, gadget, &found.set)?;
    Ok((found.set.clone(), found))
}

/// Recolors `c` into a dynamic coloring with at most `k + 2l` colors.
pub fn square_bound_coloring(
    g: &Graph,
    c: &Coloring,
    seed: u64,
    budget: &PipelineBudget,
) -> Result<SquareBoundOutput, PipelineError> {
    let d = g
        .degree_stats()?
        .degree
        .ok_or_else(|| PipelineError::Precondition("square bound needs a regular graph".into()))?;
    let dec = bad_class_partition(g, c, budget.exact)?;
    let k = c.num_colors();
    let mut record = SquareBoundRecord {
        k,
        l: dec.l,
        l_exact: dec.l_exact,
        classes: dec.classes.len(),
        per_class: Vec::new(),
        colors_used: k,
        valid: true,
        attempts: 0,
        seed,
        notes: Vec::new(),
    };
    if dec.bad.is_empty() {
        return Ok(SquareBoundOutput {
            coloring: c.clone(),
            record,
            gadgets: Vec::new(),
            transversals: Vec::new(),
        });
    }
    if d <= 2 {
        let coloring = exact_dynamic(g, budget)?;
        record.colors_used = coloring.num_colors();
        record.valid = is_r_dynamic(g, &coloring, 2)?;
        record.notes.push("d <= 2: exact solver per component".into());
        return Ok(SquareBoundOutput {
            coloring,
            record,
            gadgets: Vec::new(),
            transversals: Vec::new(),
        });
    }
    let gadgets: Vec<ClassGadget> = (0..dec.l)
        .map(|i| build_class_gadget(g, &dec, i))
        .collect::<Result<_, _>>()?;
    let offset = c.max_color().map_or(0, |x| x + 1);
    let swap_budget = Budget(budget.max_rounds);

    let mut last_failure = String::new();
    for attempt in 0..MAX_ASSEMBLY_ATTEMPTS {
        let attempt_seed = seed ^ ((attempt as u64) << 32);
        let solved: Vec<(VertexSet, Transversal)> = gadgets
            .par_iter()
            .map(|gadget| solve_class(g, gadget, swap_budget, attempt_seed ^ gadget.i as u64))
            .collect::<Result<_, _>>()?;

        let mut colors = c.clone().into_inner();
        let mut assigned = vec![false; g.n()];
        for (i, (t, _)) in solved.iter().enumerate() {
            let sides = gadgets[i]
                .h
                .two_color(t)
                .ok_or_else(|| PipelineError::Structural(format!("class {i}: forest is not bipartite")))?;
            for (v, side) in t.iter().zip(sides) {
                if !assigned[v] {
                    assigned[v] = true;
                    colors[v] = offset + 2 * i + side as usize;
                }
            }
        }
        let coloring = Coloring::new(colors);
        record.attempts = attempt + 1;
        if is_r_dynamic(g, &coloring, 2)? {
            record.per_class = gadgets
                .iter()
                .zip(&solved)
                .map(|(gadget, (t, found))| ClassRecord {
                    class_size: gadget.class.len(),
                    s: gadget.tractable.len(),
                    t: t.len(),
                    forest_ok: gadget.h.induces_forest(t),
                    swaps: found.swaps,
                    hypothesis_ok: found.hypothesis_ok,
                    exhaustive: found.exhaustive,
                    h_degree_ok: gadget.h_degree_ok,
                    fix_pairs: gadget.potentially_bad.iter().filter(|p| p.pair.is_some()).count(),
                    unpaired: gadget.potentially_bad.iter().filter(|p| p.pair.is_none()).count(),
                })
                .collect();
            record.colors_used = coloring.num_colors();
            record.valid = true;
            return Ok(SquareBoundOutput {
                coloring,
                record,
                gadgets,
                transversals: solved.into_iter().map(|(t, _)| t).collect(),
            });
        }
        let offenders = bad_set(g, &coloring, 2)?.bad;
        last_failure = format!("bad after assembly: {:?}", offenders.as_slice());
    }
    Err(PipelineError::Stage {
        stage: "assembly".into(),
        reason: format!("{MAX_ASSEMBLY_ATTEMPTS} attempts rejected; {last_failure}"),
    })
}

fn exact_dynamic(g: &Graph, budget: &PipelineBudget) -> Result<Coloring, PipelineError> {
    let mut colors = vec![0; g.n()];
    for comp in g.components() {
        let (sub, map) = g.induced_subgraph(&comp)?;
        let witness = r_dynamic_number(&sub, 2, budget.exact)
            .witness()
            .cloned()
            .ok_or_else(|| PipelineError::Stage {
                stage: "exact".into(),
                reason: "no witness within budget".into(),
            })?;
        for (i, &v) in map.iter().enumerate() {
            colors[v] = witness.color(i);
        }
    }
    Ok(Coloring::new(colors))
}
