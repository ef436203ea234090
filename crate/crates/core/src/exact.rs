//! Exact solvers for small graphs: chromatic number (DSATUR branch and bound),
//! r-dynamic chromatic number (ordered backtracking), constrained colorings,
//! and brute-force independence / domination numbers.
//!
//! Budgets count search nodes, so results are reproducible across machines.
//! Running out of budget is reported as [`Solve::Unknown`], never as a guess.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{
    bad_set, default_order, greedy_bounded_palette, is_proper, Coloring, PaletteParams,
};
use crate::graph::{Graph, VertexSet};

/// Search-node budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(5_000_000);
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveResult {
    pub value: usize,
    pub witness: Coloring,
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Solve {
    Exact(SolveResult),
    Unknown {
        lower: usize,
        upper: usize,
        witness: Option<Coloring>,
        nodes: u64,
    },
}

impl Solve {
    pub fn exact(&self) -> Option<usize> {
        match self {
            Solve::Exact(r) => Some(r.value),
            Solve::Unknown { .. } => None,
        }
    }

    pub fn bounds(&self) -> (usize, usize) {
        match self {
            Solve::Exact(r) => (r.value, r.value),
            Solve::Unknown { lower, upper, .. } => (*lower, *upper),
        }
    }

    /// Best coloring found: optimal for `Exact`, the upper-bound witness otherwise.
    pub fn witness(&self) -> Option<&Coloring> {
        match self {
            Solve::Exact(r) => Some(&r.witness),
            Solve::Unknown { witness, .. } => witness.as_ref(),
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            Solve::Exact(r) => r.nodes,
            Solve::Unknown { nodes, .. } => *nodes,
        }
    }

    pub fn certified(&self) -> Certified {
        match self {
            Solve::Exact(r) => Certified::Exact { value: r.value },
            Solve::Unknown { lower, upper, .. } => Certified::Unknown {
                lower: *lower,
                upper: *upper,
            },
        }
    }
}

/// A graph invariant that is either certified or bracketed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Certified {
    Exact { value: usize },
    Unknown { lower: usize, upper: usize },
}

impl Certified {
    pub fn value(&self) -> Option<usize> {
        match *self {
            Certified::Exact { value } => Some(value),
            Certified::Unknown { .. } => None,
        }
    }

    pub fn upper(&self) -> usize {
        match *self {
            Certified::Exact { value } => value,
            Certified::Unknown { upper, .. } => upper,
        }
    }

    pub fn lower(&self) -> usize {
        match *self {
            Certified::Exact { value } => value,
            Certified::Unknown { lower, .. } => lower,
        }
    }
}

/// Greedy clique: for each start vertex, extend by highest-degree compatible vertices.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut best = Vec::new();
    for start in g.vertices() {
        let mut clique = vec![start];
        let mut candidates: Vec<usize> = g.neighbors(start).to_vec();
        candidates.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        for v in candidates {
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// DSATUR greedy proper coloring.
pub fn dsatur(g: &Graph) -> Coloring {
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let mut neighbor_colors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == usize::MAX)
            .max_by_key(|&v| (neighbor_colors[v].len(), g.degree(v), std::cmp::Reverse(v)))
            .expect("uncolored vertex remains");
        let used = &neighbor_colors[v];
        let c = (0..).find(|c| used.binary_search(c).is_err()).expect("unbounded");
        colors[v] = c;
        for &u in g.neighbors(v) {
            if let Err(pos) = neighbor_colors[u].binary_search(&c) {
                neighbor_colors[u].insert(pos, c);
            }
        }
    }
    Coloring::new(colors)
}

struct Dsatur<'g> {
    g: &'g Graph,
    colors: Vec<usize>,
    /// counts[v * width + c]: neighbors of v holding color c.
    counts: Vec<u32>,
    saturation: Vec<usize>,
    width: usize,
    lower: usize,
    upper: usize,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Dsatur<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for &u in self.g.neighbors(v) {
            let slot = &mut self.counts[u * self.width + c];
            if *slot == 0 {
                self.saturation[u] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = usize::MAX;
        for &u in self.g.neighbors(v) {
            let slot = &mut self.counts[u * self.width + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn search(&mut self, colored: usize, used: usize) {
        if self.aborted || self.upper == self.lower {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if colored == self.g.n() {
            self.upper = used;
            self.best.clone_from(&self.colors);
            return;
        }
        let v = (0..self.g.n())
            .filter(|&v| self.colors[v] == usize::MAX)
            .max_by_key(|&v| (self.saturation[v], self.g.degree(v), std::cmp::Reverse(v)))
            .expect("uncolored vertex remains");
        // Every color index must stay below upper - 1 to improve on the incumbent.
        let limit = (used + 1).min(self.upper.saturating_sub(1));
        for c in 0..limit {
            if self.counts[v * self.width + c] == 0 {
                self.assign(v, c);
                self.search(colored + 1, used.max(c + 1));
                self.unassign(v, c);
                if self.aborted || self.upper == self.lower {
                    return;
                }
            }
        }
    }
}

/// Exact chromatic number by DSATUR branch and bound, seeded with a greedy
/// clique lower bound and a DSATUR upper bound.
pub fn chromatic_number(g: &Graph, budget: Budget) -> Solve {
    let start = Instant::now();
    let n = g.n();
    if n == 0 {
        return Solve::Exact(SolveResult {
            value: 0,
            witness: Coloring::new(Vec::new()),
            nodes: 0,
            elapsed: start.elapsed(),
        });
    }
    let lower = greedy_clique(g).len().max(1);
    let initial = dsatur(g);
    let upper = initial.num_colors();
    let mut solver = Dsatur {
        g,
        colors: vec![usize::MAX; n],
        counts: vec![0; n * upper],
        saturation: vec![0; n],
        width: upper,
        lower,
        upper,
        best: initial.into_inner(),
        nodes: 0,
        budget: budget.0,
        aborted: false,
    };
    if lower < upper {
        solver.search(0, 0);
    }
    let witness = Coloring::new(solver.best);
    if solver.aborted {
        Solve::Unknown {
            lower,
            upper: solver.upper,
            witness: Some(witness),
            nodes: solver.nodes,
        }
    } else {
        Solve::Exact(SolveResult {
            value: solver.upper,
            witness,
            nodes: solver.nodes,
            elapsed: start.elapsed(),
        })
    }
}

/// Vertices in BFS order, each component rooted at its maximum-degree vertex.
pub fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.n());
    let mut seen = vec![false; g.n()];
    for root in default_order(g) {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            i += 1;
            let mut next: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| !seen[u]).collect();
            next.sort_by_key(|&u| (std::cmp::Reverse(g.degree(u)), u));
            for u in next {
                seen[u] = true;
                order.push(u);
            }
        }
    }
    order
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SearchOutcome {
    Found,
    Exhausted,
    Aborted,
}

/// Fixed-k backtracking for r-dynamic colorings along a static vertex order.
struct DynamicSearch<'g> {
    g: &'g Graph,
    order: Vec<usize>,
    k: usize,
    r: usize,
    colors: Vec<usize>,
    counts: Vec<u32>,
    distinct: Vec<usize>,
    filled: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'g> DynamicSearch<'g> {
    fn new(g: &'g Graph, k: usize, r: usize, nodes: u64, budget: u64) -> Self {
        let n = g.n();
        DynamicSearch {
            g,
            order: bfs_order(g),
            k,
            r,
            colors: vec![usize::MAX; n],
            counts: vec![0; n * k],
            distinct: vec![0; n],
            filled: vec![0; n],
            nodes,
            budget,
        }
    }

    /// Assigns and reports whether every neighbor can still reach its requirement.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.colors[v] = c;
        let mut ok = true;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * self.k + c];
            if *slot == 0 {
                self.distinct[w] += 1;
            }
            *slot += 1;
            self.filled[w] += 1;
            let deg = self.g.degree(w);
            if self.distinct[w] + (deg - self.filled[w]) < self.r.min(deg) {
                ok = false;
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = usize::MAX;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.distinct[w] -= 1;
            }
            self.filled[w] -= 1;
        }
    }

    fn search(&mut self, depth: usize, used: usize) -> SearchOutcome {
        if depth == self.order.len() {
            return SearchOutcome::Found;
        }
        let v = self.order[depth];
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            self.nodes += 1;
            if self.nodes > self.budget {
                return SearchOutcome::Aborted;
            }
            if self.g.neighbors(v).iter().any(|&u| self.colors[u] == c) {
                continue;
            }
            if self.assign(v, c) {
                match self.search(depth + 1, used.max(c + 1)) {
                    SearchOutcome::Exhausted => {}
                    other => return other,
                }
            }
            self.unassign(v, c);
        }
        SearchOutcome::Exhausted
    }

    fn run(&mut self) -> SearchOutcome {
        self.search(0, 0)
    }
}

/// Lower bound `max_v min(r, deg v) + 1` (1 for edgeless graphs).
pub fn dynamic_degree_bound(g: &Graph, r: usize) -> usize {
    g.vertices()
        .map(|v| r.min(g.degree(v)) + 1)
        .max()
        .unwrap_or(0)
}

/// Exact r-dynamic chromatic number: tries k upward from
/// `max(chi, max_v min(r, deg v) + 1)`.
pub fn r_dynamic_number(g: &Graph, r: usize, budget: Budget) -> Solve {
    let start = Instant::now();
    let n = g.n();
    assert!(r >= 1, "r must be positive");
    if n == 0 {
        return chromatic_number(g, budget);
    }
    let chi = chromatic_number(g, budget);
    let mut nodes = chi.nodes();
    let mut k = chi.bounds().0.max(dynamic_degree_bound(g, r));
    if r == 1 {
        if let Solve::Exact(res) = chi {
            return Solve::Exact(SolveResult {
                elapsed: start.elapsed(),
                ..res
            });
        }
    }
    while k <= n {
        let mut search = DynamicSearch::new(g, k, r, nodes, budget.0);
        let outcome = search.run();
        nodes = search.nodes;
        match outcome {
            SearchOutcome::Found => {
                return Solve::Exact(SolveResult {
                    value: k,
                    witness: Coloring::new(search.colors),
                    nodes,
                    elapsed: start.elapsed(),
                })
            }
            SearchOutcome::Exhausted => k += 1,
            SearchOutcome::Aborted => {
                let (upper, witness) = heuristic_dynamic_upper(g, r, k);
                return Solve::Unknown {
                    lower: k,
                    upper,
                    witness: Some(witness),
                    nodes,
                };
            }
        }
    }
    unreachable!("n distinct colors always form an r-dynamic coloring")
}

/// Smallest palette above `from` on which greedy-with-repair succeeds, trying a
/// handful of sizes before settling for all-distinct colors.
fn heuristic_dynamic_upper(g: &Graph, r: usize, from: usize) -> (usize, Coloring) {
    let order = default_order(g);
    for palette in (from..g.n()).take(8) {
        let params = PaletteParams {
            palette_size: palette,
            r,
            repair_budget: 2_000,
            seed: palette as u64,
        };
        if let Ok(c) = greedy_bounded_palette(g, &order, params) {
            return (c.num_colors(), c);
        }
    }
    (g.n(), Coloring::new(g.vertices().collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ColoringMode {
    Proper,
    RDynamic { r: usize },
    /// Proper coloring whose r = 2 bad set is independent in G.
    IndependentBadSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Found {
    Found { coloring: Coloring },
    NoneExists,
    Unknown,
}

impl Found {
    pub fn coloring(self) -> Option<Coloring> {
        match self {
            Found::Found { coloring } => Some(coloring),
            _ => None,
        }
    }
}

/// Exhaustive fallback for the independent-bad-set search applies up to this order.
pub const EXHAUSTIVE_BAD_SET_MAX_N: usize = 12;

pub fn find_coloring(g: &Graph, k: usize, mode: ColoringMode, budget: Budget, seed: u64) -> Found {
    assert!(k >= 1, "k must be positive");
    match mode {
        ColoringMode::Proper => fixed_k_search(g, k, 1, budget),
        ColoringMode::RDynamic { r } => fixed_k_search(g, k, r, budget),
        ColoringMode::IndependentBadSet => independent_bad_set(g, k, budget, seed),
    }
}

fn fixed_k_search(g: &Graph, k: usize, r: usize, budget: Budget) -> Found {
    if g.n() == 0 {
        return Found::Found {
            coloring: Coloring::new(Vec::new()),
        };
    }
    let mut search = DynamicSearch::new(g, k, r, 0, budget.0);
    match search.run() {
        SearchOutcome::Found => Found::Found {
            coloring: Coloring::new(search.colors),
        },
        SearchOutcome::Exhausted => Found::NoneExists,
        SearchOutcome::Aborted => Found::Unknown,
    }
}

fn bad_edges(g: &Graph, c: &Coloring) -> Vec<(usize, usize)> {
    let bad = bad_set(g, c, 2).expect("total coloring").bad;
    let mask = bad.mask(g.n());
    g.edges().filter(|&(u, v)| mask[u] && mask[v]).collect()
}

/// Local recoloring: while two adjacent vertices are both bad, recolor one of
/// them (which gives the other a second neighborhood color). Exhaustive
/// enumeration over canonical proper colorings backs it up on small graphs.
fn independent_bad_set(g: &Graph, k: usize, budget: Budget, seed: u64) -> Found {
    let start = {
        let greedy = dsatur(g);
        if greedy.num_colors() <= k {
            Some(greedy)
        } else {
            fixed_k_search(g, k, 1, budget).coloring()
        }
    };
    if let Some(mut c) = start {
        let mut colors = c.clone().into_inner();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let steps = budget.0.min(100_000);
        for _ in 0..steps {
            let edges = bad_edges(g, &c);
            if edges.is_empty() {
                return Found::Found { coloring: c };
            }
            let (u, v) = edges[rng.gen_range(0..edges.len())];
            let first = if rng.gen_bool(0.5) { u } else { v };
            let mut moved = false;
            for x in [first, u + v - first] {
                let options: Vec<usize> = (0..k)
                    .filter(|&col| col != colors[x] && g.neighbors(x).iter().all(|&y| colors[y] != col))
                    .collect();
                if options.is_empty() {
                    continue;
                }
                let scored: Vec<(usize, usize)> = options
                    .iter()
                    .map(|&col| {
                        let mut trial = colors.clone();
                        trial[x] = col;
                        (bad_edges(g, &Coloring::new(trial)).len(), col)
                    })
                    .collect();
                let min = scored.iter().map(|s| s.0).min().expect("non-empty");
                let ties: Vec<usize> = scored.iter().filter(|s| s.0 == min).map(|s| s.1).collect();
                colors[x] = if rng.gen_bool(0.1) {
                    options[rng.gen_range(0..options.len())]
                } else {
                    ties[rng.gen_range(0..ties.len())]
                };
                moved = true;
                break;
            }
            c = Coloring::new(colors.clone());
            if !moved {
                break;
            }
        }
    }
    if g.n() <= EXHAUSTIVE_BAD_SET_MAX_N {
        exhaustive_independent_bad_set(g, k)
    } else {
        Found::Unknown
    }
}

fn exhaustive_independent_bad_set(g: &Graph, k: usize) -> Found {
    fn rec(g: &Graph, k: usize, v: usize, used: usize, colors: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return bad_edges(g, &Coloring::new(colors.clone())).is_empty();
        }
        for c in 0..(used + 1).min(k) {
            if g.neighbors(v).iter().any(|&u| u < v && colors[u] == c) {
                continue;
            }
            colors[v] = c;
            if rec(g, k, v + 1, used.max(c + 1), colors) {
                return true;
            }
        }
        colors[v] = usize::MAX;
        false
    }
    let mut colors = vec![usize::MAX; g.n()];
    if rec(g, k, 0, 0, &mut colors) {
        let coloring = Coloring::new(colors);
        debug_assert!(is_proper(g, &coloring).unwrap());
        Found::Found { coloring }
    } else {
        Found::NoneExists
    }
}

/// Largest order handled by the bitset-based invariant solvers.
pub const INVARIANT_MAX_N: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub alpha: Certified,
    pub gamma: Certified,
}

/// Independence number α(G) and domination number γ(G).
pub fn invariant_numbers(g: &Graph, budget: Budget) -> Invariants {
    let n = g.n();
    if n > INVARIANT_MAX_N {
        let greedy_is = greedy_independent(g);
        return Invariants {
            alpha: Certified::Unknown {
                lower: greedy_is,
                upper: n,
            },
            gamma: Certified::Unknown { lower: 1, upper: n },
        };
    }
    let masks: Vec<u128> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u128, |m, &u| m | 1 << u))
        .collect();
    Invariants {
        alpha: max_independent(&masks, n, budget),
        gamma: min_dominating(&masks, n, g.max_degree(), budget),
    }
}

fn greedy_independent(g: &Graph) -> usize {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut blocked = vec![false; g.n()];
    let mut size = 0;
    for v in order {
        if !blocked[v] {
            size += 1;
            blocked[v] = true;
            for &u in g.neighbors(v) {
                blocked[u] = true;
            }
        }
    }
    size
}

fn full_mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn max_independent(masks: &[u128], n: usize, budget: Budget) -> Certified {
    struct State<'a> {
        masks: &'a [u128],
        best: usize,
        nodes: u64,
        budget: u64,
        aborted: bool,
    }
    fn rec(s: &mut State, remaining: u128, size: usize) {
        s.nodes += 1;
        if s.nodes > s.budget {
            s.aborted = true;
            return;
        }
        if remaining == 0 {
            s.best = s.best.max(size);
            return;
        }
        if size + remaining.count_ones() as usize <= s.best {
            return;
        }
        // Vertices of remaining-degree <= 1 can always be taken.
        let mut pick = None;
        let mut max_deg = 0;
        let mut bits = remaining;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let deg = (s.masks[v] & remaining).count_ones();
            if deg <= 1 {
                rec(s, remaining & !(s.masks[v] | 1 << v), size + 1);
                return;
            }
            if pick.is_none() || deg > max_deg {
                pick = Some(v);
                max_deg = deg;
            }
        }
        let v = pick.expect("non-empty");
        rec(s, remaining & !(s.masks[v] | 1 << v), size + 1);
        if s.aborted {
            return;
        }
        rec(s, remaining & !(1 << v), size);
    }
    let mut s = State {
        masks,
        best: 0,
        nodes: 0,
        budget: budget.0,
        aborted: false,
    };
    rec(&mut s, full_mask(n), 0);
    if s.aborted {
        Certified::Unknown {
            lower: s.best,
            upper: n,
        }
    } else {
        Certified::Exact { value: s.best }
    }
}

fn min_dominating(masks: &[u128], n: usize, max_degree: usize, budget: Budget) -> Certified {
    struct State<'a> {
        closed: Vec<u128>,
        best: usize,
        cap: usize,
        nodes: u64,
        budget: u64,
        aborted: bool,
        _m: std::marker::PhantomData<&'a ()>,
    }
    fn rec(s: &mut State, undominated: u128, size: usize) {
        s.nodes += 1;
        if s.nodes > s.budget {
            s.aborted = true;
            return;
        }
        if undominated == 0 {
            s.best = s.best.min(size);
            return;
        }
        let need = (undominated.count_ones() as usize).div_ceil(s.cap);
        if size + need >= s.best {
            return;
        }
        // Branch on the undominated vertex with the fewest dominators.
        let mut target = 0;
        let mut fewest = u32::MAX;
        let mut bits = undominated;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let c = s.closed[v].count_ones();
            if c < fewest {
                fewest = c;
                target = v;
            }
        }
        let mut options: Vec<usize> = Vec::new();
        let mut bits = s.closed[target];
        while bits != 0 {
            options.push(bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
        options.sort_by_key(|&u| std::cmp::Reverse((s.closed[u] & undominated).count_ones()));
        for u in options {
            rec(s, undominated & !s.closed[u], size + 1);
            if s.aborted {
                return;
            }
        }
    }
    if n == 0 {
        return Certified::Exact { value: 0 };
    }
    let closed: Vec<u128> = masks.iter().enumerate().map(|(v, &m)| m | 1 << v).collect();
    let mut s = State {
        closed,
        best: n,
        cap: max_degree + 1,
        nodes: 0,
        budget: budget.0,
        aborted: false,
        _m: std::marker::PhantomData,
    };
    rec(&mut s, full_mask(n), 0);
    let lower = n.div_ceil(max_degree + 1);
    if s.aborted {
        Certified::Unknown {
            lower,
            upper: s.best,
        }
    } else {
        Certified::Exact { value: s.best }
    }
}

/// All vertices of `set` are pairwise non-adjacent in `g`.
pub fn is_independent_set(g: &Graph, set: &VertexSet) -> bool {
    g.is_independent(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_r_dynamic;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn k33() -> Graph {
        let edges: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        Graph::from_edges(6, &edges).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&cycle(5), Budget::DEFAULT).exact(), Some(3));
        assert_eq!(chromatic_number(&petersen(), Budget::DEFAULT).exact(), Some(3));
        assert_eq!(chromatic_number(&k33(), Budget::DEFAULT).exact(), Some(2));
        assert_eq!(chromatic_number(&Graph::empty(3), Budget::DEFAULT).exact(), Some(1));
        let solved = chromatic_number(&complete(5), Budget::DEFAULT);
        assert!(is_proper(&complete(5), solved.witness().unwrap()).unwrap());
    }

    #[test]
    fn tiny_budget_is_unknown() {
        // Mycielski-like hard instances are not needed: a zero budget aborts immediately.
        match chromatic_number(&cycle(7), Budget(0)) {
            Solve::Unknown { lower, upper, .. } => assert!(lower <= 3 && 3 <= upper),
            Solve::Exact(r) => assert_eq!(r.value, 3),
        }
    }

    #[test]
    fn dynamic_numbers() {
        assert_eq!(r_dynamic_number(&cycle(5), 2, Budget::DEFAULT).exact(), Some(5));
        assert_eq!(r_dynamic_number(&cycle(6), 2, Budget::DEFAULT).exact(), Some(3));
        assert_eq!(r_dynamic_number(&cycle(4), 2, Budget::DEFAULT).exact(), Some(4));
        for n in 1..7 {
            for r in 1..4 {
                let solved = r_dynamic_number(&complete(n), r, Budget::DEFAULT);
                assert_eq!(solved.exact(), Some(n));
                assert!(is_r_dynamic(&complete(n), solved.witness().unwrap(), r).unwrap());
            }
        }
    }

    #[test]
    fn independent_bad_set_mode() {
        let k4 = complete(4);
        let c = find_coloring(&k4, 4, ColoringMode::IndependentBadSet, Budget::DEFAULT, 1)
            .coloring()
            .unwrap();
        assert!(bad_set(&k4, &c, 2).unwrap().bad.is_empty());
        assert_eq!(
            find_coloring(&cycle(4), 2, ColoringMode::IndependentBadSet, Budget::DEFAULT, 1),
            Found::NoneExists
        );
        let p = petersen();
        if let Found::Found { coloring } =
            find_coloring(&p, 3, ColoringMode::IndependentBadSet, Budget::DEFAULT, 3)
        {
            assert!(is_proper(&p, &coloring).unwrap());
            assert!(p.is_independent(&bad_set(&p, &coloring, 2).unwrap().bad));
        }
    }

    #[test]
    fn fixed_k_modes() {
        assert_eq!(find_coloring(&cycle(5), 2, ColoringMode::Proper, Budget::DEFAULT, 0), Found::NoneExists);
        assert!(find_coloring(&cycle(5), 3, ColoringMode::Proper, Budget::DEFAULT, 0).coloring().is_some());
        assert_eq!(
            find_coloring(&cycle(5), 4, ColoringMode::RDynamic { r: 2 }, Budget::DEFAULT, 0),
            Found::NoneExists
        );
    }

    #[test]
    fn independence_and_domination() {
        let inv = invariant_numbers(&cycle(5), Budget::DEFAULT);
        assert_eq!((inv.alpha.value(), inv.gamma.value()), (Some(2), Some(2)));
        assert_eq!(invariant_numbers(&petersen(), Budget::DEFAULT).alpha.value(), Some(4));
        for n in 1..6 {
            let inv = invariant_numbers(&complete(n), Budget::DEFAULT);
            assert_eq!((inv.alpha.value(), inv.gamma.value()), (Some(1), Some(1)));
        }
    }
}
