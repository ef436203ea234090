//! Vertex colorings, the r-dynamic checker, and bounded-palette greedy coloring.
//!
//! The checker here is the reference every construction in the crate is
//! judged against: a coloring is r-dynamic when it is proper and every vertex
//! `v` sees at least `min(r, deg(v))` distinct colors on its neighborhood.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ColoringError, ParseError};
use crate::graph::{Graph, VertexSet};

/// Total assignment vertex -> color id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(Vec<usize>);

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring(colors)
    }

    pub fn color(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Number of distinct colors used.
    pub fn num_colors(&self) -> usize {
        self.0.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn max_color(&self) -> Option<usize> {
        self.0.iter().copied().max()
    }

    /// Relabels colors to `0..k` in order of first appearance.
    pub fn normalized(&self) -> Coloring {
        let mut map = std::collections::HashMap::new();
        let colors = self
            .0
            .iter()
            .map(|&c| {
                let next = map.len();
                *map.entry(c).or_insert(next)
            })
            .collect();
        Coloring(colors)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("color ids serialize")
    }

    /// `s <vertex> <color>` lines, vertices 1-based.
    pub fn to_solution_lines(&self) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(v, c)| format!("s {} {}\n", v + 1, c))
            .collect()
    }

    pub fn parse_solution_lines(text: &str, n: usize) -> Result<Coloring, ParseError> {
        let mut colors = vec![None; n];
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let at = offset;
            offset += line.len();
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                [] | ["c", ..] => {}
                ["s", v, c] => {
                    let v: usize = v.parse().map_err(|_| ParseError::new(at, "malformed vertex"))?;
                    let c: usize = c.parse().map_err(|_| ParseError::new(at, "malformed color"))?;
                    if v == 0 || v > n {
                        return Err(ParseError::new(at, format!("vertex {v} outside 1..={n}")));
                    }
                    colors[v - 1] = Some(c);
                }
                _ => return Err(ParseError::new(at, "expected `s <vertex> <color>`")),
            }
        }
        colors
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or_else(|| ParseError::new(offset, format!("vertex {} uncolored", v + 1))))
            .collect::<Result<Vec<_>, _>>()
            .map(Coloring)
    }
}

impl From<Vec<usize>> for Coloring {
    fn from(v: Vec<usize>) -> Self {
        Coloring(v)
    }
}

/// Vertices failing the r-dynamic neighborhood requirement under a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deficiency {
    pub r: usize,
    pub bad: VertexSet,
}

fn check_total(g: &Graph, c: &Coloring) -> Result<(), ColoringError> {
    if c.len() != g.n() {
        return Err(ColoringError::Partial {
            expected: g.n(),
            got: c.len(),
        });
    }
    Ok(())
}

pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool, ColoringError> {
    check_total(g, c)?;
    Ok(g.edges().all(|(u, v)| c.color(u) != c.color(v)))
}

/// Number of distinct colors on N(v).
pub fn neighborhood_colors(g: &Graph, c: &Coloring, v: usize) -> usize {
    distinct(g.neighbors(v).iter().map(|&u| c.color(u)))
}

fn distinct<I: Iterator<Item = usize>>(iter: I) -> usize {
    let mut seen: Vec<usize> = iter.collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

pub fn bad_set(g: &Graph, c: &Coloring, r: usize) -> Result<Deficiency, ColoringError> {
    check_total(g, c)?;
    if r == 0 {
        return Err(ColoringError::ZeroR);
    }
    let bad = g
        .vertices()
        .filter(|&v| neighborhood_colors(g, c, v) < r.min(g.degree(v)))
        .collect();
    Ok(Deficiency { r, bad })
}

pub fn is_r_dynamic(g: &Graph, c: &Coloring, r: usize) -> Result<bool, ColoringError> {
    Ok(is_proper(g, c)? && bad_set(g, c, r)?.bad.is_empty())
}

/// Descending degree, ties broken by vertex id.
pub fn default_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// First-fit proper coloring along `order`.
pub fn greedy_proper(g: &Graph, order: &[usize]) -> Coloring {
    let mut colors = vec![usize::MAX; g.n()];
    let mut used = Vec::new();
    for &v in order {
        used.clear();
        used.extend(g.neighbors(v).iter().map(|&u| colors[u]).filter(|&c| c != usize::MAX));
        used.sort_unstable();
        used.dedup();
        colors[v] = used.iter().enumerate().find(|&(i, &c)| i != c).map_or(used.len(), |(i, _)| i);
    }
    Coloring(colors)
}

/// Best state reached when the repair budget ran out.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyFailure {
    pub best: Coloring,
    pub improper_edges: usize,
    pub deficiency: Deficiency,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GreedyError {
    #[error(transparent)]
    Invalid(#[from] ColoringError),
    #[error("repair budget exhausted after {} steps; best state has {} bad vertices and {} improper edges",
        .0.steps, .0.deficiency.bad.len(), .0.improper_edges)]
    Exhausted(Box<GreedyFailure>),
}

#[derive(Debug, Clone, Copy)]
pub struct PaletteParams {
    pub palette_size: usize,
    pub r: usize,
    pub repair_budget: usize,
    pub seed: u64,
}

/// Probability that a repair step ignores conflict scores and picks any proper color.
const REPAIR_NOISE: f64 = 0.1;

/// Colors `g` with at most `palette_size` colors so that the result is
/// r-dynamic. Greedy pass along `order` (smallest color that keeps the
/// assignment proper and does not finish a neighbor's neighborhood with too
/// few colors), then randomized local repair until no conflict is left.
pub fn greedy_bounded_palette(
    g: &Graph,
    order: &[usize],
    params: PaletteParams,
) -> Result<Coloring, GreedyError> {
    let PaletteParams {
        palette_size,
        r,
        repair_budget,
        seed,
    } = params;
    if palette_size == 0 {
        return Err(ColoringError::EmptyPalette.into());
    }
    if r == 0 {
        return Err(ColoringError::ZeroR.into());
    }
    let n = g.n();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(ColoringError::BadOrder.into());
    }

    let mut state = RepairState::new(g, r, palette_size);
    for &v in order {
        let color = state.greedy_choice(v);
        state.colors[v] = color;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = state.snapshot();
    let mut steps = 0;
    loop {
        let violations = state.violations();
        let score = violations.len();
        if score == 0 {
            return Ok(Coloring(state.colors));
        }
        if score < best.1 {
            best = (state.colors.clone(), score);
        }
        if steps >= repair_budget {
            break;
        }
        steps += 1;
        let target = match violations[rng.gen_range(0..violations.len())] {
            Violation::Edge(u, v) => {
                if rng.gen_bool(0.5) {
                    u
                } else {
                    v
                }
            }
            Violation::Bad(v) => *g.neighbors(v).choose(&mut rng).expect("bad vertex has neighbors"),
        };
        state.repair(target, &mut rng);
    }
    let best = Coloring(best.0);
    let deficiency = bad_set(g, &best, r)?;
    let improper_edges = g.edges().filter(|&(u, v)| best.color(u) == best.color(v)).count();
    Err(GreedyError::Exhausted(Box::new(GreedyFailure {
        best,
        improper_edges,
        deficiency,
        steps,
    })))
}

#[derive(Debug, Clone, Copy)]
enum Violation {
    Edge(usize, usize),
    Bad(usize),
}

struct RepairState<'g> {
    g: &'g Graph,
    r: usize,
    palette: usize,
    colors: Vec<usize>,
    scratch: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl<'g> RepairState<'g> {
    fn new(g: &'g Graph, r: usize, palette: usize) -> Self {
        RepairState {
            g,
            r,
            palette,
            colors: vec![UNSET; g.n()],
            scratch: Vec::new(),
        }
    }

    fn snapshot(&self) -> (Vec<usize>, usize) {
        (self.colors.clone(), usize::MAX)
    }

    /// Distinct colors on N(w) if `v` had `color`, or `None` while some neighbor is uncolored.
    fn colors_seen_with(&mut self, w: usize, v: usize, color: usize) -> Option<usize> {
        self.scratch.clear();
        for &u in self.g.neighbors(w) {
            let c = if u == v { color } else { self.colors[u] };
            if c == UNSET {
                return None;
            }
            self.scratch.push(c);
        }
        self.scratch.sort_unstable();
        self.scratch.dedup();
        Some(self.scratch.len())
    }

    /// Neighbors of `v` whose requirement fails with `v` colored `color`.
    fn starved_neighbors(&mut self, v: usize, color: usize) -> usize {
        let g = self.g;
        g.neighbors(v)
            .iter()
            .filter(|&&w| {
                let need = self.r.min(g.degree(w));
                matches!(self.colors_seen_with(w, v, color), Some(k) if k < need)
            })
            .count()
    }

    fn clashes(&self, v: usize, color: usize) -> usize {
        self.g.neighbors(v).iter().filter(|&&u| self.colors[u] == color).count()
    }

    fn greedy_choice(&mut self, v: usize) -> usize {
        let mut fallback_proper = None;
        let mut least = (usize::MAX, 0);
        for color in 0..self.palette {
            let clashes = self.clashes(v, color);
            if clashes == 0 {
                if self.starved_neighbors(v, color) == 0 {
                    return color;
                }
                fallback_proper.get_or_insert(color);
            } else if clashes < least.0 {
                least = (clashes, color);
            }
        }
        fallback_proper.unwrap_or(least.1)
    }

    fn violations(&mut self) -> Vec<Violation> {
        let g = self.g;
        let mut out: Vec<Violation> = g
            .edges()
            .filter(|&(u, v)| self.colors[u] == self.colors[v])
            .map(|(u, v)| Violation::Edge(u, v))
            .collect();
        for v in g.vertices() {
            let need = self.r.min(g.degree(v));
            if need > 0 {
                let seen = self.colors_seen_with(v, usize::MAX, 0).expect("all colored");
                if seen < need {
                    out.push(Violation::Bad(v));
                }
            }
        }
        out
    }

    /// Recolors `x` to a random color among the least-conflicting proper ones.
    fn repair(&mut self, x: usize, rng: &mut ChaCha8Rng) {
        let current = self.colors[x];
        let mut scored: Vec<(usize, usize)> = (0..self.palette)
            .filter(|&c| c != current)
            .map(|c| (self.clashes(x, c), c))
            .collect();
        if scored.is_empty() {
            return;
        }
        let proper: Vec<usize> = scored.iter().filter(|s| s.0 == 0).map(|s| s.1).collect();
        let choice = if !proper.is_empty() && rng.gen_bool(REPAIR_NOISE) {
            proper[rng.gen_range(0..proper.len())]
        } else {
            for entry in scored.iter_mut() {
                entry.0 = entry.0 * 4 + self.starved_neighbors(x, entry.1);
            }
            let min = scored.iter().map(|s| s.0).min().expect("non-empty");
            let ties: Vec<usize> = scored.iter().filter(|s| s.0 == min).map(|s| s.1).collect();
            ties[rng.gen_range(0..ties.len())]
        };
        self.colors[x] = choice;
    }
}
