//! Named graph families and seeded random generators.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Petersen,
    Hypercube { k: usize },
    RandomRegular { n: usize, d: usize, seed: u64 },
    /// d-regular bipartite graph with `half` vertices on each side.
    RandomBipartiteRegular { half: usize, d: usize, seed: u64 },
    /// Erdős–Rényi G(n, p) with p given in parts per million.
    Gnp { n: usize, p_ppm: u32, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("no simple pairing found after {0} restarts")]
    RetriesExhausted(usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cycle { n } => write!(f, "cycle-{n}"),
            Family::Path { n } => write!(f, "path-{n}"),
            Family::Complete { n } => write!(f, "complete-{n}"),
            Family::CompleteBipartite { a, b } => write!(f, "complete_bipartite-{a}-{b}"),
            Family::Petersen => write!(f, "petersen"),
            Family::Hypercube { k } => write!(f, "hypercube-{k}"),
            Family::RandomRegular { n, d, seed } => write!(f, "random_regular-n{n}-d{d}-s{seed}"),
            Family::RandomBipartiteRegular { half, d, seed } => {
                write!(f, "random_bipartite_regular-h{half}-d{d}-s{seed}")
            }
            Family::Gnp { n, p_ppm, seed } => write!(f, "gnp-n{n}-p{p_ppm}-s{seed}"),
        }
    }
}

impl Family {
    /// Parses `cycle:5`, `complete_bipartite:3,3`, `random_regular:20,3,7`, `petersen`, ...
    pub fn parse(spec: &str) -> Result<Family, GenerateError> {
        let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
        let nums: Vec<u64> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| a.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| GenerateError::Invalid(format!("bad arguments in `{spec}`")))?
        };
        let arity = |k: usize| -> Result<(), GenerateError> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(GenerateError::Invalid(format!("`{name}` takes {k} argument(s)")))
            }
        };
        let u = |i: usize| nums[i] as usize;
        match name {
            "cycle" => arity(1).map(|_| Family::Cycle { n: u(0) }),
            "path" => arity(1).map(|_| Family::Path { n: u(0) }),
            "complete" => arity(1).map(|_| Family::Complete { n: u(0) }),
            "complete_bipartite" => arity(2).map(|_| Family::CompleteBipartite { a: u(0), b: u(1) }),
            "petersen" => arity(0).map(|_| Family::Petersen),
            "hypercube" => arity(1).map(|_| Family::Hypercube { k: u(0) }),
            "random_regular" => arity(3).map(|_| Family::RandomRegular {
                n: u(0),
                d: u(1),
                seed: nums[2],
            }),
            "random_bipartite_regular" => arity(3).map(|_| Family::RandomBipartiteRegular {
                half: u(0),
                d: u(1),
                seed: nums[2],
            }),
            "gnp" => arity(3).map(|_| Family::Gnp {
                n: u(0),
                p_ppm: nums[1] as u32,
                seed: nums[2],
            }),
            other => Err(GenerateError::Invalid(format!("unknown family `{other}`"))),
        }
    }
}

pub fn generate(family: &Family) -> Result<Graph, GenerateError> {
    let edges = match *family {
        Family::Cycle { n } => {
            if n < 3 {
                return Err(GenerateError::Invalid("cycle needs n >= 3".into()));
            }
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        Family::Path { n } => (1..n).map(|i| (i - 1, i)).collect(),
        Family::Complete { n } => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        Family::CompleteBipartite { a, b } => {
            (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect()
        }
        Family::Petersen => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            edges
        }
        Family::Hypercube { k } => {
            if k > 16 {
                return Err(GenerateError::Invalid("hypercube dimension above 16".into()));
            }
            let n = 1usize << k;
            (0..n)
                .flat_map(|v| (0..k).map(move |b| (v, v ^ (1 << b))))
                .filter(|&(u, v)| u < v)
                .collect()
        }
        Family::RandomRegular { n, d, seed } => return random_regular(n, d, seed),
        Family::RandomBipartiteRegular { half, d, seed } => return random_bipartite_regular(half, d, seed),
        Family::Gnp { n, p_ppm, seed } => {
            if p_ppm > 1_000_000 {
                return Err(GenerateError::Invalid("edge probability above 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_range(0..1_000_000) < p_ppm {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
    };
    let n = match *family {
        Family::Cycle { n } | Family::Path { n } | Family::Complete { n } => n,
        Family::CompleteBipartite { a, b } => a + b,
        Family::Petersen => 10,
        Family::Hypercube { k } => 1 << k,
        Family::Gnp { n, .. } => n,
        Family::RandomRegular { .. } | Family::RandomBipartiteRegular { .. } => unreachable!(),
    };
    Ok(Graph::from_edges(n, &edges).expect("generated edges are simple"))
}

/// Restarts allowed before random_regular gives up.
pub const MAX_PAIRING_RESTARTS: usize = 1_000;
const PAIR_ATTEMPTS: usize = 64;

/// Random d-regular simple graph from the pairing model: stubs are matched at
/// random, pairs that would form a loop or a repeated edge are rejected, and a
/// fresh pairing is started when no admissible pair remains.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenerateError> {
    if (n * d) % 2 == 1 {
        return Err(GenerateError::Invalid(format!("n*d = {} is odd", n * d)));
    }
    if d >= n && !(n == 0 || d == 0) {
        return Err(GenerateError::Invalid(format!("degree {d} needs more than {n} vertices")));
    }
    pairing(n, d, None, seed)
}

/// Random d-regular bipartite graph on sides `0..half` and `half..2*half`,
/// from the same pairing model with stubs matched across the sides.
pub fn random_bipartite_regular(half: usize, d: usize, seed: u64) -> Result<Graph, GenerateError> {
    if d > half {
        return Err(GenerateError::Invalid(format!("degree {d} exceeds side size {half}")));
    }
    pairing(2 * half, d, Some(half), seed)
}

fn pairing(n: usize, d: usize, split: Option<usize>, seed: u64) -> Result<Graph, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stubs_of = |range: std::ops::Range<usize>| -> Vec<usize> {
        range.flat_map(|v| std::iter::repeat_n(v, d)).collect()
    };
    'restart: for _ in 0..MAX_PAIRING_RESTARTS {
        // Bipartite: left stubs pair with right stubs only.
        let (mut left, mut right) = match split {
            Some(h) => (stubs_of(0..h), stubs_of(h..n)),
            None => (stubs_of(0..n), Vec::new()),
        };
        let mut present: HashSet<(usize, usize)> = HashSet::with_capacity(n * d / 2);
        let mut edges = Vec::with_capacity(n * d / 2);
        let admissible = |u: usize, v: usize, present: &HashSet<(usize, usize)>| {
            u != v && !present.contains(&(u.min(v), u.max(v)))
        };
        while !left.is_empty() {
            let other_len = if split.is_some() { right.len() } else { left.len() };
            let lookup = |left: &[usize], right: &[usize], j: usize| {
                if split.is_some() {
                    right[j]
                } else {
                    left[j]
                }
            };
            let mut chosen = None;
            for _ in 0..PAIR_ATTEMPTS {
                let i = rng.gen_range(0..left.len());
                let j = rng.gen_range(0..other_len);
                let distinct_stubs = split.is_some() || i != j;
                if distinct_stubs && admissible(left[i], lookup(&left, &right, j), &present) {
                    chosen = Some((i, j));
                    break;
                }
            }
            let (i, j) = match chosen {
                Some(pair) => pair,
                None => {
                    let candidates: Vec<(usize, usize)> = (0..left.len())
                        .flat_map(|i| {
                            let start = if split.is_some() { 0 } else { i + 1 };
                            (start..other_len).map(move |j| (i, j))
                        })
                        .filter(|&(i, j)| admissible(left[i], lookup(&left, &right, j), &present))
                        .collect();
                    if candidates.is_empty() {
                        continue 'restart;
                    }
                    candidates[rng.gen_range(0..candidates.len())]
                }
            };
            let (u, v) = (left[i], lookup(&left, &right, j));
            present.insert((u.min(v), u.max(v)));
            edges.push((u, v));
            if split.is_some() {
                left.swap_remove(i);
                right.swap_remove(j);
            } else {
                let (hi, lo) = (i.max(j), i.min(j));
                left.swap_remove(hi);
                left.swap_remove(lo);
            }
        }
        return Ok(Graph::from_edges(n, &edges).expect("pairing rejects loops and repeats"));
    }
    Err(GenerateError::RetriesExhausted(MAX_PAIRING_RESTARTS))
}
