//! Simple undirected graphs on dense vertex ids and the derived graphs
//! (square, induced subgraph, edge removal) the colorings are built on.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub min_degree: usize,
    pub max_degree: usize,
    pub regular: bool,
    /// Common degree when the graph is regular.
    pub degree: Option<usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_iter_checked<I>(iter: I, n: usize) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = usize>,
    {
        let set: VertexSet = iter.into_iter().collect();
        if let Some(&last) = set.0.last() {
            if last >= n {
                return Err(GraphError::VertexOutOfRange { vertex: last, n });
            }
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    /// Membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl Graph {
    /// Builds a graph from an edge list, dropping duplicate edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Graph::from_raw_adjacency(adj))
    }

    /// Sorts and dedups each list; the caller guarantees symmetry and no loops.
    fn from_raw_adjacency(mut adj: Vec<Vec<usize>>) -> Graph {
        let mut total = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            total += list.len();
        }
        let g = Graph { adj, m: total / 2 };
        debug_assert!(g.validate().is_ok(), "{:?}", g.validate());
        g
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn neighborhood(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v].clone())
    }

    /// N(S): every vertex adjacent to some member of `set`.
    pub fn neighborhood_of_set(&self, set: &VertexSet) -> VertexSet {
        set.iter().flat_map(|v| self.adj[v].iter().copied()).collect()
    }

    /// Checks symmetry, absence of loops and duplicate entries, and the edge count.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.n();
        let mut total = 0;
        for (v, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("adjacency of {v} is not strictly sorted"));
            }
            for &u in list {
                if u >= n {
                    return Err(format!("neighbor {u} of {v} out of range"));
                }
                if u == v {
                    return Err(format!("self-loop at {v}"));
                }
                if self.adj[u].binary_search(&v).is_err() {
                    return Err(format!("edge {v}-{u} not symmetric"));
                }
            }
            total += list.len();
        }
        if total != 2 * self.m {
            return Err(format!("edge count {} disagrees with degree sum {total}", self.m));
        }
        Ok(())
    }

    /// G²: distinct vertices adjacent iff their distance in G is 1 or 2.
    pub fn square(&self) -> Graph {
        let adj = self
            .vertices()
            .map(|v| {
                let mut list: Vec<usize> = Vec::new();
                for &u in &self.adj[v] {
                    list.push(u);
                    list.extend(self.adj[u].iter().copied().filter(|&w| w != v));
                }
                list
            })
            .collect();
        Graph::from_raw_adjacency(adj)
    }

    /// Subgraph induced on `set`; `map[i]` is the original id of new vertex `i`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        let n = self.n();
        let mut index = vec![usize::MAX; n];
        for (i, v) in set.iter().enumerate() {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            index[v] = i;
        }
        let map: Vec<usize> = set.iter().collect();
        let adj = map
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| (index[u] != usize::MAX).then_some(index[u]))
                    .collect()
            })
            .collect();
        Ok((Graph::from_raw_adjacency(adj), map))
    }

    /// Removes the given edges. The flag is true when some requested edge was absent.
    pub fn remove_edges<I>(&self, edges: I) -> (Graph, bool)
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = self.adj.clone();
        let mut missing = false;
        for (u, v) in edges {
            if u >= self.n() || v >= self.n() || !self.has_edge(u, v) {
                missing = true;
                continue;
            }
            adj[u].retain(|&w| w != v);
            adj[v].retain(|&w| w != u);
        }
        (Graph::from_raw_adjacency(adj), missing)
    }

    /// Adds edges to a copy of the graph; loops and duplicates are ignored.
    pub fn with_edges<I>(&self, edges: I) -> Graph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = self.adj.clone();
        for (u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        Graph::from_raw_adjacency(adj)
    }

    pub fn degree_stats(&self) -> Result<DegreeProfile, GraphError> {
        let min_degree = self.adj.iter().map(Vec::len).min().ok_or(GraphError::Empty)?;
        let max_degree = self.adj.iter().map(Vec::len).max().ok_or(GraphError::Empty)?;
        let regular = min_degree == max_degree;
        Ok(DegreeProfile {
            min_degree,
            max_degree,
            regular,
            degree: regular.then_some(min_degree),
        })
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// BFS distances from `source`; unreachable vertices get `usize::MAX`.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            out.push(comp.into_iter().collect());
        }
        out
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|v| self.adj[v].iter().all(|&u| !set.contains(u)))
    }

    /// True iff the subgraph induced on `set` has no cycle.
    pub fn induces_forest(&self, set: &VertexSet) -> bool {
        self.find_cycle_in(set).is_none()
    }

    /// Some cycle of the subgraph induced on `set`, as a vertex sequence.
    pub fn find_cycle_in(&self, set: &VertexSet) -> Option<Vec<usize>> {
        let n = self.n();
        let inside = set.mask(n);
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        for root in set.iter() {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &u in &self.adj[v] {
                    if !inside[u] || u == parent[v] {
                        continue;
                    }
                    if depth[u] == usize::MAX {
                        depth[u] = depth[v] + 1;
                        parent[u] = v;
                        stack.push(u);
                    } else {
                        return Some(tree_cycle(&parent, &depth, v, u));
                    }
                }
            }
        }
        None
    }

    /// Proper 2-coloring of the subgraph induced on `set` (0/1 per member, by
    /// position in `set`), or `None` if it is not bipartite.
    pub fn two_color(&self, set: &VertexSet) -> Option<Vec<u8>> {
        let n = self.n();
        let mut side = vec![u8::MAX; n];
        let inside = set.mask(n);
        for root in set.iter() {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if !inside[u] {
                        continue;
                    }
                    if side[u] == u8::MAX {
                        side[u] = 1 - side[v];
                        queue.push_back(u);
                    } else if side[u] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(set.iter().map(|v| side[v]).collect())
    }
}

/// Cycle closed by the non-tree edge `v-u` in a DFS forest.
fn tree_cycle(parent: &[usize], depth: &[usize], v: usize, u: usize) -> Vec<usize> {
    let (mut a, mut b) = (v, u);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Pairs `{u, v}` with `u < v`, useful for edge-set arguments.
pub fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges().collect()
}
