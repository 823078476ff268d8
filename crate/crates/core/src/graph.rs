//! Simple undirected graphs with bit-row adjacency.

use crate::bitset::VertexSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Read access to symmetric adjacency rows. Implemented by [`Graph`] and by
/// single color classes of an edge coloring.
pub trait Adjacency {
    fn order(&self) -> usize;
    fn row(&self, v: usize) -> &VertexSet;

    #[inline]
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.row(u).contains(v)
    }
}

impl Adjacency for Graph {
    #[inline]
    fn order(&self) -> usize {
        self.n()
    }

    #[inline]
    fn row(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<VertexSet>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            rows: vec![VertexSet::empty(n); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, dropping duplicate pairs.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, keeping only the symmetric part
    /// above the diagonal as given by `rows[u]` for `u < v`.
    pub(crate) fn from_upper_rows(n: usize, rows: &[VertexSet]) -> Self {
        let mut g = Self::empty(n);
        for (u, row) in rows.iter().enumerate() {
            for v in row.iter().filter(|&v| v > u) {
                g.add_edge_unchecked(u, v);
            }
        }
        g
    }

    fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        if !self.rows[u].contains(v) {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
            self.m += 1;
        }
    }

    pub fn complete(n: usize) -> Self {
        let rows = (0..n)
            .map(|v| {
                let mut r = VertexSet::full(n);
                r.remove(v);
                r
            })
            .collect();
        Self {
            rows,
            m: n * n.saturating_sub(1) / 2,
        }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edge_list(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::from_edge_list(n, &edges).expect("cycle edges are valid")
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edge_list(leaves + 1, &edges).expect("star edges are valid")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect();
        Self::from_edge_list(a + b, &edges).expect("bipartite edges are valid")
    }

    /// `r` disjoint edges `{2i, 2i+1}`.
    pub fn matching(r: usize) -> Self {
        let edges: Vec<_> = (0..r).map(|i| (2 * i, 2 * i + 1)).collect();
        Self::from_edge_list(2 * r, &edges).expect("matching edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| {
                self.rows[u]
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    /// True iff every vertex has at least one neighbor.
    pub fn isolated_free(&self) -> bool {
        self.rows.iter().all(|r| !r.is_empty())
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Two-coloring by BFS, or `None` when an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut side = vec![u8::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for v in self.rows[u].iter() {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Greedy proper coloring in vertex index order: each vertex joins the
    /// lowest-index part containing none of its neighbors. Uses at most
    /// `Δ + 1` parts.
    pub fn greedy_color_partition(&self) -> Vec<Vec<usize>> {
        let mut part_of = vec![usize::MAX; self.n()];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n() {
            let mut taken = vec![false; parts.len() + 1];
            for u in self.rows[v].iter() {
                if part_of[u] != usize::MAX {
                    taken[part_of[u]] = true;
                }
            }
            let p = taken
                .iter()
                .position(|&t| !t)
                .expect("one slot is always free");
            if p == parts.len() {
                parts.push(Vec::new());
            }
            parts[p].push(v);
            part_of[v] = p;
        }
        parts
    }

    /// The subgraph induced on `keep`, relabeled to `0..keep.len()` in the
    /// order given. Returns the graph and the map new index -> old index.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for u in self.rows[v].iter() {
                let j = index[u];
                if j != usize::MAX && j > i {
                    g.add_edge_unchecked(i, j);
                }
            }
        }
        (g, keep.to_vec())
    }

    /// Drops isolated vertices. Returns the compacted graph and the map
    /// new index -> old index.
    pub fn without_isolated(&self) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n()).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    /// Copy of this graph with the given vertices' edges removed. Vertex
    /// labels are unchanged.
    pub fn delete_vertices(&self, gone: &VertexSet) -> Graph {
        let mut g = self.clone();
        for v in gone.iter() {
            for u in self.rows[v].iter() {
                if g.rows[u].contains(v) {
                    g.rows[u].remove(v);
                    g.rows[v].remove(u);
                    g.m -= 1;
                }
            }
        }
        g
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        s.iter()
            .map(|v| self.rows[v].intersection_len(s))
            .sum::<usize>()
            / 2
    }
}
