//! Greedy maximum-degree deletion: removes high-degree vertices until the
//! remainder has maximum degree at most `d`, with fewer than `m/d` deletions.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("degree cap must be at least 1")]
    ZeroCap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionResult {
    /// Deleted vertices in deletion order.
    pub u_vertices: Vec<usize>,
    /// Maximum degree of the current graph at each deletion.
    pub degree_trace: Vec<usize>,
    /// The graph with the deleted vertices' edges removed; labels unchanged.
    pub residual: Graph,
    pub d: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionJson {
    pub u: Vec<usize>,
    pub residual_edges: Vec<[usize; 2]>,
    pub trace: Vec<usize>,
    pub d: usize,
}

impl ReductionResult {
    pub fn u_set(&self) -> VertexSet {
        VertexSet::from_members(self.residual.n(), self.u_vertices.iter().copied())
            .expect("deleted vertices are in range")
    }

    pub fn to_json(&self) -> ReductionJson {
        ReductionJson {
            u: self.u_vertices.clone(),
            residual_edges: self
                .residual
                .edges()
                .into_iter()
                .map(|(u, v)| [u, v])
                .collect(),
            trace: self.degree_trace.clone(),
            d: self.d,
        }
    }
}

/// Current degrees plus a max lookup; ties go to the lowest index.
struct DeletionState {
    graph: Graph,
    degree: Vec<usize>,
    alive: Vec<bool>,
}

impl DeletionState {
    fn new(f: &Graph) -> Self {
        Self {
            degree: (0..f.n()).map(|v| f.degree(v)).collect(),
            alive: vec![true; f.n()],
            graph: f.clone(),
        }
    }

    fn max_vertex(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for v in (0..self.degree.len()).filter(|&v| self.alive[v]) {
            if best.is_none_or(|(_, d)| self.degree[v] > d) {
                best = Some((v, self.degree[v]));
            }
        }
        best
    }

    fn delete(&mut self, v: usize) {
        self.alive[v] = false;
        for u in self.graph.neighbors(v).iter() {
            if self.alive[u] {
                self.degree[u] -= 1;
            }
        }
        self.degree[v] = 0;
        let gone = VertexSet::from_members(self.graph.n(), [v]).expect("in range");
        self.graph = self.graph.delete_vertices(&gone);
    }
}

pub fn reduce_max_degree(f: &Graph, d: usize) -> Result<ReductionResult, ReductionError> {
    if d == 0 {
        return Err(ReductionError::ZeroCap);
    }
    let mut state = DeletionState::new(f);
    let mut u_vertices = Vec::new();
    let mut degree_trace = Vec::new();
    while let Some((v, deg)) = state.max_vertex() {
        if deg <= d {
            break;
        }
        u_vertices.push(v);
        degree_trace.push(deg);
        state.delete(v);
    }
    Ok(ReductionResult {
        u_vertices,
        degree_trace,
        residual: state.graph,
        d,
    })
}

/// Runs the deletion to the empty graph; the per-step maximum degrees must
/// sum to the edge count.
pub fn degree_sum_identity_check(f: &Graph) -> bool {
    let mut state = DeletionState::new(f);
    let mut total = 0;
    while let Some((v, deg)) = state.max_vertex() {
        total += deg;
        state.delete(v);
    }
    total == f.m() && state.graph.m() == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_loses_its_center() {
        let r = reduce_max_degree(&Graph::star(3), 1).unwrap();
        assert_eq!(r.u_vertices, vec![0]);
        assert_eq!(r.degree_trace, vec![3]);
        assert_eq!(r.residual.m(), 0);
        assert_eq!(r.residual.n(), 4);
    }

    #[test]
    fn path_is_untouched() {
        let r = reduce_max_degree(&Graph::path(4), 2).unwrap();
        assert!(r.u_vertices.is_empty());
        assert_eq!(r.residual, Graph::path(4));
    }

    #[test]
    fn k4_drops_one_vertex() {
        let r = reduce_max_degree(&Graph::complete(4), 2).unwrap();
        assert_eq!(r.u_vertices, vec![0]);
        assert_eq!(r.residual.edges(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(r.residual.max_degree(), 2);
        assert!(r.u_vertices.len() * 2 < 6);
    }

    #[test]
    fn zero_cap_rejected() {
        assert_eq!(
            reduce_max_degree(&Graph::complete(3), 0),
            Err(ReductionError::ZeroCap)
        );
    }

    #[test]
    fn degree_sum_examples() {
        assert!(degree_sum_identity_check(&Graph::complete(3)));
        assert!(degree_sum_identity_check(&Graph::star(3)));
        assert!(degree_sum_identity_check(&Graph::empty(5)));
    }
}
