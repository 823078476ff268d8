//! Independent checkers and generators shared by the integration tests.
//! Nothing here calls the library's own verification code.

#![allow(dead_code)]

use multiramsey::{EdgeColoring, Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) on `0..n`.
pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Random bipartite graph with sides `0..a` and `a..a+b`.
pub fn random_bipartite(a: usize, b: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(a + b, &edges).unwrap()
}

/// Plain adjacency matrix, rebuilt from the edge list.
pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Injective, in range, and edge-preserving.
pub fn is_embedding(host: &Graph, h: &Graph, map: &[usize]) -> bool {
    if map.len() != h.n() || map.iter().any(|&x| x >= host.n()) {
        return false;
    }
    let mut seen = vec![false; host.n()];
    for &x in map {
        if std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    let adj = matrix(host);
    h.edges().into_iter().all(|(u, v)| adj[map[u]][map[v]])
}

/// Injective, and every target edge lands on a pair of color `col`.
pub fn is_mono_copy(c: &EdgeColoring, h: &Graph, col: usize, map: &[usize]) -> bool {
    if map.len() != h.n() || map.iter().any(|&x| x >= c.n()) {
        return false;
    }
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != map.len() {
        return false;
    }
    let lookup: std::collections::HashMap<(usize, usize), usize> = c
        .triples()
        .into_iter()
        .map(|(u, v, k)| ((u, v), k))
        .collect();
    h.edges().into_iter().all(|(u, v)| {
        let (a, b) = (map[u].min(map[v]), map[u].max(map[v]));
        lookup[&(a, b)] == col
    })
}

/// Tries every injective map; fine for tiny instances only.
pub fn naive_mono_copy_exists(c: &EdgeColoring, h: &Graph) -> bool {
    fn go(c: &EdgeColoring, h: &Graph, map: &mut Vec<usize>) -> bool {
        if map.len() == h.n() {
            return (0..c.k()).any(|col| is_mono_copy(c, h, col, map));
        }
        for x in 0..c.n() {
            if !map.contains(&x) {
                map.push(x);
                if go(c, h, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    go(c, h, &mut Vec::new())
}

pub fn set(n: usize, members: &[usize]) -> VertexSet {
    VertexSet::from_members(n, members.iter().copied()).unwrap()
}

/// Every labeled graph on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            Graph::from_edge_list(n, &edges).unwrap()
        })
        .collect()
}
