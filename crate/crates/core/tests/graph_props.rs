mod common;

use common::*;
use multiramsey::{Adjacency, EdgeColoring, Graph, VertexSet};
use proptest::prelude::*;

fn edge_list() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2usize..30).prop_flat_map(|n| {
        let pair = (0..n, 0..n).prop_filter("no loops", |(u, v)| u != v);
        (Just(n), proptest::collection::vec(pair, 0..80))
    })
}

proptest! {
    #[test]
    fn adjacency_is_symmetric((n, edges) in edge_list()) {
        let g = Graph::from_edge_list(n, &edges).unwrap();
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(g.adjacent(u, v), g.adjacent(v, u));
            }
            prop_assert!(!g.adjacent(u, u));
        }
        let degree_sum: usize = (0..n).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.m());
        for &(u, v) in &edges {
            prop_assert!(g.has_edge(u, v));
        }
    }

    #[test]
    fn densest_color_meets_pigeonhole(n in 2usize..25, k in 1usize..5, seed in any::<u64>(), mask in any::<u32>()) {
        let c = multiramsey::oracle::random_coloring(n, k, seed).unwrap();
        let mut s = VertexSet::from_members(n, (0..n).filter(|v| mask >> (v % 32) & 1 == 1)).unwrap();
        if s.len() < 2 {
            s = VertexSet::full(n);
        }
        let (col, count) = c.densest_color(&s).unwrap();
        let pairs = s.len() * (s.len() - 1) / 2;
        prop_assert!(count * k >= pairs);
        // Recount from the triples; ties resolve to the lowest color.
        let mut counts = vec![0usize; k];
        for (u, v, cc) in c.triples() {
            if s.contains(u) && s.contains(v) {
                counts[cc] += 1;
            }
        }
        let best = *counts.iter().max().unwrap();
        prop_assert_eq!(count, best);
        prop_assert_eq!(col, counts.iter().position(|&x| x == best).unwrap());
    }

    #[test]
    fn greedy_partition_is_proper((n, edges) in edge_list()) {
        let g = Graph::from_edge_list(n, &edges).unwrap();
        let parts = g.greedy_color_partition();
        prop_assert!(parts.len() <= g.max_degree() + 1);
        let mut seen = vec![0usize; n];
        for part in &parts {
            prop_assert!(g.is_independent(part));
            for &v in part {
                seen[v] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
    }
}

#[test]
fn from_graph_matches_class() {
    let mut r = rng(5);
    for _ in 0..20 {
        let g = random_graph(12, 0.4, &mut r);
        let c = EdgeColoring::from_graph(&g, 2, 1, 0).unwrap();
        assert_eq!(c.class_graph(1), g);
        assert_eq!(c.class_graph(0).m() + g.m(), 66);
    }
}
