mod common;

use common::*;
use multiramsey::reduction::{degree_sum_identity_check, reduce_max_degree};
use multiramsey::Graph;
use proptest::prelude::*;

fn max_degree_without(g: &Graph, gone: &[usize]) -> usize {
    let adj = matrix(g);
    (0..g.n())
        .filter(|v| !gone.contains(v))
        .map(|v| {
            (0..g.n())
                .filter(|u| !gone.contains(u) && adj[v][*u])
                .count()
        })
        .max()
        .unwrap_or(0)
}

proptest! {
    #[test]
    fn reduction_invariants(n in 2usize..40, p in 0.02f64..0.7, seed in any::<u64>(), d_pick in 0usize..4) {
        let g = random_graph(n, p, &mut rng(seed));
        prop_assume!(g.m() > 0);
        let m = g.m();
        let d = [1, 2, 3, (m as f64).sqrt().ceil() as usize][d_pick];
        let res = reduce_max_degree(&g, d).unwrap();
        prop_assert!(res.residual.max_degree() <= d);
        prop_assert!(res.u_vertices.len() * d < m);
        prop_assert_eq!(res.degree_trace.len(), res.u_vertices.len());
        for (i, &deg) in res.degree_trace.iter().enumerate() {
            prop_assert!(deg > d);
            prop_assert_eq!(deg, max_degree_without(&g, &res.u_vertices[..i]));
        }
        // The residual keeps exactly the edges avoiding U.
        let kept: Vec<_> = g.edges().into_iter()
            .filter(|(u, v)| !res.u_vertices.contains(u) && !res.u_vertices.contains(v))
            .collect();
        prop_assert_eq!(res.residual.edges(), kept);
        prop_assert!(degree_sum_identity_check(&g));
    }
}
