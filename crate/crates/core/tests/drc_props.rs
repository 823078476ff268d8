mod common;

use common::*;
use multiramsey::drc::{binomial, count_bad_dsets, drc_select, BipartiteGraph, DrcParams};
use multiramsey::VertexSet;
use proptest::prelude::*;

fn naive_bad(g: &BipartiteGraph, a: &[usize], d: usize, x: u64) -> u64 {
    let adj = matrix(g.graph());
    let side = g.side();
    fn subsets(
        a: &[usize],
        d: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..a.len() {
            cur.push(a[i]);
            subsets(a, d, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    subsets(a, d, 0, &mut Vec::new(), &mut all);
    all.iter()
        .filter(|s| ((0..side).filter(|&v| s.iter().all(|&u| adj[v][u])).count() as u64) < x)
        .count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_count_matches_naive(side in 3usize..16, p in 0.2f64..0.9, seed in any::<u64>(), d in 1usize..4, x in 1u64..8, mask in any::<u16>()) {
        let g = BipartiteGraph::random(side, p, seed);
        let a: Vec<usize> = (side..2 * side).filter(|v| mask >> (v - side) & 1 == 1).collect();
        prop_assume!(a.len() >= d && binomial(a.len() as u64, d as u64) <= 10_000);
        let set = VertexSet::from_members(2 * side, a.iter().copied()).unwrap();
        prop_assert_eq!(count_bad_dsets(&g, &set, d, x).unwrap(), naive_bad(&g, &a, d, x));
    }

    #[test]
    fn certified_success_meets_both_bounds(side in 20usize..60, seed in any::<u64>(), d in 1u32..3, t in 1u32..3, x in 1u64..10) {
        let g = BipartiteGraph::random(side, 0.6, seed);
        let eps = g.graph().m() as f64 / (side * side) as f64;
        let p = DrcParams { a: 1, d, t, x, eps, n: side as u64 };
        if let Ok(out) = drc_select(&g, &p, seed, 30) {
            prop_assert!(out.a_set.len() as f64 >= 0.5 * eps.powi(t as i32) * side as f64);
            if out.certified {
                let a: Vec<usize> = out.a_set.iter().collect();
                let bad = naive_bad(&g, &a, d as usize, x);
                prop_assert_eq!(bad, out.bad_count);
                let nf = side as f64;
                let bound = 2.0 * eps.powi(-(t as i32)) * (x as f64 / nf).powi(t as i32) * (a.len() as f64 / nf)
                    * binomial(side as u64, d as u64) as f64;
                prop_assert!(bad as f64 <= bound * (1.0 + 1e-9));
            }
        }
    }
}
