mod common;

use common::*;
use multiramsey::bounds::{bip_bound, trivial_bound};
use multiramsey::oracle::{
    exact_ramsey, has_mono_copy, is_ramsey, pentagon_coloring, random_coloring, RamseyConfig,
};
use multiramsey::pipeline::{find_mono, trace_audit, Mode, PipelineConfig, Provenance};
use multiramsey::{EdgeColoring, Graph};
use proptest::prelude::*;

fn targets() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", Graph::complete(2)),
        ("P3", Graph::path(3)),
        ("P4", Graph::path(4)),
        ("K3", Graph::complete(3)),
        ("C4", Graph::cycle(4)),
        ("2K2", Graph::matching(2)),
        ("K1,3", Graph::star(3)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pipeline_agrees_with_oracle(n in 4usize..12, k in 2usize..4, seed in any::<u64>(), which in 0usize..7, general in any::<bool>()) {
        let c = random_coloring(n, k, seed).unwrap();
        let (_, f) = targets().swap_remove(which);
        let mode = if general || !f.is_bipartite() { Mode::General } else { Mode::Bipartite };
        prop_assume!(mode == Mode::Bipartite || k >= 3 || f.m() == 1);
        let mut cfg = PipelineConfig::best_effort(mode, seed);
        cfg.oracle_fallback = true;
        let out = find_mono(&c, &f, &cfg).unwrap();
        let oracle = has_mono_copy(&c, &f);
        match out.found() {
            Some(copy) => {
                prop_assert!(is_mono_copy(&c, &f, copy.color, copy.embedding.as_slice()));
                prop_assert!(oracle.is_some());
            }
            None => {
                prop_assert!(oracle.is_none());
                prop_assert!(!naive_mono_copy_exists(&c, &f) || n > 7);
            }
        }
        if let Some(tr) = out.trace() {
            let report = trace_audit(tr, &c, &tr.params);
            prop_assert!(report.passed(), "{:?}", report.violations);
            prop_assert!(tr.steps() <= tr.length_bound() || mode == Mode::Bipartite);
        }
    }
}

#[test]
fn constructive_copies_use_the_reported_color() {
    let mut constructive = 0;
    for seed in 0..40 {
        let c = random_coloring(40, 3, seed).unwrap();
        for (_, f) in targets() {
            let cfg = PipelineConfig::best_effort(Mode::General, seed);
            if let Some(copy) = find_mono(&c, &f, &cfg).unwrap().found() {
                assert!(is_mono_copy(&c, &f, copy.color, copy.embedding.as_slice()));
                assert_ne!(copy.provenance, Provenance::OracleFallback);
                constructive += 1;
            }
        }
    }
    assert!(constructive > 0);
}

#[test]
fn certificates_are_self_consistent() {
    let cfg = RamseyConfig::default();
    for (name, f) in targets() {
        for k in 2..=2 {
            let cert = exact_ramsey(k, &f, 7, &cfg).unwrap();
            assert!(cert.witness_is_valid(), "{name}");
            assert_eq!(cert.witness.n() + 1, cert.value);
            assert!(!naive_mono_copy_exists(&cert.witness, &cert.f), "{name}");
            // Minimality: the witness size is genuinely non-Ramsey, the value is Ramsey.
            assert!(is_ramsey(cert.value, k, &f, &cfg).unwrap().is_ramsey());
            if cert.value > f.n() {
                assert!(!is_ramsey(cert.value - 1, k, &f, &cfg).unwrap().is_ramsey());
            }
            // Values never exceed the generic upper bounds.
            let log2_value = (cert.value as f64).log2();
            assert!(log2_value <= trivial_bound(f.n() as u64, k as u64).unwrap() as f64);
            if f.is_bipartite() {
                assert!(log2_value <= bip_bound(f.m() as u64, k as u64).unwrap().log2_n);
            }
        }
    }
}

#[test]
fn triangle_witness_on_five_vertices_is_two_pentagons() {
    let cert = exact_ramsey(2, &Graph::complete(3), 6, &RamseyConfig::default()).unwrap();
    assert_eq!(cert.value, 6);
    for col in 0..2 {
        let g = cert.witness.class_graph(col);
        assert_eq!(g.m(), 5);
        assert!((0..5).all(|v| g.degree(v) == 2));
        assert!(contains_cycle_through_all(&g));
    }
    assert!(has_mono_copy(&pentagon_coloring(), &Graph::complete(3)).is_none());
}

fn contains_cycle_through_all(g: &Graph) -> bool {
    // 2-regular and connected means a single Hamiltonian cycle.
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        if !std::mem::replace(&mut seen[v], true) {
            stack.extend(g.neighbors(v).iter());
        }
    }
    seen.iter().all(|&s| s)
}

#[test]
fn random_coloring_is_balanced() {
    let (n, k) = (40usize, 3usize);
    let pairs = (n * (n - 1) / 2) as f64;
    let mean = pairs / k as f64;
    let sigma = (pairs * (1.0 / k as f64) * (1.0 - 1.0 / k as f64)).sqrt();
    for seed in 9..109 {
        let c = random_coloring(n, k, seed).unwrap();
        let mut counts = vec![0usize; k];
        for (_, _, col) in c.triples() {
            counts[col] += 1;
        }
        for &x in &counts {
            assert!(
                (x as f64 - mean).abs() <= 5.0 * sigma,
                "seed {seed}: {counts:?}"
            );
        }
    }
    assert_eq!(
        random_coloring(n, k, 9).unwrap(),
        random_coloring(n, k, 9).unwrap()
    );
}

#[test]
fn monochromatic_host_always_yields_a_copy() {
    for (_, f) in targets() {
        let c = EdgeColoring::monochromatic(8, 3, 2).unwrap();
        let out = find_mono(&c, &f, &PipelineConfig::best_effort(Mode::General, 1)).unwrap();
        let copy = out.found().expect("every pair has color 2");
        assert_eq!(copy.color, 2);
        assert!(is_embedding(
            &Graph::complete(8),
            &f,
            copy.embedding.as_slice()
        ));
    }
}
