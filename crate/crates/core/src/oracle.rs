//! Ground truth: exhaustive subgraph search, monochromatic-copy detection,
//! and exact small Ramsey numbers with witness colorings.

use crate::bitset::VertexSet;
use crate::coloring::{ColoringError, EdgeColoring};
use crate::embed::Embedding;
use crate::graph::{Adjacency, Graph};
use crate::io::{ColoringJson, GraphJson};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use thiserror::Error;

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("target has no edges")]
    NoEdges,
    #[error("search budget exhausted after {visited} partial colorings (frontier depth {depth} of {edges} edges)")]
    BudgetExceeded {
        visited: u64,
        depth: usize,
        edges: usize,
    },
    #[error("no n <= {n_max} is Ramsey for this target")]
    ExceedsCap {
        n_max: usize,
        best_witness: Box<EdgeColoring>,
    },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Vertex order for matching `f`: repeatedly take the unplaced vertex with
/// the most placed neighbors, then highest degree, then lowest index.
fn match_order(f: &Graph, first: &[usize]) -> Vec<usize> {
    let n = f.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for &v in first {
        placed[v] = true;
        order.push(v);
    }
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = f.neighbors(v).iter().filter(|&u| placed[u]).count();
                (back, f.degree(v), std::cmp::Reverse(v))
            })
            .expect("an unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Matcher<'a, G: Adjacency> {
    g: &'a G,
    f: &'a Graph,
    order: Vec<usize>,
    map: Vec<usize>,
    used: VertexSet,
}

impl<'a, G: Adjacency> Matcher<'a, G> {
    fn new(g: &'a G, f: &'a Graph, order: Vec<usize>) -> Self {
        Self {
            g,
            f,
            order,
            map: vec![usize::MAX; f.n()],
            used: VertexSet::empty(g.order()),
        }
    }

    fn assign(&mut self, w: usize, c: usize) {
        self.map[w] = c;
        self.used.insert(c);
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let w = self.order[depth];
        let need = self.f.degree(w);
        let mut cand = VertexSet::full(self.g.order());
        cand.difference_with(&self.used);
        for u in self.f.neighbors(w).iter() {
            if self.map[u] != usize::MAX {
                cand.intersect_with(self.g.row(self.map[u]));
            }
        }
        for c in cand.iter() {
            if self.g.row(c).len() < need {
                continue;
            }
            self.map[w] = c;
            self.used.insert(c);
            if self.extend(depth + 1) {
                return true;
            }
            self.used.remove(c);
            self.map[w] = usize::MAX;
        }
        false
    }

    fn into_embedding(self) -> Embedding {
        Embedding::new(self.map).expect("matcher keeps images distinct")
    }
}

/// An embedding of `f` into `g` if one exists. Exhaustive and deterministic.
pub fn contains_subgraph<G: Adjacency>(g: &G, f: &Graph) -> Option<Embedding> {
    if f.n() > g.order() {
        return None;
    }
    let mut m = Matcher::new(g, f, match_order(f, &[]));
    m.extend(0).then(|| m.into_embedding())
}

/// Whether `g` has a copy of `f` using the edge `{u, v}`.
fn contains_through_edge<G: Adjacency>(
    g: &G,
    f: &Graph,
    f_edges: &[(usize, usize)],
    u: usize,
    v: usize,
) -> bool {
    for &(a, b) in f_edges {
        for (x, y) in [(u, v), (v, u)] {
            if g.row(x).len() < f.degree(a) || g.row(y).len() < f.degree(b) {
                continue;
            }
            let mut m = Matcher::new(g, f, match_order(f, &[a, b]));
            m.assign(a, x);
            m.assign(b, y);
            if m.extend(2) {
                return true;
            }
        }
    }
    false
}

/// The lowest color whose class contains `f`, with an embedding.
pub fn has_mono_copy(c: &EdgeColoring, f: &Graph) -> Option<(usize, Embedding)> {
    (0..c.k()).find_map(|col| contains_subgraph(&c.class(col), f).map(|e| (col, e)))
}

/// Uniform independent colors, reproducible per seed.
pub fn random_coloring(n: usize, k: usize, seed: u64) -> Result<EdgeColoring, ColoringError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    EdgeColoring::from_fn(n, k, |_, _| rng.gen_range(0..k.max(1)))
}

#[derive(Debug, Clone, Copy)]
pub struct RamseyConfig {
    /// Maximum number of partial colorings visited.
    pub budget: u64,
    /// Fix the first edge to color 0 (color-permutation symmetry).
    pub fix_first_edge: bool,
    pub threads: usize,
}

impl Default for RamseyConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            fix_first_edge: true,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RamseyOutcome {
    /// Every coloring contains a monochromatic copy.
    Ramsey,
    /// The lexicographically first avoiding coloring found.
    NotRamsey(EdgeColoring),
}

impl RamseyOutcome {
    pub fn is_ramsey(&self) -> bool {
        matches!(self, RamseyOutcome::Ramsey)
    }
}

/// Per-color adjacency for a partial coloring.
#[derive(Clone)]
struct Rows(Vec<VertexSet>);

impl Adjacency for Rows {
    fn order(&self) -> usize {
        self.0.len()
    }

    fn row(&self, v: usize) -> &VertexSet {
        &self.0[v]
    }
}

/// Depth-first search for an `f`-avoiding coloring of `K_n`, edges in
/// lexicographic order.
struct AvoidSearch<'a> {
    f: &'a Graph,
    f_edges: Vec<(usize, usize)>,
    pairs: Vec<(usize, usize)>,
    k: usize,
    classes: Vec<Rows>,
    assignment: Vec<u8>,
    visited: &'a AtomicU64,
    budget: u64,
}

enum Stop {
    Exhausted,
    Budget(usize),
}

impl<'a> AvoidSearch<'a> {
    fn new(n: usize, k: usize, f: &'a Graph, visited: &'a AtomicU64, budget: u64) -> Self {
        let pairs = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self {
            f,
            f_edges: f.edges(),
            pairs,
            k,
            classes: vec![Rows(vec![VertexSet::empty(n); n]); k],
            assignment: Vec::new(),
            visited,
            budget,
        }
    }

    /// Colors the next pair; false if that closes a monochromatic copy.
    fn push(&mut self, col: usize) -> bool {
        let (u, v) = self.pairs[self.assignment.len()];
        self.classes[col].0[u].insert(v);
        self.classes[col].0[v].insert(u);
        self.assignment.push(col as u8);
        !contains_through_edge(&self.classes[col], self.f, &self.f_edges, u, v)
    }

    fn pop(&mut self) {
        let col = self.assignment.pop().expect("nonempty") as usize;
        let (u, v) = self.pairs[self.assignment.len()];
        self.classes[col].0[u].remove(v);
        self.classes[col].0[v].remove(u);
    }

    fn search(&mut self, fix_first: bool) -> Result<(), Stop> {
        let depth = self.assignment.len();
        if depth == self.pairs.len() {
            return Ok(());
        }
        let colors = if depth == 0 && fix_first { 1 } else { self.k };
        for col in 0..colors {
            if self.visited.fetch_add(1, Ordering::Relaxed) >= self.budget {
                return Err(Stop::Budget(depth));
            }
            if self.push(col) {
                match self.search(fix_first) {
                    Ok(()) => return Ok(()),
                    Err(Stop::Exhausted) => {}
                    Err(budget) => return Err(budget),
                }
            }
            self.pop();
        }
        Err(Stop::Exhausted)
    }

    fn witness(&self, n: usize) -> EdgeColoring {
        let lookup: std::collections::HashMap<(usize, usize), usize> = self
            .pairs
            .iter()
            .zip(&self.assignment)
            .map(|(&p, &c)| (p, c as usize))
            .collect();
        EdgeColoring::from_fn(n, self.k, |u, v| lookup[&(u, v)]).expect("colors are below k")
    }
}

fn prepare_target(f: &Graph) -> Result<Graph, OracleError> {
    let (core, _) = f.without_isolated();
    if core.m() == 0 {
        return Err(OracleError::NoEdges);
    }
    Ok(core)
}

/// Decides whether every k-coloring of `K_n` has a monochromatic `f`.
pub fn is_ramsey(
    n: usize,
    k: usize,
    f: &Graph,
    cfg: &RamseyConfig,
) -> Result<RamseyOutcome, OracleError> {
    if k == 0 {
        return Err(ColoringError::NoColors.into());
    }
    let f = prepare_target(f)?;
    let edges = n * n.saturating_sub(1) / 2;
    let visited = AtomicU64::new(0);
    if cfg.threads <= 1 || edges < 4 {
        let mut s = AvoidSearch::new(n, k, &f, &visited, cfg.budget);
        return match s.search(cfg.fix_first_edge) {
            Ok(()) => Ok(RamseyOutcome::NotRamsey(s.witness(n))),
            Err(Stop::Exhausted) => Ok(RamseyOutcome::Ramsey),
            Err(Stop::Budget(depth)) => Err(OracleError::BudgetExceeded {
                visited: visited.load(Ordering::Relaxed),
                depth,
                edges,
            }),
        };
    }
    is_ramsey_split(n, k, &f, cfg, edges)
}

/// Per prefix: a witness if one was found, or the visit count at refusal.
type PrefixResult = Result<Option<EdgeColoring>, usize>;

/// Splits the search over colorings of the first few edges. Prefixes are
/// searched in lexicographic order by a pool of workers; the lowest prefix
/// with a witness wins, so the result matches the sequential search.
fn is_ramsey_split(
    n: usize,
    k: usize,
    f: &Graph,
    cfg: &RamseyConfig,
    edges: usize,
) -> Result<RamseyOutcome, OracleError> {
    let mut prefix_len = 1;
    while prefix_len < edges.min(12) && k.pow(prefix_len as u32) < 8 * cfg.threads {
        prefix_len += 1;
    }
    let mut prefixes: Vec<Vec<usize>> = vec![vec![]];
    for depth in 0..prefix_len {
        let colors = if depth == 0 && cfg.fix_first_edge {
            1
        } else {
            k
        };
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                (0..colors).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    let visited = AtomicU64::new(0);
    let next = AtomicUsize::new(0);
    let first_hit = AtomicUsize::new(usize::MAX);
    let results: Mutex<Vec<Option<PrefixResult>>> = Mutex::new(vec![None; prefixes.len()]);
    std::thread::scope(|scope| {
        for _ in 0..cfg.threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= prefixes.len() {
                    break;
                }
                if i > first_hit.load(Ordering::Relaxed) {
                    continue;
                }
                let mut s = AvoidSearch::new(n, k, f, &visited, cfg.budget);
                let mut alive = true;
                for &c in &prefixes[i] {
                    if !s.push(c) {
                        alive = false;
                        break;
                    }
                }
                let outcome = if !alive {
                    Ok(None)
                } else {
                    match s.search(false) {
                        Ok(()) => {
                            first_hit.fetch_min(i, Ordering::Relaxed);
                            Ok(Some(s.witness(n)))
                        }
                        Err(Stop::Exhausted) => Ok(None),
                        Err(Stop::Budget(depth)) => Err(depth),
                    }
                };
                results.lock().expect("no worker panicked")[i] = Some(outcome);
            });
        }
    });
    for r in results.into_inner().expect("no worker panicked") {
        match r {
            Some(Ok(Some(w))) => return Ok(RamseyOutcome::NotRamsey(w)),
            Some(Ok(None)) => {}
            Some(Err(depth)) => {
                return Err(OracleError::BudgetExceeded {
                    visited: visited.load(Ordering::Relaxed),
                    depth,
                    edges,
                })
            }
            None => unreachable!("prefixes before the first witness are always searched"),
        }
    }
    Ok(RamseyOutcome::Ramsey)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RamseyCertificate {
    pub f: Graph,
    pub k: usize,
    pub value: usize,
    /// A coloring of `K_{value-1}` with no monochromatic `f`.
    pub witness: EdgeColoring,
    pub checked_up_to: usize,
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub f: GraphJson,
    pub k: usize,
    pub value: usize,
    pub witness: ColoringJson,
    pub checked_up_to: usize,
}

impl RamseyCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            f: GraphJson::from(&self.f),
            k: self.k,
            value: self.value,
            witness: ColoringJson::from(&self.witness),
            checked_up_to: self.checked_up_to,
        }
    }

    /// Re-checks that the witness avoids a monochromatic copy.
    pub fn witness_is_valid(&self) -> bool {
        self.witness.n() + 1 == self.value
            && self.witness.k() == self.k
            && has_mono_copy(&self.witness, &self.f).is_none()
    }
}

/// Smallest `n <= n_max` such that every k-coloring of `K_n` has a
/// monochromatic `f`, with an avoiding coloring of `K_{n-1}`. Isolated
/// vertices of `f` are dropped first.
pub fn exact_ramsey(
    k: usize,
    f: &Graph,
    n_max: usize,
    cfg: &RamseyConfig,
) -> Result<RamseyCertificate, OracleError> {
    let core = prepare_target(f)?;
    let start = core.n();
    let mut witness = EdgeColoring::monochromatic(start - 1, k, 0)?;
    for n in start..=n_max {
        match is_ramsey(n, k, &core, cfg)? {
            RamseyOutcome::Ramsey => {
                return Ok(RamseyCertificate {
                    f: core,
                    k,
                    value: n,
                    witness,
                    checked_up_to: n,
                })
            }
            RamseyOutcome::NotRamsey(w) => witness = w,
        }
    }
    Err(OracleError::ExceedsCap {
        n_max,
        best_witness: Box::new(witness),
    })
}

/// The 2-coloring of `K_5` with color 0 on the 5-cycle and color 1 on its
/// complement (another 5-cycle).
pub fn pentagon_coloring() -> EdgeColoring {
    EdgeColoring::from_graph(&Graph::cycle(5), 2, 0, 1).expect("two colors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::check_embedding;

    #[test]
    fn containment_examples() {
        let e = contains_subgraph(&Graph::complete(4), &Graph::complete(3)).unwrap();
        assert!(check_embedding(
            &Graph::complete(4),
            &Graph::complete(3),
            &e
        ));
        assert!(contains_subgraph(&Graph::complete(3), &Graph::complete(4)).is_none());
        assert!(contains_subgraph(&Graph::cycle(6), &Graph::cycle(4)).is_none());
        assert!(contains_subgraph(&Graph::cycle(6), &Graph::path(6)).is_some());
    }

    #[test]
    fn mono_copy_examples() {
        let mono = EdgeColoring::monochromatic(6, 2, 0).unwrap();
        let (col, e) = has_mono_copy(&mono, &Graph::complete(3)).unwrap();
        assert_eq!(col, 0);
        assert!(check_embedding(
            &mono.class_graph(0),
            &Graph::complete(3),
            &e
        ));
        assert!(has_mono_copy(&pentagon_coloring(), &Graph::complete(3)).is_none());
    }

    #[test]
    fn ramsey_small_cases() {
        let cfg = RamseyConfig::default();
        match is_ramsey(5, 2, &Graph::complete(3), &cfg).unwrap() {
            RamseyOutcome::NotRamsey(w) => {
                assert!(has_mono_copy(&w, &Graph::complete(3)).is_none());
            }
            RamseyOutcome::Ramsey => panic!("K_5 has a triangle-free 2-coloring"),
        }
        assert!(is_ramsey(6, 2, &Graph::complete(3), &cfg)
            .unwrap()
            .is_ramsey());
        assert!(is_ramsey(2, 1, &Graph::complete(2), &cfg)
            .unwrap()
            .is_ramsey());
    }

    #[test]
    fn exact_values() {
        let cfg = RamseyConfig::default();
        let c = exact_ramsey(2, &Graph::complete(3), 8, &cfg).unwrap();
        assert_eq!(c.value, 6);
        assert!(c.witness_is_valid());
        let c = exact_ramsey(2, &Graph::path(3), 5, &cfg).unwrap();
        assert_eq!(c.value, 3);
        assert!(c.witness_is_valid());
        let c = exact_ramsey(2, &Graph::matching(2), 8, &cfg).unwrap();
        assert_eq!(c.value, 5);
        assert!(c.witness_is_valid());
        // The first avoiding coloring in lexicographic order: edges at vertex 0 use color 0
        // until a matching would close, leaving a triangle plus a star.
        let class0 = c.witness.class_graph(0);
        let class1 = c.witness.class_graph(1);
        assert!(contains_subgraph(&class0, &Graph::matching(2)).is_none());
        assert!(contains_subgraph(&class1, &Graph::matching(2)).is_none());
        let shapes = [class0.m(), class1.m()];
        assert!(shapes.contains(&3), "{shapes:?}");
    }

    #[test]
    fn cap_exceeded() {
        let cfg = RamseyConfig::default();
        match exact_ramsey(2, &Graph::complete(3), 5, &cfg) {
            Err(OracleError::ExceedsCap { best_witness, .. }) => {
                assert_eq!(best_witness.n(), 5);
                assert!(has_mono_copy(&best_witness, &Graph::complete(3)).is_none());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_refusal() {
        let cfg = RamseyConfig {
            budget: 5,
            ..Default::default()
        };
        assert!(matches!(
            is_ramsey(6, 2, &Graph::complete(3), &cfg),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn symmetry_reduction_is_sound_on_k4() {
        // Compare against the unreduced enumeration for every 2-edge target on 4 vertices.
        let targets = [
            Graph::path(3),
            Graph::matching(2),
            Graph::complete(3),
            Graph::path(4),
            Graph::star(3),
        ];
        for f in &targets {
            for n in 3..=5 {
                let reduced = is_ramsey(n, 2, f, &RamseyConfig::default())
                    .unwrap()
                    .is_ramsey();
                let full = is_ramsey(
                    n,
                    2,
                    f,
                    &RamseyConfig {
                        fix_first_edge: false,
                        ..Default::default()
                    },
                )
                .unwrap()
                .is_ramsey();
                assert_eq!(reduced, full, "{f:?} n={n}");
                // Brute force over every coloring.
                let pairs = n * (n - 1) / 2;
                let brute = (0u32..1 << pairs).all(|mask| {
                    let mut bits = (0..pairs).map(|i| (mask >> i & 1) as usize);
                    let c = EdgeColoring::from_fn(n, 2, |_, _| bits.next().unwrap()).unwrap();
                    has_mono_copy(&c, f).is_some()
                });
                assert_eq!(reduced, brute, "{f:?} n={n}");
            }
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        for (f, n) in [
            (Graph::complete(3), 5),
            (Graph::complete(3), 6),
            (Graph::cycle(4), 5),
            (Graph::path(4), 4),
        ] {
            let seq = is_ramsey(n, 2, &f, &RamseyConfig::default()).unwrap();
            let par = is_ramsey(
                n,
                2,
                &f,
                &RamseyConfig {
                    threads: 4,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(seq, par);
        }
    }

    #[test]
    fn random_coloring_is_reproducible() {
        let c = random_coloring(2, 1, 99).unwrap();
        assert_eq!(c.color(0, 1), 0);
        assert_eq!(
            random_coloring(5, 2, 1).unwrap(),
            random_coloring(5, 2, 1).unwrap()
        );
        assert_ne!(
            random_coloring(30, 2, 1).unwrap(),
            random_coloring(30, 2, 2).unwrap()
        );
    }
}
