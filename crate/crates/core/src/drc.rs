//! Dependent random choice on a dense bipartite graph.
//!
//! Pick `t` pivots from `V1` uniformly with repetition and take their common
//! neighborhood `A` in `V2`. In expectation `A` is large and few `d`-subsets
//! of `A` have a small common neighborhood back in `V1`; each draw is checked
//! against both conclusions and redrawn on failure.

use crate::bitset::VertexSet;
use crate::bounds::log2_big;
use crate::graph::{Adjacency, Graph, GraphError};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::LN_2;
use thiserror::Error;

/// Exhaustive bad-set counting is refused above this many `d`-subsets.
pub const ENUMERATION_CAP: u64 = 10_000_000;
/// Number of random `d`-subsets drawn when enumeration is refused.
pub const SAMPLE_COUNT: u64 = 100_000;
pub const DEFAULT_RETRY_CAP: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DrcError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("graph has {edges} edges but the density floor needs at least {required:.1}")]
    TooSparse { edges: usize, required: f64 },
    #[error("no draw met both bounds within {retry_cap} attempts")]
    RetriesExhausted {
        retry_cap: u32,
        best: Box<DrcOutcome>,
    },
    #[error("{subsets} d-subsets exceed the enumeration cap of {cap}")]
    EnumerationCap { subsets: u128, cap: u64 },
    #[error("tuple size {d} exceeds the set size {size}")]
    TupleTooLarge { d: usize, size: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("not bipartite across the sides: {0}")]
    NotBipartite(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A bipartite graph with sides `V1 = 0..side` and `V2 = side..2*side`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteGraph {
    graph: Graph,
    side: usize,
}

impl BipartiteGraph {
    /// Wraps a graph on `2 * side` vertices whose edges all cross the sides.
    pub fn new(graph: Graph, side: usize) -> Result<Self, DrcError> {
        if graph.n() != 2 * side {
            return Err(DrcError::NotBipartite(format!(
                "expected {} vertices, found {}",
                2 * side,
                graph.n()
            )));
        }
        if let Some((u, v)) = graph
            .edges()
            .into_iter()
            .find(|&(u, v)| (u < side) == (v < side))
        {
            return Err(DrcError::NotBipartite(format!(
                "edge ({u},{v}) inside one side"
            )));
        }
        Ok(Self { graph, side })
    }

    /// Edges given as `(i, j)` meaning `V1[i] -- V2[j]`.
    pub fn from_side_edges(side: usize, edges: &[(usize, usize)]) -> Result<Self, DrcError> {
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= side || j >= side) {
            return Err(DrcError::Graph(GraphError::VertexOutOfRange {
                vertex: i.max(j),
                n: side,
            }));
        }
        let lifted: Vec<_> = edges.iter().map(|&(i, j)| (i, side + j)).collect();
        Self::new(Graph::from_edge_list(2 * side, &lifted)?, side)
    }

    pub fn complete(side: usize) -> Self {
        Self::new(Graph::complete_bipartite(side, side), side).expect("sides are independent")
    }

    /// Each cross pair present independently with probability `p`.
    pub fn random(side: usize, p: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 0..side {
            for j in 0..side {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Self::from_side_edges(side, &edges).expect("generated edges are in range")
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn v1(&self) -> VertexSet {
        VertexSet::range(2 * self.side, 0, self.side)
    }

    pub fn v2(&self) -> VertexSet {
        VertexSet::range(2 * self.side, self.side, 2 * self.side)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DrcParams {
    pub a: u32,
    /// Tuple size.
    pub d: u32,
    /// Number of pivots.
    pub t: u32,
    /// Common-neighborhood threshold.
    pub x: u64,
    /// Edge density floor.
    pub eps: f64,
    /// Side size.
    pub n: u64,
}

impl DrcParams {
    pub fn validate(&self) -> Result<(), DrcError> {
        let positive = [
            ("a", self.a as u64),
            ("d", self.d as u64),
            ("t", self.t as u64),
            ("x", self.x),
            ("N", self.n),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(DrcError::InvalidParams(format!(
                "{name} must be at least 1"
            )));
        }
        if !(self.eps > 0.0 && self.eps <= 1.0) {
            return Err(DrcError::InvalidParams(format!(
                "eps = {} not in (0, 1]",
                self.eps
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DrcOutcome {
    pub a_set: VertexSet,
    pub pivots: Vec<usize>,
    /// Exact count when `certified`, otherwise a sampled estimate (rounded).
    pub bad_count: u64,
    pub bad_bound: f64,
    pub size_bound: f64,
    pub retries_used: u32,
    pub certified: bool,
}

impl DrcOutcome {
    pub fn size_ok(&self) -> bool {
        self.a_set.len() as f64 >= self.size_bound
    }

    pub fn bad_ok(&self) -> bool {
        self.bad_count as f64 <= self.bad_bound
    }

    pub fn succeeded(&self) -> bool {
        self.size_ok() && self.bad_ok()
    }
}

/// `ln C(n, d)` for real `n` (`-inf` when `n < d`).
pub fn ln_binomial(n: f64, d: u64) -> f64 {
    if n < d as f64 {
        return f64::NEG_INFINITY;
    }
    (0..d)
        .map(|i| (n - i as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}

/// Exact `C(n, d)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, d: u64) -> u128 {
    if d > n {
        return 0;
    }
    let d = d.min(n - d);
    let mut acc: u128 = 1;
    for i in 0..d {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i + 1) as u128,
            None => return u128::MAX,
        };
    }
    acc
}

/// `ln` of `2 eps^(-ta) (x/N)^t (|A|/N)^a C(N, d)`.
pub fn bad_bound_ln(eps: f64, t: f64, a: f64, x: f64, n: f64, a_size: f64, d: u64) -> f64 {
    LN_2 - t * a * eps.ln() + t * (x / n).ln() + a * (a_size / n).ln() + ln_binomial(n, d)
}

/// `2 eps^(-ta) (x/N)^t (|A|/N)^a C(N, d)`.
pub fn drc_bad_bound(p: &DrcParams, a_size: usize) -> f64 {
    bad_bound_ln(
        p.eps,
        p.t as f64,
        p.a as f64,
        p.x as f64,
        p.n as f64,
        a_size as f64,
        p.d as u64,
    )
    .exp()
}

/// `2^(-1/a) eps^t N`.
pub fn drc_size_bound(p: &DrcParams) -> f64 {
    2f64.powf(-1.0 / p.a as f64) * p.eps.powi(p.t as i32) * p.n as f64
}

fn check_tuple(a_size: usize, d: usize) -> Result<u128, DrcError> {
    if d > a_size {
        return Err(DrcError::TupleTooLarge { d, size: a_size });
    }
    Ok(binomial(a_size as u64, d as u64))
}

/// Counts `d`-subsets of `a_set` whose common neighborhood inside `side1`
/// has fewer than `x` members. Exhaustive; refuses above [`ENUMERATION_CAP`].
pub fn count_bad_dsets_in<A: Adjacency>(
    adj: &A,
    side1: &VertexSet,
    a_set: &VertexSet,
    d: usize,
    x: u64,
) -> Result<u64, DrcError> {
    let members = a_set.to_vec();
    let total = check_tuple(members.len(), d)?;
    if total > ENUMERATION_CAP as u128 {
        return Err(DrcError::EnumerationCap {
            subsets: total,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(count_below(adj, &members, 0, d, side1, x))
}

/// Bad subsets among `d`-subsets of `members[from..]`, each intersected with
/// `common`. Once `common` is already below `x` every completion is bad.
fn count_below<A: Adjacency>(
    adj: &A,
    members: &[usize],
    from: usize,
    d: usize,
    common: &VertexSet,
    x: u64,
) -> u64 {
    if (common.len() as u64) < x {
        return binomial((members.len() - from) as u64, d as u64) as u64;
    }
    if d == 0 {
        return 0;
    }
    let mut bad = 0;
    for i in from..=members.len() - d {
        let next = common.intersection(adj.row(members[i]));
        bad += count_below(adj, members, i + 1, d - 1, &next, x);
    }
    bad
}

/// `count_bad_dsets_in` for a [`BipartiteGraph`] with `a_set ⊆ V2`.
pub fn count_bad_dsets(
    g: &BipartiteGraph,
    a_set: &VertexSet,
    d: usize,
    x: u64,
) -> Result<u64, DrcError> {
    if !a_set.is_subset(&g.v2()) {
        return Err(DrcError::InvalidParams("a_set must lie in V2".into()));
    }
    count_bad_dsets_in(g.graph(), &g.v1(), a_set, d, x)
}

/// Estimates the bad count from [`SAMPLE_COUNT`] uniform `d`-subsets.
fn sample_bad_dsets<A: Adjacency>(
    adj: &A,
    side1: &VertexSet,
    a_set: &VertexSet,
    d: usize,
    x: u64,
    rng: &mut ChaCha8Rng,
) -> u64 {
    let members = a_set.to_vec();
    let mut hits = 0u64;
    for _ in 0..SAMPLE_COUNT {
        let mut common = side1.clone();
        for i in sample(rng, members.len(), d).iter() {
            common.intersect_with(adj.row(members[i]));
        }
        if (common.len() as u64) < x {
            hits += 1;
        }
    }
    let total = binomial(members.len() as u64, d as u64) as f64;
    (hits as f64 / SAMPLE_COUNT as f64 * total).round() as u64
}

/// One side pair for the sampling engine. `n_scale` is the `N` used in the
/// bounds, which the pipeline sets to the larger side.
pub(crate) struct DrcInstance<'a, A: Adjacency> {
    pub adj: &'a A,
    pub side1: &'a VertexSet,
    pub side2: &'a VertexSet,
}

pub(crate) fn drc_sample<A: Adjacency>(
    inst: &DrcInstance<'_, A>,
    p: &DrcParams,
    rng: &mut ChaCha8Rng,
    retry_cap: u32,
) -> Result<DrcOutcome, DrcError> {
    let v1 = inst.side1.to_vec();
    if v1.is_empty() {
        return Err(DrcError::InvalidParams("V1 is empty".into()));
    }
    let size_bound = drc_size_bound(p);
    let d = p.d as usize;
    let mut best: Option<DrcOutcome> = None;
    for attempt in 0..retry_cap.max(1) {
        let pivots: Vec<usize> = (0..p.t).map(|_| v1[rng.gen_range(0..v1.len())]).collect();
        let mut a_set = inst.side2.clone();
        for &pv in &pivots {
            a_set.intersect_with(inst.adj.row(pv));
        }
        let a_size = a_set.len();
        let (bad_count, certified) = if d > a_size {
            (0, true)
        } else {
            match count_bad_dsets_in(inst.adj, inst.side1, &a_set, d, p.x) {
                Ok(c) => (c, true),
                Err(DrcError::EnumerationCap { .. }) => (
                    sample_bad_dsets(inst.adj, inst.side1, &a_set, d, p.x, rng),
                    false,
                ),
                Err(e) => return Err(e),
            }
        };
        let outcome = DrcOutcome {
            bad_bound: drc_bad_bound(p, a_size),
            a_set,
            pivots,
            bad_count,
            size_bound,
            retries_used: attempt,
            certified,
        };
        if outcome.succeeded() {
            return Ok(outcome);
        }
        let better = match &best {
            None => true,
            Some(b) => (outcome.size_ok(), outcome.a_set.len()) > (b.size_ok(), b.a_set.len()),
        };
        if better {
            best = Some(outcome);
        }
    }
    Err(DrcError::RetriesExhausted {
        retry_cap,
        best: Box::new(best.expect("at least one attempt ran")),
    })
}

/// Dependent random choice on `g`: draws pivot multisets until the common
/// neighborhood meets both the size bound and the bad-set bound.
pub fn drc_select(
    g: &BipartiteGraph,
    p: &DrcParams,
    seed: u64,
    retry_cap: u32,
) -> Result<DrcOutcome, DrcError> {
    p.validate()?;
    if p.n != g.side() as u64 {
        return Err(DrcError::InvalidParams(format!(
            "N = {} but the graph has sides of size {}",
            p.n,
            g.side()
        )));
    }
    let required = p.eps * (p.n as f64).powi(2);
    // Relative slack so that eps = edges / N^2 is accepted despite rounding.
    if (g.graph().m() as f64) < required * (1.0 - 1e-12) {
        return Err(DrcError::TooSparse {
            edges: g.graph().m(),
            required,
        });
    }
    let (v1, v2) = (g.v1(), g.v2());
    let inst = DrcInstance {
        adj: g.graph(),
        side1: &v1,
        side2: &v2,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    drc_sample(&inst, p, &mut rng, retry_cap)
}

fn ln_big(v: &BigUint) -> f64 {
    log2_big(v) * LN_2
}

/// Checks the simplified bad-set bound used by the nesting step:
///
/// `2 k^(2d) (x/a2)^(2d) (a_next/a2) C(a2, d) <= (2d)^(-d) C(x, d)`
///
/// with the worst case `a_next = a2`, under the hypothesis
/// `a2 >= k^(-kl - (2d+2)k(d-1)) N / 2`, which is checked exactly first.
pub fn check_badsets_simplification(
    k: u64,
    d: u64,
    ell: u64,
    n: &BigUint,
    x: &BigUint,
    a2_size: &BigUint,
) -> Result<bool, DrcError> {
    if k < 2 || d == 0 {
        return Err(DrcError::InvalidParams(format!(
            "need k >= 2 and d >= 1, got k={k} d={d}"
        )));
    }
    let shrink = k * ell + (2 * d + 2) * k * (d - 1);
    let lhs = BigUint::from(2u32) * a2_size * BigUint::from(k).pow(shrink as u32);
    if &lhs < n {
        return Err(DrcError::Hypothesis(format!(
            "|A_2| = {a2_size} is below k^-{shrink} N / 2 for N = {n}"
        )));
    }
    if x < &BigUint::from(d) {
        return Err(DrcError::Hypothesis(format!(
            "x = {x} is smaller than d = {d}"
        )));
    }
    let (ln_x, ln_a2, kf, df) = (ln_big(x), ln_big(a2_size), k as f64, d as f64);
    let ln_binom_a2 = ln_binom_big(a2_size, d);
    let left = LN_2 + 2.0 * df * kf.ln() + 2.0 * df * (ln_x - ln_a2) + ln_binom_a2;
    let right = -df * (2.0 * df).ln() + ln_binom_big(x, d);
    Ok(left <= right)
}

/// `ln C(v, d)` for a possibly huge `v`, via `ln(v - i) = ln v + ln(1 - i/v)`.
fn ln_binom_big(v: &BigUint, d: u64) -> f64 {
    if v < &BigUint::from(d) {
        return f64::NEG_INFINITY;
    }
    if v.bits() <= 52 {
        return ln_binomial(v.to_f64().expect("fits in f64"), d);
    }
    let ln_v = ln_big(v);
    let ratio_base = (-ln_v).exp();
    (0..d)
        .map(|i| ln_v + (-(i as f64) * ratio_base).ln_1p() - ((i + 1) as f64).ln())
        .sum()
}
