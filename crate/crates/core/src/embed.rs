//! Embedders for bounded-degree targets: into a nested family of sets, part
//! by part, and into a dense host for bipartite targets.
//!
//! Both run the same search. Target vertices are placed one at a time in a
//! fixed order; a vertex's candidates are the host vertices in its allowed
//! set that are adjacent to the images of all of its already-placed
//! neighbors. The lowest unused candidate is tried first and the search
//! backtracks chronologically.

use crate::bitset::VertexSet;
use crate::graph::{Adjacency, Graph};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;
/// `count_labeled_copies` refuses targets with more vertices than this.
pub const COUNT_MAX_TARGET: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("map is not injective: vertices {0} and {1} share an image")]
    NotInjective(usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no embedding exists within the allowed sets")]
    NotFound,
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("search exhausted although the density hypotheses hold: {0}")]
    Defect(String),
    #[error("target has {0} vertices; exhaustive counting is capped at {COUNT_MAX_TARGET}")]
    CountCapExceeded(usize),
}

/// An injective map from target vertices (by index) to host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Embedding {
    map: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Embedding {
    type Error = EmbedError;

    fn try_from(map: Vec<usize>) -> Result<Self, EmbedError> {
        Embedding::new(map)
    }
}

impl From<Embedding> for Vec<usize> {
    fn from(e: Embedding) -> Vec<usize> {
        e.map
    }
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Result<Self, EmbedError> {
        let mut seen = std::collections::HashMap::with_capacity(map.len());
        for (v, &img) in map.iter().enumerate() {
            if let Some(prev) = seen.insert(img, v) {
                return Err(EmbedError::NotInjective(prev, v));
            }
        }
        Ok(Self { map })
    }

    #[inline]
    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Every target vertex is mapped into the host and every target edge lands
/// on a host edge. Injectivity holds by construction of [`Embedding`].
pub fn check_embedding<A: Adjacency>(host: &A, h: &Graph, e: &Embedding) -> bool {
    e.len() == h.n()
        && e.as_slice().iter().all(|&img| img < host.order())
        && h.edges()
            .into_iter()
            .all(|(u, v)| host.adjacent(e.image(u), e.image(v)))
}

#[derive(Debug, Clone, Copy)]
pub struct EmbedOptions {
    pub node_budget: u64,
    /// Skip size and density hypotheses; structural checks still apply.
    pub best_effort: bool,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
            best_effort: false,
        }
    }
}

/// A chain `V_1 ⊇ V_2 ⊇ .. ⊇ V_q` of host vertex sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NestedFamily {
    pub sets: Vec<VertexSet>,
    pub x: u64,
    pub d: usize,
}

impl NestedFamily {
    pub fn new(sets: Vec<VertexSet>, x: u64, d: usize) -> Result<Self, EmbedError> {
        let fam = Self { sets, x, d };
        fam.check_chain()?;
        Ok(fam)
    }

    fn check_chain(&self) -> Result<(), EmbedError> {
        if self.sets.is_empty() {
            return Err(EmbedError::Precondition("nested family is empty".into()));
        }
        for (i, w) in self.sets.windows(2).enumerate() {
            if w[0].universe() != w[1].universe() || !w[1].is_subset(&w[0]) {
                return Err(EmbedError::Precondition(format!(
                    "set {} is not contained in set {}",
                    i + 2,
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn q(&self) -> usize {
        self.sets.len()
    }
}

/// Backtracking state shared by both embedders.
struct Search<'a, A: Adjacency> {
    host: &'a A,
    h: &'a Graph,
    order: Vec<usize>,
    allowed: Vec<&'a VertexSet>,
    map: Vec<usize>,
    used: VertexSet,
    nodes: u64,
    budget: u64,
}

enum SearchEnd {
    Exhausted,
    Budget,
}

impl<'a, A: Adjacency> Search<'a, A> {
    fn new(
        host: &'a A,
        h: &'a Graph,
        order: Vec<usize>,
        allowed: Vec<&'a VertexSet>,
        budget: u64,
    ) -> Self {
        Self {
            host,
            h,
            order,
            allowed,
            map: vec![usize::MAX; h.n()],
            used: VertexSet::empty(host.order()),
            nodes: 0,
            budget,
        }
    }

    fn candidates(&self, w: usize) -> VertexSet {
        let mut cand = self.allowed[w].difference(&self.used);
        for u in self.h.neighbors(w).iter() {
            let img = self.map[u];
            if img != usize::MAX {
                cand.intersect_with(self.host.row(img));
            }
        }
        cand
    }

    fn extend(&mut self, depth: usize) -> Result<(), SearchEnd> {
        if depth == self.order.len() {
            return Ok(());
        }
        let w = self.order[depth];
        for c in self.candidates(w).iter() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(SearchEnd::Budget);
            }
            self.map[w] = c;
            self.used.insert(c);
            match self.extend(depth + 1) {
                Ok(()) => return Ok(()),
                Err(SearchEnd::Budget) => return Err(SearchEnd::Budget),
                Err(SearchEnd::Exhausted) => {}
            }
            self.used.remove(c);
            self.map[w] = usize::MAX;
        }
        Err(SearchEnd::Exhausted)
    }

    fn run(mut self) -> Result<Embedding, EmbedError> {
        match self.extend(0) {
            Ok(()) => Embedding::new(self.map),
            Err(SearchEnd::Exhausted) => Err(EmbedError::NotFound),
            Err(SearchEnd::Budget) => Err(EmbedError::BudgetExceeded(self.budget)),
        }
    }
}

fn check_parts(h: &Graph, parts: &[Vec<usize>]) -> Result<(), EmbedError> {
    let mut seen = vec![false; h.n()];
    for (j, part) in parts.iter().enumerate() {
        for &v in part {
            if v >= h.n() || std::mem::replace(&mut seen[v], true) {
                return Err(EmbedError::Precondition(format!(
                    "part {j} repeats or misnames vertex {v}"
                )));
            }
        }
        if !h.is_independent(part) {
            return Err(EmbedError::Precondition(format!(
                "part {j} is not independent"
            )));
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(EmbedError::Precondition(format!(
            "vertex {v} is in no part"
        )));
    }
    Ok(())
}

/// Embeds `h` with part `j` placed inside the `j`-th of the deepest
/// `parts.len()` sets of `fam`. Parts are processed deepest first, so each
/// vertex is placed after its neighbors in deeper sets.
pub fn greedy_nested_embed<A: Adjacency>(
    host: &A,
    fam: &NestedFamily,
    h: &Graph,
    parts: &[Vec<usize>],
    opts: &EmbedOptions,
) -> Result<Embedding, EmbedError> {
    fam.check_chain()?;
    if fam.sets[0].universe() != host.order() {
        return Err(EmbedError::Precondition(
            "family and host have different vertex ranges".into(),
        ));
    }
    check_parts(h, parts)?;
    let q = fam.q();
    if parts.len() > q {
        return Err(EmbedError::Precondition(format!(
            "{} parts but only {q} nested sets",
            parts.len()
        )));
    }
    if h.max_degree() > fam.d {
        return Err(EmbedError::Precondition(format!(
            "target maximum degree {} exceeds d = {}",
            h.max_degree(),
            fam.d
        )));
    }
    if !opts.best_effort {
        let deepest = fam.sets[q - 1].len() as u64;
        if deepest < fam.x || fam.x < 4 * h.n() as u64 {
            return Err(EmbedError::Precondition(format!(
                "need |V_q| >= x >= 4n, have |V_q| = {deepest}, x = {}, n = {}",
                fam.x,
                h.n()
            )));
        }
    }
    let offset = q - parts.len();
    let mut allowed: Vec<&VertexSet> = vec![&fam.sets[0]; h.n()];
    let mut order = Vec::with_capacity(h.n());
    for (j, part) in parts.iter().enumerate().rev() {
        for &v in part {
            allowed[v] = &fam.sets[offset + j];
            order.push(v);
        }
    }
    Search::new(host, h, order, allowed, opts.node_budget).run()
}

/// BFS order over each component, components taken by lowest vertex.
fn connected_order(h: &Graph) -> Vec<usize> {
    let mut seen = vec![false; h.n()];
    let mut order = Vec::with_capacity(h.n());
    let mut queue = VecDeque::new();
    for s in 0..h.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for v in h.neighbors(u).iter() {
                if !std::mem::replace(&mut seen[v], true) {
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

/// `32 Δ eps^(-Δ) n`, the host size that guarantees a bipartite target.
pub fn density_required_order(max_degree: usize, eps: f64, n: usize) -> f64 {
    if max_degree == 0 {
        return n as f64;
    }
    32.0 * max_degree as f64 * eps.powi(-(max_degree as i32)) * n as f64
}

/// Embeds a bipartite `h` into `host` restricted to `domain`.
pub fn density_embed_within<A: Adjacency>(
    host: &A,
    domain: &VertexSet,
    h: &Graph,
    eps: f64,
    opts: &EmbedOptions,
) -> Result<Embedding, EmbedError> {
    if !h.is_bipartite() {
        return Err(EmbedError::Precondition("target is not bipartite".into()));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(EmbedError::Precondition(format!(
            "eps = {eps} not in (0, 1]"
        )));
    }
    let big_n = domain.len();
    let edges = domain
        .iter()
        .map(|v| host.row(v).intersection_len(domain))
        .sum::<usize>()
        / 2;
    let pairs = big_n * big_n.saturating_sub(1) / 2;
    let required = density_required_order(h.max_degree(), eps, h.n());
    let hypotheses_hold = edges as f64 >= eps * pairs as f64 && big_n as f64 >= required;
    if !opts.best_effort && !hypotheses_hold {
        return Err(EmbedError::Precondition(format!(
            "need >= {:.1} edges on N >= {required:.1} vertices, have {edges} edges on N = {big_n}",
            eps * pairs as f64
        )));
    }
    let allowed = vec![domain; h.n()];
    match Search::new(host, h, connected_order(h), allowed, opts.node_budget).run() {
        Err(EmbedError::NotFound) if hypotheses_hold => Err(EmbedError::Defect(format!(
            "N = {big_n}, {edges} edges, target n = {}",
            h.n()
        ))),
        other => other,
    }
}

/// Embeds a bipartite `h` into a host of density at least `eps`.
pub fn density_embed_bipartite<A: Adjacency>(
    host: &A,
    h: &Graph,
    eps: f64,
    opts: &EmbedOptions,
) -> Result<Embedding, EmbedError> {
    density_embed_within(host, &VertexSet::full(host.order()), h, eps, opts)
}

/// Number of injective edge-preserving maps from `h` into `host`.
pub fn count_labeled_copies<A: Adjacency>(host: &A, h: &Graph) -> Result<BigUint, EmbedError> {
    if h.n() > COUNT_MAX_TARGET {
        return Err(EmbedError::CountCapExceeded(h.n()));
    }
    fn go<A: Adjacency>(host: &A, h: &Graph, map: &mut Vec<usize>, total: &mut u64) {
        let w = map.len();
        if w == h.n() {
            *total += 1;
            return;
        }
        for c in 0..host.order() {
            if map.contains(&c) {
                continue;
            }
            if (0..w).all(|u| !h.has_edge(u, w) || host.adjacent(map[u], c)) {
                map.push(c);
                go(host, h, map, total);
                map.pop();
            }
        }
    }
    let mut total = 0u64;
    go(host, h, &mut Vec::with_capacity(h.n()), &mut total);
    Ok(BigUint::from(total))
}
