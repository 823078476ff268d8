//! The two focusing procedures run on a concrete coloring.
//!
//! Bipartite mode only focuses: each step picks the densest color of the
//! current set and shrinks to the color neighborhood of a high-degree
//! vertex. General mode also nests: once a color has supplied its budget of
//! focus vertices it shrinks by dependent random choice instead, building
//! the nested family the residual target is embedded into.

mod trace;

pub use trace::{trace_audit, AuditReport, Mode, NestedTrace, StepKind, TraceParams, Violation};

use crate::bitset::VertexSet;
use crate::bounds::{bip_required_n, gen_required_n, pow_bits, BipParams, GenParams};
use crate::coloring::{ColorClass, EdgeColoring};
use crate::drc::{drc_sample, DrcError, DrcInstance, DrcParams};
use crate::embed::{
    density_embed_within, greedy_nested_embed, EmbedError, EmbedOptions, Embedding, NestedFamily,
    DEFAULT_NODE_BUDGET,
};
use crate::graph::{Adjacency, Graph};
use crate::oracle::has_mono_copy;
use crate::reduction::reduce_max_degree;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub const BIPARTITION_RETRIES: u32 = 200;
pub const PIPELINE_DRC_RETRIES: u32 = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("target must have no isolated vertices (vertex {0} is isolated)")]
    IsolatedVertex(usize),
    #[error("target has no edges")]
    NoEdges,
    #[error("bipartite mode needs a bipartite target")]
    NotBipartite,
    #[error("general mode needs k >= 3 outside best-effort runs, got k = {0}")]
    TooFewColors(usize),
    #[error("host has N = {n} vertices; the guarantee needs N >= {required}")]
    HostTooSmall { n: usize, required: String },
    #[error("embedding map covers {got} of {want} target vertices")]
    IncompleteMap { got: usize, want: usize },
    #[error("color {col} is not below k = {k}")]
    ColorOutOfRange { col: usize, k: usize },
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("internal defect: {0}")]
    Defect(String),
}

#[derive(Debug, Clone, Copy)]
pub struct PipelineConfig {
    pub mode: Mode,
    /// Run on any `N`, treating failure as `NotFound`.
    pub best_effort: bool,
    pub seed: u64,
    pub drc_retry_cap: u32,
    pub bipartition_retries: u32,
    pub node_budget: u64,
    /// On `NotFound`, search exhaustively and label the result.
    pub oracle_fallback: bool,
}

impl PipelineConfig {
    pub fn best_effort(mode: Mode, seed: u64) -> Self {
        Self {
            mode,
            best_effort: true,
            seed,
            drc_retry_cap: PIPELINE_DRC_RETRIES,
            bipartition_retries: BIPARTITION_RETRIES,
            node_budget: DEFAULT_NODE_BUDGET,
            oracle_fallback: false,
        }
    }

    pub fn strict(mode: Mode, seed: u64) -> Self {
        Self {
            best_effort: false,
            ..Self::best_effort(mode, seed)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Built by the focusing procedure.
    Constructive,
    /// Single-edge target.
    Trivial,
    /// The procedure failed; the copy came from exhaustive search.
    OracleFallback,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonoCopy {
    pub color: usize,
    pub embedding: Embedding,
    pub provenance: Provenance,
    pub trace: Option<NestedTrace>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PipelineOutcome {
    Found(MonoCopy),
    NotFound {
        reason: String,
        trace: Option<NestedTrace>,
    },
}

impl PipelineOutcome {
    pub fn found(&self) -> Option<&MonoCopy> {
        match self {
            PipelineOutcome::Found(m) => Some(m),
            PipelineOutcome::NotFound { .. } => None,
        }
    }

    pub fn trace(&self) -> Option<&NestedTrace> {
        match self {
            PipelineOutcome::Found(m) => m.trace.as_ref(),
            PipelineOutcome::NotFound { trace, .. } => trace.as_ref(),
        }
    }
}

/// True iff `e` maps every vertex of `f` and every edge of `f` lands on a
/// pair of color `col`. Injectivity is guaranteed by [`Embedding`].
pub fn verify_mono_copy(
    c: &EdgeColoring,
    f: &Graph,
    col: usize,
    e: &Embedding,
) -> Result<bool, PipelineError> {
    if e.len() != f.n() {
        return Err(PipelineError::IncompleteMap {
            got: e.len(),
            want: f.n(),
        });
    }
    if col >= c.k() {
        return Err(PipelineError::ColorOutOfRange { col, k: c.k() });
    }
    if e.as_slice().iter().any(|&img| img >= c.n()) {
        return Ok(false);
    }
    Ok(f.edges()
        .into_iter()
        .all(|(u, v)| c.color(e.image(u), e.image(v)) == col))
}

/// [`verify_mono_copy`] on a raw map; a non-injective map is an error.
pub fn verify_mono_map(
    c: &EdgeColoring,
    f: &Graph,
    col: usize,
    map: &[usize],
) -> Result<bool, PipelineError> {
    let e = Embedding::new(map.to_vec())?;
    verify_mono_copy(c, f, col, &e)
}

fn check_target(f: &Graph) -> Result<(), PipelineError> {
    if let Some(v) = (0..f.n()).find(|&v| f.degree(v) == 0) {
        return Err(PipelineError::IsolatedVertex(v));
    }
    if f.m() == 0 {
        return Err(PipelineError::NoEdges);
    }
    Ok(())
}

/// Compares `N` with a required size given in log2 first, materializing the
/// exact value only when it is within reach.
fn check_host_size(
    n: usize,
    required_log2: f64,
    exact: impl FnOnce() -> BigUint,
) -> Result<(), PipelineError> {
    if required_log2 > 64.0 {
        return Err(PipelineError::HostTooSmall {
            n,
            required: format!("2^{required_log2:.3}"),
        });
    }
    let required = exact();
    if BigUint::from(n) < required {
        return Err(PipelineError::HostTooSmall {
            n,
            required: required.to_string(),
        });
    }
    Ok(())
}

fn single_edge(c: &EdgeColoring, f: &Graph) -> Option<MonoCopy> {
    if f.n() != 2 || f.m() != 1 || c.n() < 2 {
        return None;
    }
    Some(MonoCopy {
        color: c.color(0, 1),
        embedding: Embedding::new(vec![0, 1]).expect("distinct"),
        provenance: Provenance::Trivial,
        trace: None,
    })
}

/// Vertex of `s` with the most `col`-neighbors in `s`, lowest index on ties.
fn focus_vertex(c: &EdgeColoring, col: usize, s: &VertexSet) -> usize {
    let mut best = (0, usize::MAX);
    for v in s.iter() {
        let deg = c.color_degree(v, col, s);
        if best.1 == usize::MAX || deg > best.0 {
            best = (deg, v);
        }
    }
    best.1
}

/// Maps `u_vertices[i]` to `anchors[i]` and the remaining vertices of `f`
/// through `rest_emb` (indexed by position in `rest`).
fn assemble(
    f: &Graph,
    u_vertices: &[usize],
    anchors: &[usize],
    rest: &[usize],
    rest_emb: &Embedding,
) -> Result<Embedding, EmbedError> {
    let mut map = vec![usize::MAX; f.n()];
    for (&u, &a) in u_vertices.iter().zip(anchors) {
        map[u] = a;
    }
    for (i, &v) in rest.iter().enumerate() {
        map[v] = rest_emb.image(i);
    }
    Embedding::new(map)
}

enum Stage {
    Done(Embedding, usize),
    Fail(String),
}

fn finish(
    c: &EdgeColoring,
    f: &Graph,
    cfg: &PipelineConfig,
    stage: Stage,
    trace: NestedTrace,
) -> Result<PipelineOutcome, PipelineError> {
    match stage {
        Stage::Done(e, col) => {
            if !verify_mono_copy(c, f, col, &e)? {
                return Err(PipelineError::Defect(format!(
                    "constructed map {:?} is not monochromatic in color {col}",
                    e.as_slice()
                )));
            }
            Ok(PipelineOutcome::Found(MonoCopy {
                color: col,
                embedding: e,
                provenance: Provenance::Constructive,
                trace: Some(trace),
            }))
        }
        Stage::Fail(reason) => {
            if cfg.oracle_fallback {
                if let Some((col, e)) = has_mono_copy(c, f) {
                    return Ok(PipelineOutcome::Found(MonoCopy {
                        color: col,
                        embedding: e,
                        provenance: Provenance::OracleFallback,
                        trace: Some(trace),
                    }));
                }
            }
            Ok(PipelineOutcome::NotFound {
                reason,
                trace: Some(trace),
            })
        }
    }
}

fn embed_failure(e: EmbedError) -> Result<String, PipelineError> {
    match e {
        EmbedError::Defect(_) => Err(e.into()),
        other => Ok(format!("residual embedding failed: {other}")),
    }
}

/// Focusing only, for bipartite targets.
pub fn find_mono_bipartite(
    c: &EdgeColoring,
    f: &Graph,
    cfg: &PipelineConfig,
) -> Result<PipelineOutcome, PipelineError> {
    check_target(f)?;
    if !f.is_bipartite() {
        return Err(PipelineError::NotBipartite);
    }
    let (m, k) = (f.m() as u64, c.k() as u64);
    // A single edge needs no host-size guarantee.
    if let Some(copy) = single_edge(c, f) {
        return Ok(PipelineOutcome::Found(copy));
    }
    let p = BipParams::new(m, k);
    if !cfg.best_effort {
        let log2 = 5.0
            + (p.d_int as f64).log2()
            + pow_bits(k, p.d_int + k * p.t)
            + ((2 * m) as f64).log2();
        check_host_size(c.n(), log2, || bip_required_n(m, k, &p))?;
    }
    let (d, t) = (p.d_int as usize, p.t as usize);
    let params = TraceParams {
        mode: Mode::Bipartite,
        k: c.k(),
        d,
        limit: t,
    };
    let red = reduce_max_degree(f, d).map_err(|e| PipelineError::Defect(e.to_string()))?;
    let mut trace = NestedTrace::start(params, c.full_set());
    let stage = loop {
        let a = trace.current().clone();
        let col = match c.densest_color(&a) {
            Ok((col, _)) => col,
            Err(e) => break Stage::Fail(format!("focusing ran out of vertices: {e}")),
        };
        if trace.focus_count(col) >= t {
            trace.stop_color = Some(col);
            let anchors = trace.focus_vertices_of(col);
            let rest: Vec<usize> = (0..f.n()).filter(|v| !red.u_vertices.contains(v)).collect();
            let (residual, _) = red.residual.induced(&rest);
            let opts = EmbedOptions {
                node_budget: cfg.node_budget,
                best_effort: cfg.best_effort,
            };
            let eps = 1.0 / c.k() as f64;
            break match density_embed_within(&c.class(col), &a, &residual, eps, &opts) {
                Ok(e) => Stage::Done(assemble(f, &red.u_vertices, &anchors, &rest, &e)?, col),
                Err(e) => Stage::Fail(embed_failure(e)?),
            };
        }
        let v = focus_vertex(c, col, &a);
        let next = c
            .color_neighborhood(v, col, &a)
            .expect("focus vertex lies in the set");
        trace.push(col, StepKind::Focus, Some(v), next);
    };
    finish(c, f, cfg, stage, trace)
}

/// Number of `col` edges between `s1` and `s2`.
fn crossing(class: &ColorClass<'_>, s1: &VertexSet, s2: &VertexSet) -> usize {
    s1.iter().map(|v| class.row(v).intersection_len(s2)).sum()
}

/// A split of `a` into `floor(|a|/2)` and `ceil(|a|/2)` vertices with at
/// least `|A1||A2|/k` crossing edges of the class, if one is found.
fn balanced_bipartition(
    class: &ColorClass<'_>,
    a: &VertexSet,
    k: usize,
    retries: u32,
    rng: &mut ChaCha8Rng,
) -> Option<(VertexSet, VertexSet)> {
    let mut members = a.to_vec();
    let half = members.len() / 2;
    let target = half * (members.len() - half);
    let n = a.universe();
    let split = |order: &[usize]| {
        (
            VertexSet::from_members(n, order[..half].iter().copied()).expect("in range"),
            VertexSet::from_members(n, order[half..].iter().copied()).expect("in range"),
        )
    };
    let mut best: Option<(usize, VertexSet, VertexSet)> = None;
    for _ in 0..retries.max(1) {
        members.shuffle(rng);
        let (s1, s2) = split(&members);
        let cross = crossing(class, &s1, &s2);
        if k * cross >= target {
            return Some((s1, s2));
        }
        if best.as_ref().is_none_or(|b| cross > b.0) {
            best = Some((cross, s1, s2));
        }
    }
    // Deterministic fallback: best improving swap until the threshold is met.
    let (mut cross, mut s1, mut s2) = best.expect("at least one sample");
    loop {
        let mut best_swap: Option<(isize, usize, usize)> = None;
        for u in s1.iter() {
            let gain_u = class.row(u).intersection_len(&s1) as isize
                - class.row(u).intersection_len(&s2) as isize;
            for w in s2.iter() {
                let gain_w = class.row(w).intersection_len(&s2) as isize
                    - class.row(w).intersection_len(&s1) as isize;
                let gain = gain_u + gain_w + if class.adjacent(u, w) { 2 } else { 0 };
                if gain > 0 && best_swap.is_none_or(|b| gain > b.0) {
                    best_swap = Some((gain, u, w));
                }
            }
        }
        let (gain, u, w) = best_swap?;
        s1.remove(u);
        s1.insert(w);
        s2.remove(w);
        s2.insert(u);
        cross = (cross as isize + gain) as usize;
        if k * cross >= target {
            return Some((s1, s2));
        }
    }
}

/// Focusing and nesting, for any target.
pub fn find_mono_general(
    c: &EdgeColoring,
    f: &Graph,
    cfg: &PipelineConfig,
) -> Result<PipelineOutcome, PipelineError> {
    check_target(f)?;
    let (m, k) = (f.m() as u64, c.k() as u64);
    if let Some(copy) = single_edge(c, f) {
        return Ok(PipelineOutcome::Found(copy));
    }
    let p = GenParams::new(m);
    if !cfg.best_effort {
        if k < 3 {
            return Err(PipelineError::TooFewColors(c.k()));
        }
        let log2 = pow_bits(k, p.exponent_int(k)) + ((8 * m) as f64).log2();
        check_host_size(c.n(), log2, || gen_required_n(m, k, &p))?;
    }
    let (d, ell) = (p.d_int as usize, p.ell as usize);
    // x = k^-(exponent) N, at least 1.
    let x = {
        let scale = pow_bits(k, p.exponent_int(k));
        if scale >= 64.0 {
            1
        } else {
            ((c.n() as u64) / (k.pow(p.exponent_int(k) as u32))).max(1)
        }
    };
    let params = TraceParams {
        mode: Mode::General,
        k: c.k(),
        d,
        limit: ell,
    };
    let red = reduce_max_degree(f, d).map_err(|e| PipelineError::Defect(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut trace = NestedTrace::start(params, c.full_set());
    let stage = loop {
        let a = trace.current().clone();
        let col = match c.densest_color(&a) {
            Ok((col, _)) => col,
            Err(e) => break Stage::Fail(format!("set shrank below two vertices: {e}")),
        };
        if trace.focus_count(col) < ell {
            let v = focus_vertex(c, col, &a);
            let next = c
                .color_neighborhood(v, col, &a)
                .expect("focus vertex lies in the set");
            trace.push(col, StepKind::Focus, Some(v), next);
            continue;
        }
        let class = c.class(col);
        let Some((a1, a2)) =
            balanced_bipartition(&class, &a, c.k(), cfg.bipartition_retries, &mut rng)
        else {
            break Stage::Fail(format!(
                "no balanced bipartition of a {}-set reached the crossing density",
                a.len()
            ));
        };
        let dp = DrcParams {
            a: 1,
            d: d as u32,
            t: 2 * d as u32,
            x,
            eps: 1.0 / k as f64,
            n: a2.len() as u64,
        };
        let inst = DrcInstance {
            adj: &class,
            side1: &a1,
            side2: &a2,
        };
        let next = match drc_sample(&inst, &dp, &mut rng, cfg.drc_retry_cap) {
            Ok(out) => out.a_set,
            Err(DrcError::RetriesExhausted { best, .. })
                if cfg.best_effort && best.size_ok() && !best.a_set.is_empty() =>
            {
                best.a_set
            }
            Err(e) => break Stage::Fail(format!("nesting step failed: {e}")),
        };
        trace.push(col, StepKind::Nest, None, next);
        if trace.saturation[col] < ell + d {
            continue;
        }
        trace.stop_color = Some(col);
        let anchors = trace.focus_vertices_of(col);
        let mut sets = trace.nest_sets_of(col);
        sets.push(trace.current().clone());
        let rest: Vec<usize> = (0..f.n()).filter(|v| !red.u_vertices.contains(v)).collect();
        let (residual, _) = red.residual.induced(&rest);
        let parts = residual.greedy_color_partition();
        let fam = NestedFamily::new(sets, x, d)?;
        let opts = EmbedOptions {
            node_budget: cfg.node_budget,
            best_effort: cfg.best_effort,
        };
        break match greedy_nested_embed(&class, &fam, &residual, &parts, &opts) {
            Ok(e) => Stage::Done(assemble(f, &red.u_vertices, &anchors, &rest, &e)?, col),
            Err(e) => Stage::Fail(embed_failure(e)?),
        };
    };
    finish(c, f, cfg, stage, trace)
}

/// Runs the procedure selected by `cfg.mode`.
pub fn find_mono(
    c: &EdgeColoring,
    f: &Graph,
    cfg: &PipelineConfig,
) -> Result<PipelineOutcome, PipelineError> {
    match cfg.mode {
        Mode::Bipartite => find_mono_bipartite(c, f, cfg),
        Mode::General => find_mono_general(c, f, cfg),
    }
}
