use crate::bitset::VertexSet;
use crate::coloring::EdgeColoring;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Bipartite,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Focus,
    Nest,
}

/// Parameters a trace is audited against. `limit` is the focus budget per
/// color: `t` in bipartite mode, `l` in general mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceParams {
    pub mode: Mode,
    pub k: usize,
    pub d: usize,
    pub limit: usize,
}

/// The chain `A_1 ⊇ A_2 ⊇ ..` built by a pipeline run. Step `i` takes
/// `sets[i]` to `sets[i + 1]` in color `colors[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NestedTrace {
    pub params: TraceParams,
    pub sets: Vec<VertexSet>,
    pub colors: Vec<usize>,
    pub kinds: Vec<StepKind>,
    /// `Some(v_i)` on focus steps.
    pub focus_vertices: Vec<Option<usize>>,
    /// Occurrences of each color among the recorded steps.
    pub saturation: Vec<usize>,
    /// The color whose occurrences ended the run, if it ended that way.
    pub stop_color: Option<usize>,
}

impl NestedTrace {
    pub(crate) fn start(params: TraceParams, a1: VertexSet) -> Self {
        Self {
            params,
            sets: vec![a1],
            colors: Vec::new(),
            kinds: Vec::new(),
            focus_vertices: Vec::new(),
            saturation: vec![0; params.k],
            stop_color: None,
        }
    }

    pub(crate) fn push(
        &mut self,
        color: usize,
        kind: StepKind,
        focus: Option<usize>,
        next: VertexSet,
    ) {
        self.colors.push(color);
        self.kinds.push(kind);
        self.focus_vertices.push(focus);
        self.saturation[color] += 1;
        self.sets.push(next);
    }

    pub fn current(&self) -> &VertexSet {
        self.sets.last().expect("a trace always holds A_1")
    }

    /// Number of recorded steps `s`.
    pub fn steps(&self) -> usize {
        self.colors.len()
    }

    pub fn focus_count(&self, color: usize) -> usize {
        self.colors
            .iter()
            .zip(&self.kinds)
            .filter(|&(&c, &kind)| c == color && kind == StepKind::Focus)
            .count()
    }

    /// Focus vertices of `color`, in step order.
    pub fn focus_vertices_of(&self, color: usize) -> Vec<usize> {
        self.colors
            .iter()
            .zip(&self.focus_vertices)
            .filter(|&(&c, _)| c == color)
            .filter_map(|(_, v)| *v)
            .collect()
    }

    /// `A_i` at each nesting step of `color`, in step order.
    pub fn nest_sets_of(&self, color: usize) -> Vec<VertexSet> {
        (0..self.steps())
            .filter(|&i| self.colors[i] == color && self.kinds[i] == StepKind::Nest)
            .map(|i| self.sets[i].clone())
            .collect()
    }

    /// Largest step count the construction allows: `k l + k (d - 1) + 1`
    /// in general mode, `k t + 1` focus steps in bipartite mode.
    pub fn length_bound(&self) -> usize {
        let TraceParams { mode, k, d, limit } = self.params;
        match mode {
            Mode::General => k * limit + k * d.saturating_sub(1) + 1,
            Mode::Bipartite => k * limit + 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Violation {
    Containment {
        step: usize,
    },
    ShapeMismatch {
        detail: String,
    },
    FocusVertexOutside {
        step: usize,
        vertex: usize,
    },
    FocusNotNeighborhood {
        step: usize,
    },
    FocusShrinkage {
        step: usize,
        before: usize,
        after: usize,
    },
    NestShrinkage {
        step: usize,
        before: usize,
        after: usize,
    },
    NotDensest {
        step: usize,
        color: usize,
    },
    NestBeforeSaturation {
        step: usize,
        color: usize,
        focus_so_far: usize,
    },
    FocusAfterSaturation {
        step: usize,
        color: usize,
    },
    NestInBipartiteMode {
        step: usize,
    },
    Length {
        steps: usize,
        bound: usize,
    },
    SaturationCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub steps: usize,
    pub length_bound: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-checks every structural property of `tr` against `c`. Violations are
/// collected, never thrown.
pub fn trace_audit(tr: &NestedTrace, c: &EdgeColoring, params: &TraceParams) -> AuditReport {
    let mut v = Vec::new();
    let mut notes = Vec::new();
    let s = tr.colors.len();
    if tr.kinds.len() != s || tr.focus_vertices.len() != s || tr.sets.len() != s + 1 {
        v.push(Violation::ShapeMismatch {
            detail: format!(
                "{} sets, {} colors, {} kinds, {} focus entries",
                tr.sets.len(),
                s,
                tr.kinds.len(),
                tr.focus_vertices.len()
            ),
        });
        return AuditReport {
            steps: s,
            length_bound: tr.length_bound(),
            violations: v,
            notes,
        };
    }
    let k = params.k;
    let nest_factor = BigUint::from(k).pow(2 * params.d as u32 + 2);
    let mut focus_seen = vec![0usize; k.max(c.k())];
    let mut occurrences = vec![0usize; k.max(c.k())];
    for i in 0..s {
        let (a, next, col) = (&tr.sets[i], &tr.sets[i + 1], tr.colors[i]);
        if col >= c.k() || a.universe() != c.n() || next.universe() != c.n() {
            v.push(Violation::ShapeMismatch {
                detail: format!("step {i} does not fit a {}-coloring of K_{}", c.k(), c.n()),
            });
            continue;
        }
        if !next.is_subset(a) {
            v.push(Violation::Containment { step: i });
        }
        if a.len() >= 2 {
            let counts = c.color_counts(a);
            if counts[col] < counts.iter().copied().max().unwrap_or(0) {
                v.push(Violation::NotDensest {
                    step: i,
                    color: col,
                });
            }
        }
        match tr.kinds[i] {
            StepKind::Focus => {
                if focus_seen[col] >= params.limit {
                    v.push(Violation::FocusAfterSaturation {
                        step: i,
                        color: col,
                    });
                }
                focus_seen[col] += 1;
                match tr.focus_vertices[i] {
                    Some(fv) if fv < a.universe() && a.contains(fv) => {
                        let nbhd = c
                            .color_neighborhood(fv, col, a)
                            .expect("vertex is in the set");
                        if !next.is_subset(&nbhd) {
                            v.push(Violation::FocusNotNeighborhood { step: i });
                        }
                    }
                    Some(fv) => v.push(Violation::FocusVertexOutside {
                        step: i,
                        vertex: fv,
                    }),
                    None => v.push(Violation::ShapeMismatch {
                        detail: format!("focus step {i} has no focus vertex"),
                    }),
                }
                if k * next.len() + 1 < a.len() {
                    v.push(Violation::FocusShrinkage {
                        step: i,
                        before: a.len(),
                        after: next.len(),
                    });
                }
            }
            StepKind::Nest => {
                if params.mode == Mode::Bipartite {
                    v.push(Violation::NestInBipartiteMode { step: i });
                }
                if focus_seen[col] < params.limit {
                    v.push(Violation::NestBeforeSaturation {
                        step: i,
                        color: col,
                        focus_so_far: focus_seen[col],
                    });
                }
                if &nest_factor * BigUint::from(next.len()) < BigUint::from(a.len()) {
                    v.push(Violation::NestShrinkage {
                        step: i,
                        before: a.len(),
                        after: next.len(),
                    });
                }
            }
        }
        occurrences[col] += 1;
    }
    if tr.saturation.len() != c.k() || occurrences[..c.k()] != tr.saturation[..] {
        v.push(Violation::SaturationCounts);
    }
    let focus_steps = tr.kinds.iter().filter(|&&kd| kd == StepKind::Focus).count();
    let (measured, bound) = match params.mode {
        Mode::General => (
            s,
            params.k * params.limit + params.k * params.d.saturating_sub(1) + 1,
        ),
        Mode::Bipartite => (focus_steps, params.k * params.limit + 1),
    };
    if measured > bound {
        v.push(Violation::Length {
            steps: measured,
            bound,
        });
    }
    if params.mode == Mode::General {
        notes.push(
            "length bound k*l + k*(d-1) + 1 reads the per-color focus budget as l, not t".into(),
        );
    }
    AuditReport {
        steps: s,
        length_bound: bound,
        violations: v,
        notes,
    }
}
