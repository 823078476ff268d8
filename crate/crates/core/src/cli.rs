//! Command-line front end. Every command prints one JSON run record on
//! stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 a search came back empty (not found, cap or
//! budget reached, verification false), 2 usage or precondition errors.

use crate::bitset::VertexSet;
use crate::bounds::{bip_bound, gen_bound};
use crate::coloring::EdgeColoring;
use crate::drc::{drc_select, BipartiteGraph, DrcError, DrcParams, DEFAULT_RETRY_CAP};
use crate::embed::{
    check_embedding, density_embed_bipartite, greedy_nested_embed, EmbedError, EmbedOptions,
    NestedFamily, DEFAULT_NODE_BUDGET,
};
use crate::graph::Graph;
use crate::io::{parse_coloring, parse_graph, ColoringJson, GraphJson};
use crate::oracle::{exact_ramsey, OracleError, RamseyConfig, DEFAULT_BUDGET};
use crate::pipeline::{
    find_mono, trace_audit, verify_mono_map, Mode, PipelineConfig, PipelineOutcome,
};
use crate::reduction::reduce_max_degree;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Overrides the exhaustive-search budget (visited partial colorings).
pub const BUDGET_ENV: &str = "MULTIRAMSEY_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "multiramsey",
    version,
    about = "Monochromatic subgraphs in edge-colored complete graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the bipartite or general upper bound for m edges and k colors.
    Bound(BoundArgs),
    /// Delete max-degree vertices until the maximum degree is at most d.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Dependent random choice on a bipartite graph with sides 0..N and N..2N.
    Drc(DrcArgs),
    /// Embed a target into a host graph.
    Embed(EmbedArgs),
    /// Run the focusing procedure on a coloring.
    FindMono(FindMonoArgs),
    /// Compute an exact small Ramsey number by exhaustive search.
    Exact {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Check that a vertex map is a monochromatic copy.
    Verify {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        color: usize,
        /// Comma-separated images of target vertices 0, 1, ...
        #[arg(long, value_delimiter = ',')]
        map: Vec<usize>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "kind")]
struct BoundKind {
    #[arg(long)]
    bip: bool,
    #[arg(long)]
    gen: bool,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    kind: BoundKind,
    m: u64,
    k: u64,
    /// Print the JSON run record instead of a text summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct DrcArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 1)]
    a: u32,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    t: u32,
    #[arg(long)]
    x: u64,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_RETRY_CAP)]
    retries: u32,
}

#[derive(Args, Debug)]
struct EmbedArgs {
    #[arg(long)]
    host: PathBuf,
    #[arg(long)]
    target: PathBuf,
    /// Nested family JSON: {"sets": [[..], ..], "x": .., "d": ..}.
    #[arg(long)]
    nested: Option<PathBuf>,
    /// Density floor for the dense embedder; defaults to the host's density.
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    best_effort: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Bip,
    Gen,
}

#[derive(Args, Debug)]
struct FindMonoArgs {
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long)]
    target: PathBuf,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    best_effort: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fall back to exhaustive search when the procedure fails.
    #[arg(long)]
    oracle_fallback: bool,
    /// Write the trace and its audit to this file.
    #[arg(long)]
    emit_trace: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct WallTime {
    seconds: f64,
}

#[derive(Debug, Serialize)]
struct RunRecord {
    command: &'static str,
    inputs: Value,
    seed: Option<u64>,
    outcome: Value,
    wall_time: WallTime,
}

/// What a run produced: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Precondition(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Precondition(e.to_string())
    }
}

struct Success {
    command: &'static str,
    inputs: Value,
    seed: Option<u64>,
    outcome: Value,
    /// Exit 1 when set.
    empty: bool,
    /// Printed instead of the JSON record.
    text: Option<String>,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Precondition(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::Precondition(format!("{}: {e}", path.display())))
}

fn load_coloring(path: &Path) -> Result<EdgeColoring, Failure> {
    parse_coloring(&read(path)?)
        .map_err(|e| Failure::Precondition(format!("{}: {e}", path.display())))
}

fn budget_from_env() -> Result<u64, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "{BUDGET_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload serializes")
}

fn ok(
    command: &'static str,
    inputs: Value,
    seed: Option<u64>,
    outcome: Value,
    empty: bool,
) -> Result<Success, Failure> {
    Ok(Success {
        command,
        inputs,
        seed,
        outcome,
        empty,
        text: None,
    })
}

fn run_bound(args: BoundArgs) -> Result<Success, Failure> {
    let (m, k) = (args.m, args.k);
    let (kind, report, text) = if args.kind.bip {
        let r = bip_bound(m, k)?;
        let text = format!(
            "bipartite bound, m = {m}, k = {k}\n  d = {:.4} (integer {}), t = {}\n  log2 N (proof form) = {:.4}\n  log2 N (integer form) = {:.4}\n  log2 N (closed form) = {:.4}\n",
            r.d_real, r.d_int, r.t, r.log2_n, r.log2_n_int, r.closed_form_log2
        );
        ("bip", to_value(&r), text)
    } else {
        let r = gen_bound(m, k)?;
        let text = format!(
            "general bound, m = {m}, k = {k}\n  d = {:.4} (integer {}), l = {}, x = {}\n  log_{k} N = {:.4} (theorem exponent {:.4})\n  log_{k} N (integer form) = {:.4}\n  corollary exponent = {:.4}\n",
            r.d_real, r.d_int, r.ell, r.x_exact, r.log_k_n, r.theorem_exponent, r.log_k_n_int, r.corollary_exponent
        );
        ("gen", to_value(&r), text)
    };
    let mut s = ok(
        "bound",
        json!({"kind": kind, "m": m, "k": k}),
        None,
        report,
        false,
    )?;
    if !args.json {
        s.text = Some(text);
    }
    Ok(s)
}

fn run_reduce(graph: &Path, d: usize) -> Result<Success, Failure> {
    let f = load_graph(graph)?;
    let r = reduce_max_degree(&f, d)?;
    let outcome = json!({
        "reduction": r.to_json(),
        "residual_max_degree": r.residual.max_degree(),
        "u_size": r.u_vertices.len(),
    });
    ok(
        "reduce",
        json!({"graph": GraphJson::from(&f), "d": d}),
        None,
        outcome,
        false,
    )
}

fn run_drc(a: DrcArgs) -> Result<Success, Failure> {
    let g = load_graph(&a.graph)?;
    if g.n() % 2 != 0 {
        return Err(Failure::Precondition(format!(
            "bipartite input needs 2N vertices (sides 0..N and N..2N), got {}",
            g.n()
        )));
    }
    let side = g.n() / 2;
    let bg = BipartiteGraph::new(g.clone(), side)?;
    let p = DrcParams {
        a: a.a,
        d: a.d,
        t: a.t,
        x: a.x,
        eps: a.eps,
        n: side as u64,
    };
    let inputs = json!({"graph": GraphJson::from(&g), "params": p, "retries": a.retries});
    match drc_select(&bg, &p, a.seed, a.retries) {
        Ok(out) => ok(
            "drc",
            inputs,
            Some(a.seed),
            json!({"status": "succeeded", "result": out}),
            false,
        ),
        Err(DrcError::RetriesExhausted { retry_cap, best }) => ok(
            "drc",
            inputs,
            Some(a.seed),
            json!({"status": "retries_exhausted", "retry_cap": retry_cap, "best": best}),
            true,
        ),
        Err(e) => Err(e.into()),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    sets: Vec<Vec<usize>>,
    x: u64,
    d: usize,
}

fn run_embed(a: EmbedArgs) -> Result<Success, Failure> {
    let host = load_graph(&a.host)?;
    let h = load_graph(&a.target)?;
    let opts = EmbedOptions {
        node_budget: DEFAULT_NODE_BUDGET,
        best_effort: a.best_effort,
    };
    let mut inputs = json!({
        "host": GraphJson::from(&host),
        "target": GraphJson::from(&h),
        "best_effort": a.best_effort,
    });
    let result = if let Some(path) = &a.nested {
        let fam: FamilyJson = serde_json::from_str(&read(path)?)
            .map_err(|e| Failure::Precondition(format!("{}: {e}", path.display())))?;
        let sets = fam
            .sets
            .iter()
            .map(|s| {
                VertexSet::from_members(host.n(), s.iter().copied()).ok_or_else(|| {
                    Failure::Precondition(format!(
                        "nested set member out of range for N = {}",
                        host.n()
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        inputs["nested"] = json!({"sets": fam.sets, "x": fam.x, "d": fam.d});
        let family = NestedFamily::new(sets, fam.x, fam.d)?;
        let parts = h.greedy_color_partition();
        greedy_nested_embed(&host, &family, &h, &parts, &opts)
    } else {
        let pairs = host.n() * host.n().saturating_sub(1) / 2;
        let eps = a.eps.unwrap_or(if pairs == 0 {
            1.0
        } else {
            host.m() as f64 / pairs as f64
        });
        inputs["eps"] = json!(eps);
        density_embed_bipartite(&host, &h, eps, &opts)
    };
    match result {
        Ok(e) => {
            let verified = check_embedding(&host, &h, &e);
            ok(
                "embed",
                inputs,
                None,
                json!({"status": "found", "embedding": e, "verified": verified}),
                false,
            )
        }
        Err(e @ (EmbedError::NotFound | EmbedError::BudgetExceeded(_))) => ok(
            "embed",
            inputs,
            None,
            json!({"status": "not_found", "reason": e.to_string()}),
            true,
        ),
        Err(e) => Err(e.into()),
    }
}

fn run_find_mono(a: FindMonoArgs) -> Result<Success, Failure> {
    let f = load_graph(&a.target)?;
    let c = load_coloring(&a.coloring)?;
    let mode = match a.mode {
        ModeArg::Bip => Mode::Bipartite,
        ModeArg::Gen => Mode::General,
    };
    let mut cfg = if a.best_effort {
        PipelineConfig::best_effort(mode, a.seed)
    } else {
        PipelineConfig::strict(mode, a.seed)
    };
    cfg.oracle_fallback = a.oracle_fallback;
    let out = find_mono(&c, &f, &cfg)?;
    let audit = out.trace().map(|tr| trace_audit(tr, &c, &tr.params));
    if let (Some(path), Some(tr)) = (&a.emit_trace, out.trace()) {
        let body = serde_json::to_string_pretty(&json!({"trace": tr, "audit": audit}))
            .expect("trace serializes");
        std::fs::write(path, body)
            .map_err(|e| Failure::Precondition(format!("{}: {e}", path.display())))?;
    }
    let empty = matches!(out, PipelineOutcome::NotFound { .. });
    let inputs = json!({
        "coloring": ColoringJson::from(&c),
        "target": GraphJson::from(&f),
        "mode": mode,
        "best_effort": a.best_effort,
        "oracle_fallback": a.oracle_fallback,
    });
    ok(
        "find-mono",
        inputs,
        Some(a.seed),
        json!({"result": out, "audit": audit}),
        empty,
    )
}

fn run_exact(target: &Path, k: usize, nmax: usize, threads: usize) -> Result<Success, Failure> {
    let f = load_graph(target)?;
    let cfg = RamseyConfig {
        budget: budget_from_env()?,
        threads: threads.max(1),
        ..Default::default()
    };
    let inputs = json!({"target": GraphJson::from(&f), "k": k, "nmax": nmax, "budget": cfg.budget});
    match exact_ramsey(k, &f, nmax, &cfg) {
        Ok(cert) => ok(
            "exact",
            inputs,
            None,
            json!({"status": "exact", "certificate": cert.to_json()}),
            false,
        ),
        Err(OracleError::ExceedsCap {
            n_max,
            best_witness,
        }) => ok(
            "exact",
            inputs,
            None,
            json!({
                "status": "exceeds_cap",
                "n_max": n_max,
                "best_witness": ColoringJson::from(best_witness.as_ref()),
            }),
            true,
        ),
        Err(OracleError::BudgetExceeded {
            visited,
            depth,
            edges,
        }) => ok(
            "exact",
            inputs,
            None,
            json!({
                "status": "budget_exceeded",
                "visited": visited,
                "frontier_depth": depth,
                "edges": edges,
            }),
            true,
        ),
        Err(e) => Err(e.into()),
    }
}

fn run_verify(
    coloring: &Path,
    target: &Path,
    color: usize,
    map: &[usize],
) -> Result<Success, Failure> {
    let c = load_coloring(coloring)?;
    let f = load_graph(target)?;
    let valid = verify_mono_map(&c, &f, color, map)?;
    let inputs = json!({"coloring": ColoringJson::from(&c), "target": GraphJson::from(&f), "color": color, "map": map});
    ok("verify", inputs, None, json!({"valid": valid}), !valid)
}

fn execute(cli: Cli) -> Result<Success, Failure> {
    match cli.command {
        Command::Bound(a) => run_bound(a),
        Command::Reduce { graph, d } => run_reduce(&graph, d),
        Command::Drc(a) => run_drc(a),
        Command::Embed(a) => run_embed(a),
        Command::FindMono(a) => run_find_mono(a),
        Command::Exact {
            target,
            k,
            nmax,
            threads,
        } => run_exact(&target, k, nmax, threads),
        Command::Verify {
            coloring,
            target,
            color,
            map,
        } => run_verify(&coloring, &target, color, &map),
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let start = Instant::now();
    match execute(cli) {
        Ok(s) => {
            let record = RunRecord {
                command: s.command,
                inputs: s.inputs,
                seed: s.seed,
                outcome: s.outcome,
                wall_time: WallTime {
                    seconds: start.elapsed().as_secs_f64(),
                },
            };
            let stdout = match s.text {
                Some(text) => text,
                None => serde_json::to_string(&record).expect("record serializes") + "\n",
            };
            CliOutput {
                code: if s.empty { 1 } else { 0 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Usage(msg)) | Err(Failure::Precondition(msg)) => CliOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}
