//! WebAssembly bindings for the browser demo. Every export takes plain
//! numbers or strings and returns a JSON string; errors become JS exceptions.

use multiramsey::bounds::{bip_bound, gen_bound, trivial_bound};
use multiramsey::io::{parse_graph, GraphJson};
use multiramsey::oracle::{has_mono_copy, random_coloring};
use multiramsey::pipeline::{find_mono, trace_audit, Mode, PipelineConfig};
use multiramsey::reduction::reduce_max_degree;
use multiramsey::Graph;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest host the page will color; the canvas gets crowded beyond this.
pub const MAX_HOST: usize = 60;

/// Reads `K5`, `C6`, `P4`, `S3` (a star with 3 leaves), `M2` (a matching),
/// `K2,3`, or any edge-list JSON / graph6 string.
pub fn parse_target(text: &str) -> Result<Graph, String> {
    let s = text.trim();
    let (head, rest) = s.split_at(s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len()));
    let num = |t: &str| t.parse::<usize>().map_err(|_| format!("bad size in {s:?}"));
    match head {
        "K" if rest.contains(',') => {
            let (a, b) = rest.split_once(',').unwrap();
            Ok(Graph::complete_bipartite(num(a)?, num(b)?))
        }
        "K" => Ok(Graph::complete(num(rest)?)),
        "C" if num(rest)? >= 3 => Ok(Graph::cycle(num(rest)?)),
        "P" => Ok(Graph::path(num(rest)?)),
        "S" => Ok(Graph::star(num(rest)?)),
        "M" => Ok(Graph::matching(num(rest)?)),
        _ => parse_graph(s).map_err(|e| e.to_string()),
    }
}

/// Upper bounds for `m` edges and `k` colors, all as base-2 logarithms.
pub fn bounds_json(m: u64, k: u64) -> Result<Value, String> {
    let bip = bip_bound(m, k).map_err(|e| e.to_string())?;
    let general = gen_bound(m, k).ok().map(|g| {
        let lg = (k as f64).log2();
        json!({
            "d": g.d_int,
            "l": g.ell,
            "theorem_log2": g.log_k_n * lg,
            "corollary_log2": (g.corollary_exponent + (8.0 * m as f64).log(k as f64)) * lg,
        })
    });
    // A graph with m edges and no isolated vertices has at most 2m vertices.
    let trivial = trivial_bound(2 * m, k).map_err(|e| e.to_string())? as f64 * (k as f64).log2();
    Ok(json!({
        "m": m,
        "k": k,
        "bipartite": {
            "d": bip.d_int,
            "t": bip.t,
            "log2": bip.log2_n,
            "closed_form_log2": bip.closed_form_log2,
        },
        "general": general,
        "trivial_log2": trivial,
    }))
}

/// Colors `K_n` at random and runs the focusing procedure for `target`.
pub fn find_mono_json(
    n: usize,
    k: usize,
    target: &str,
    seed: u64,
    general: bool,
) -> Result<Value, String> {
    if n > MAX_HOST {
        return Err(format!(
            "host has {n} vertices; the demo allows at most {MAX_HOST}"
        ));
    }
    let f = parse_target(target)?;
    let c = random_coloring(n, k, seed).map_err(|e| e.to_string())?;
    let mode = if general {
        Mode::General
    } else {
        Mode::Bipartite
    };
    let cfg = PipelineConfig::best_effort(mode, seed);
    let out = find_mono(&c, &f, &cfg).map_err(|e| e.to_string())?;
    let audit = out.trace().map(|tr| trace_audit(tr, &c, &tr.params));
    let exists = has_mono_copy(&c, &f).is_some();
    Ok(json!({
        "n": n,
        "k": k,
        "target": GraphJson::from(&f),
        "colors": c.triples().into_iter().map(|(u, v, col)| [u, v, col]).collect::<Vec<_>>(),
        "result": out,
        "audit": audit,
        "copy_exists": exists,
    }))
}

/// Deletes maximum-degree vertices of `target` until the maximum degree is
/// at most `d`.
pub fn reduce_json(target: &str, d: usize) -> Result<Value, String> {
    let f = parse_target(target)?;
    let r = reduce_max_degree(&f, d).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph": GraphJson::from(&f),
        "reduction": r.to_json(),
    }))
}

fn export(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bounds(m: u32, k: u32) -> Result<String, JsError> {
    export(bounds_json(m.into(), k.into()))
}

#[wasm_bindgen(js_name = findMono)]
pub fn find_mono_js(
    n: u32,
    k: u32,
    target: &str,
    seed: u32,
    general: bool,
) -> Result<String, JsError> {
    export(find_mono_json(
        n as usize,
        k as usize,
        target,
        seed.into(),
        general,
    ))
}

#[wasm_bindgen]
pub fn reduce(target: &str, d: u32) -> Result<String, JsError> {
    export(reduce_json(target, d as usize))
}
