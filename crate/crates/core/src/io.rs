//! File formats: edge-list JSON, graph6, and coloring JSON.
//!
//! Graph JSON is `{"n": 4, "edges": [[0,1],[1,2]]}`. Coloring JSON is
//! `{"n": 3, "k": 2, "colors": [[0,1,0],[0,2,1],[1,2,0]]}` and must color
//! every pair of `K_n` exactly once.

use crate::coloring::{ColoringError, EdgeColoring};
use crate::graph::{Graph, GraphError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid coloring: {0}")]
    Coloring(#[from] ColoringError),
    #[error("malformed graph6 on line {line}: {msg}")]
    Graph6 { line: usize, msg: String },
    #[error("empty input")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringJson {
    pub n: usize,
    pub k: usize,
    pub colors: Vec<[usize; 3]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<&GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: &GraphJson) -> Result<Self, GraphError> {
        let edges: Vec<_> = j.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edge_list(j.n, &edges)
    }
}

impl From<&EdgeColoring> for ColoringJson {
    fn from(c: &EdgeColoring) -> Self {
        ColoringJson {
            n: c.n(),
            k: c.k(),
            colors: c
                .triples()
                .into_iter()
                .map(|(u, v, col)| [u, v, col])
                .collect(),
        }
    }
}

impl TryFrom<&ColoringJson> for EdgeColoring {
    type Error = ColoringError;

    fn try_from(j: &ColoringJson) -> Result<Self, ColoringError> {
        let triples: Vec<_> = j.colors.iter().map(|&[u, v, c]| (u, v, c)).collect();
        EdgeColoring::from_triples(j.n, j.k, &triples)
    }
}

/// Parses a graph from edge-list JSON or a graph6 string, chosen by the
/// first non-blank character.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() {
        return Err(FormatError::Empty);
    }
    if trimmed.starts_with('{') {
        let j: GraphJson = serde_json::from_str(text)?;
        return Ok(Graph::try_from(&j)?);
    }
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
        if !line.is_empty() {
            return decode_graph6(line).map_err(|msg| FormatError::Graph6 { line: i + 1, msg });
        }
    }
    Err(FormatError::Empty)
}

pub fn parse_coloring(text: &str) -> Result<EdgeColoring, FormatError> {
    let j: ColoringJson = serde_json::from_str(text)?;
    Ok(EdgeColoring::try_from(&j)?)
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph JSON serializes")
}

pub fn coloring_to_json(c: &EdgeColoring) -> String {
    serde_json::to_string(&ColoringJson::from(c)).expect("coloring JSON serializes")
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
}

/// graph6 encoding: size header, then the upper triangle column by column
/// (`x(0,1), x(0,2), x(1,2), x(0,3), ..`) packed six bits per byte.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn decode_graph6(s: &str) -> Result<Graph, String> {
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(format!(
                "byte {i} ({b:#04x}) outside the graph6 range 63..=126"
            ));
        }
    }
    let take = |from: usize, count: usize| -> Result<usize, String> {
        let chunk = bytes
            .get(from..from + count)
            .ok_or_else(|| "truncated size header".to_string())?;
        Ok(chunk
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    let (n, body_start) = match bytes.first() {
        None => return Err("empty string".into()),
        Some(&126) if bytes.get(1) == Some(&126) => (take(2, 6)?, 8),
        Some(&126) => (take(1, 3)?, 4),
        Some(&b) => ((b - 63) as usize, 1),
    };
    let body = &bytes[body_start..];
    let needed_bits = n * n.saturating_sub(1) / 2;
    let needed_bytes = needed_bits.div_ceil(6);
    if body.len() != needed_bytes {
        return Err(format!(
            "expected {needed_bytes} adjacency bytes for n = {n}, found {}",
            body.len()
        ));
    }
    let bit = |i: usize| (body[i / 6] - 63) >> (5 - i % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(i) {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edge_list(n, &edges).map_err(|e| e.to_string())
}
