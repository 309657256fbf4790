//! File formats: the canonical `.cub` text form (and the content hash over
//! it), graph6 for half-edge-free simple graphs, DOT export, and the `.col`
//! coloring sidecar.

use crate::coloring::EdgeColoring;
use crate::graph::{CubicGraph, EdgeId, GraphError, SimpleGraph, VertexId};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {0}: {1}")]
    Syntax(usize, String),
    #[error("missing `vertices` line")]
    NoVertexCount,
    #[error("duplicate `vertices` line")]
    DuplicateVertexCount,
    #[error("graph6 string is malformed: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Canonical `.cub` serialization: `vertices <n>`, then `edge <u> <v>` lines
/// with u <= v sorted lexicographically (parallel edges repeated), then
/// `half <u>` lines sorted by u. Bit-exact for a given graph.
pub fn write_cub(g: &CubicGraph) -> String {
    let mut full: Vec<(VertexId, VertexId)> = g.full_edges().to_vec();
    full.sort_unstable();
    let mut half: Vec<VertexId> = g.half_edges().to_vec();
    half.sort_unstable();
    let mut out = format!("vertices {}\n", g.n());
    for (u, v) in full {
        out.push_str(&format!("edge {u} {v}\n"));
    }
    for u in half {
        out.push_str(&format!("half {u}\n"));
    }
    out
}

/// Parses `.cub` text. Lines may appear in any order; `#` starts a comment.
pub fn read_cub(text: &str) -> Result<CubicGraph, FormatError> {
    let mut n: Option<u32> = None;
    let mut full = Vec::new();
    let mut half = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = i + 1;
        let syntax = |msg: &str| FormatError::Syntax(lineno, msg.to_string());
        let mut parts = line.split_whitespace();
        let keyword = parts.next().unwrap();
        let mut num = || -> Result<u32, FormatError> {
            parts
                .next()
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| syntax("expected a nonnegative integer"))
        };
        match keyword {
            "vertices" => {
                let count = num()?;
                if n.replace(count).is_some() {
                    return Err(FormatError::DuplicateVertexCount);
                }
            }
            "edge" => {
                let (u, v) = (num()?, num()?);
                full.push((u, v));
            }
            "half" => half.push(num()?),
            other => return Err(syntax(&format!("unknown keyword `{other}`"))),
        }
    }
    let n = n.ok_or(FormatError::NoVertexCount)?;
    let g = CubicGraph::from_parts(n, full, half);
    for violation in g.validate() {
        if matches!(
            violation,
            crate::graph::Violation::VertexOutOfRange { .. }
        ) {
            return Err(FormatError::Graph(GraphError::Invalid(violation.to_string())));
        }
    }
    Ok(g)
}

/// SHA-256 of the canonical `.cub` form, as lowercase hex. The identity of a
/// graph in the result store.
pub fn graph_hash(g: &CubicGraph) -> String {
    let digest = Sha256::digest(write_cub(g).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// graph6 encoding of a simple graph (standard format; supports n > 62 via
/// the 4-byte length form).
pub fn to_graph6(x: &SimpleGraph) -> String {
    let n = x.n() as usize;
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        assert!(n <= 258_047, "graph6 long form not supported");
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n as u32 {
        for i in 0..j {
            bits.push(x.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut value = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                value |= 1 << (5 - k);
            }
        }
        out.push((value + 63) as char);
    }
    out
}

/// graph6 decoding.
pub fn from_graph6(s: &str) -> Result<SimpleGraph, FormatError> {
    let bytes: Vec<u8> = s.trim().bytes().collect();
    let bad = |msg: &str| FormatError::Graph6(msg.to_string());
    if bytes.is_empty() {
        return Err(bad("empty"));
    }
    let (n, start) = if bytes[0] == 126 {
        if bytes.len() < 4 {
            return Err(bad("truncated length"));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(bad("length byte out of range"));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4)
    } else {
        if !(63..=126).contains(&bytes[0]) {
            return Err(bad("length byte out of range"));
        }
        ((bytes[0] - 63) as usize, 1)
    };
    let need = (n * n.saturating_sub(1) / 2 + 5) / 6;
    if bytes.len() - start != need {
        return Err(bad("wrong payload length"));
    }
    let mut bits = Vec::with_capacity(need * 6);
    for &b in &bytes[start..] {
        if !(63..=126).contains(&b) {
            return Err(bad("payload byte out of range"));
        }
        let v = b - 63;
        for k in (0..6).rev() {
            bits.push((v >> k) & 1 == 1);
        }
    }
    let mut edges = Vec::new();
    let mut idx = 0usize;
    for j in 1..n as u32 {
        for i in 0..j {
            if bits[idx] {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Ok(SimpleGraph::new(n as u32, edges)?)
}

/// DOT export of a cubic graph; half-edges are drawn as pendant point-shaped
/// stubs.
pub fn to_dot(g: &CubicGraph) -> String {
    let mut out = String::from("graph g {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        out.push_str(&format!("  v{v};\n"));
    }
    for (i, &(u, v)) in g.full_edges().iter().enumerate() {
        out.push_str(&format!("  v{u} -- v{v} [label=\"e{i}\"];\n"));
    }
    for (i, &v) in g.half_edges().iter().enumerate() {
        let e = g.full_edge_count() + i;
        out.push_str(&format!("  h{e} [shape=point];\n  v{v} -- h{e} [label=\"e{e}\"];\n"));
    }
    out.push_str("}\n");
    out
}

/// DOT export of a simple graph (complexes, line graphs).
pub fn simple_to_dot(x: &SimpleGraph) -> String {
    let mut out = String::from("graph g {\n  node [shape=circle];\n");
    for v in 0..x.n() {
        out.push_str(&format!("  v{v};\n"));
    }
    for &(u, v) in x.edges() {
        out.push_str(&format!("  v{u} -- v{v};\n"));
    }
    out.push_str("}\n");
    out
}

/// `.col` sidecar: one coloring per line as `A|B|C`, comma-separated EdgeIds.
pub fn write_col(colorings: &[EdgeColoring]) -> String {
    let mut out = String::new();
    for c in colorings {
        let parts: Vec<String> = c
            .classes
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        out.push_str(&parts.join("|"));
        out.push('\n');
    }
    out
}

pub fn read_col(text: &str) -> Result<Vec<EdgeColoring>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |msg: &str| FormatError::Syntax(i + 1, msg.to_string());
        let parts: Vec<&str> = line.split('|').collect();
        if parts.len() != 3 {
            return Err(syntax("expected `A|B|C`"));
        }
        let mut classes: [Vec<EdgeId>; 3] = Default::default();
        for (k, part) in parts.iter().enumerate() {
            for item in part.split(',').filter(|p| !p.trim().is_empty()) {
                let e: EdgeId = item
                    .trim()
                    .parse()
                    .map_err(|_| syntax("EdgeIds must be integers"))?;
                classes[k].push(e);
            }
            classes[k].sort_unstable();
        }
        out.push(EdgeColoring { classes });
    }
    Ok(out)
}
