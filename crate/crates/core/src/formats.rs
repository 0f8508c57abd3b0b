//! graph6, DIMACS edge format and labelled JSON import/export.
//!
//! graph6 and DIMACS carry structure only; labels survive only the JSON form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexId, VertexLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    Dimacs,
    Json,
}

impl Format {
    pub fn parse(name: &str) -> Option<Format> {
        match name.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Some(Format::Graph6),
            "dimacs" | "col" => Some(Format::Dimacs),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    /// Guess from content: JSON starts with `{`, DIMACS with `c`/`p` lines.
    pub fn sniff(text: &str) -> Format {
        let t = text.trim_start();
        if t.starts_with('{') {
            Format::Json
        } else if t.starts_with("p ") || t.starts_with("c ") || t.starts_with("c\n") || t.starts_with("e ") {
            Format::Dimacs
        } else {
            Format::Graph6
        }
    }
}

pub fn read_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::Graph6 => from_graph6(text),
        Format::Dimacs => from_dimacs(text),
        Format::Json => from_json(text),
    }
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => format!("{}\n", to_graph6(g)),
        Format::Dimacs => to_dimacs(g),
        Format::Json => format!("{}\n", to_json(g)),
    }
}

fn g6_err(message: impl Into<String>) -> Error {
    Error::Parse { format: "graph6", line: 1, message: message.into() }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| g6_err("empty input"))?;
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes: Vec<u8> = line.bytes().collect();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(g6_err("byte outside 63..=126"));
    }
    let data = |b: &[u8]| b.iter().fold(0usize, |acc, &x| (acc << 6) | (x - 63) as usize);
    let (n, rest) = match bytes.as_slice() {
        [126, 126, tail @ ..] if tail.len() >= 6 => (data(&tail[..6]), &tail[6..]),
        [126, tail @ ..] if tail.len() >= 3 => (data(&tail[..3]), &tail[3..]),
        [b, tail @ ..] if *b < 126 => ((*b - 63) as usize, tail),
        _ => return Err(g6_err("truncated size header")),
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != needed {
        return Err(g6_err(format!("expected {needed} data bytes for {n} vertices, found {}", rest.len())));
    }
    let mut b = GraphBuilder::with_vertices(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(b.build())
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut s = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    s
}

pub fn from_dimacs(text: &str) -> Result<Graph> {
    let err = |line: usize, message: String| Error::Parse { format: "dimacs", line, message };
    let mut builder: Option<GraphBuilder> = None;
    let mut declared = 0;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let mut parts = raw.split_whitespace();
        match parts.next() {
            None | Some("c") => {}
            Some("p") => {
                if builder.is_some() {
                    return Err(err(lineno, "second problem line".into()));
                }
                let fields: Vec<&str> = parts.collect();
                let [_, n, m] = fields.as_slice() else {
                    return Err(err(lineno, "expected `p edge <n> <m>`".into()));
                };
                let n: usize = n.parse().map_err(|_| err(lineno, format!("bad vertex count {n:?}")))?;
                declared = m.parse().map_err(|_| err(lineno, format!("bad edge count {m:?}")))?;
                builder = Some(GraphBuilder::with_vertices(n));
            }
            Some("e") => {
                let b = builder.as_mut().ok_or_else(|| err(lineno, "edge before problem line".into()))?;
                let ends: Vec<usize> = parts
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| err(lineno, "non-numeric endpoint".into()))?;
                let [u, v] = ends.as_slice() else {
                    return Err(err(lineno, "expected `e <u> <v>`".into()));
                };
                if *u == 0 || *v == 0 {
                    return Err(err(lineno, "DIMACS vertices are 1-based".into()));
                }
                b.add_edge(u - 1, v - 1).map_err(|e| err(lineno, e.to_string()))?;
            }
            Some(other) => return Err(err(lineno, format!("unknown line type {other:?}"))),
        }
    }
    let g = builder.ok_or_else(|| err(0, "missing problem line".into()))?.build();
    if g.edge_count() != declared {
        return Err(err(0, format!("header declares {declared} edges, found {}", g.edge_count())));
    }
    Ok(g)
}

/// Reads any supported format; a bundle JSON yields its graph.
pub fn read_graph_any(text: &str) -> Result<Graph> {
    match Format::sniff(text) {
        Format::Json => {
            let value: serde_json::Value = serde_json::from_str(text)?;
            if value.get("graph").is_some() {
                Ok(serde_json::from_value::<crate::constructions::ConstructionBundle>(value)?.graph)
            } else {
                read_graph(text, Format::Json)
            }
        }
        f => read_graph(text, f),
    }
}

/// Small named graphs: `k<n>`, `c<n>` (n ≥ 3), `p<n>`, optionally followed by
/// `-sub<l>` for the `l`-subdivision. `Ok(None)` when the name is not of this form.
pub fn named_graph(spec: &str) -> Result<Option<Graph>> {
    let lower = spec.to_ascii_lowercase();
    let (base, sub) = match lower.split_once("-sub") {
        Some((b, l)) => match l.parse::<usize>() {
            Ok(l) => (b.to_string(), l),
            Err(_) => return Ok(None),
        },
        None => (lower, 0),
    };
    let mut chars = base.chars();
    let kind = chars.next();
    let Ok(size) = chars.as_str().parse::<usize>() else {
        return Ok(None);
    };
    let g = match kind {
        Some('k') => Graph::complete(size),
        Some('c') if size >= 3 => Graph::cycle(size),
        Some('p') if size >= 1 => Graph::path(size),
        _ => return Ok(None),
    };
    Ok(Some(if sub > 0 { crate::ops::subdivide(&g, sub)? } else { g }))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<VertexLabel>,
}

/// `{vertices: [{id, label?}], edges: [[u, v]]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<[VertexId; 2]>,
}

impl From<&Graph> for GraphDoc {
    fn from(g: &Graph) -> Self {
        GraphDoc {
            vertices: g.vertices().map(|id| VertexDoc { id, label: g.label(id).cloned() }).collect(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphDoc> for Graph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Graph> {
        let n = doc.vertices.len();
        let mut labels = vec![None; n];
        let mut seen = vec![false; n];
        for v in doc.vertices {
            if v.id >= n || seen[v.id] {
                return Err(Error::Parse {
                    format: "json",
                    line: 0,
                    message: format!("vertex ids must be exactly 0..{n}; got {}", v.id),
                });
            }
            seen[v.id] = true;
            labels[v.id] = v.label;
        }
        let mut b = GraphBuilder::with_vertices(n);
        for [u, v] in doc.edges {
            b.add_edge(u, v)?;
        }
        for (v, l) in labels.into_iter().enumerate() {
            b.set_label(v, l);
        }
        Ok(b.build())
    }
}

/// `#[serde(with = "graph_serde")]` adapter embedding a graph as a [`GraphDoc`].
pub mod graph_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::GraphDoc;
    use crate::graph::Graph;

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
        GraphDoc::from(g).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        Graph::try_from(doc).map_err(serde::de::Error::custom)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphDoc::from(g)).expect("graph serialises")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    Graph::try_from(doc)
}
