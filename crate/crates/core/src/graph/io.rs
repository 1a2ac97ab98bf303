//! Graph file formats.
//!
//! JSON: `{"n": 3, "edges": [[0, 1, 1.0], [1, 0, 1.0]]}`.
//!
//! Edge list text: the first non-comment line holds the node count, every
//! following line one `source target weight` triple separated by whitespace.
//! Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::WeightedDigraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl From<&WeightedDigraph> for GraphFile {
    fn from(g: &WeightedDigraph) -> Self {
        Self {
            n: g.n(),
            edges: g.edges().iter().map(|e| (e.source, e.target, e.weight)).collect(),
        }
    }
}

impl TryFrom<GraphFile> for WeightedDigraph {
    type Error = Error;

    fn try_from(f: GraphFile) -> Result<Self> {
        WeightedDigraph::new(f.n, f.edges)
    }
}

pub fn to_json(g: &WeightedDigraph) -> String {
    serde_json::to_string(&GraphFile::from(g)).expect("graph serialization cannot fail")
}

pub fn from_json(s: &str) -> Result<WeightedDigraph> {
    let f: GraphFile = serde_json::from_str(s)?;
    f.try_into()
}

pub fn to_edge_list(g: &WeightedDigraph) -> String {
    let mut out = String::new();
    writeln!(out, "{}", g.n()).unwrap();
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.source, e.target, e.weight).unwrap();
    }
    out
}

pub fn from_edge_list(s: &str) -> Result<WeightedDigraph> {
    let mut lines = s
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("edge list is empty".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("line {lineno}: expected node count, got {header:?}")))?;
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [s, t, w] = fields[..] else {
            return Err(Error::Parse(format!(
                "line {lineno}: expected `source target weight`, got {line:?}"
            )));
        };
        let bad = |what: &str| Error::Parse(format!("line {lineno}: bad {what} in {line:?}"));
        edges.push((
            s.parse().map_err(|_| bad("source"))?,
            t.parse().map_err(|_| bad("target"))?,
            w.parse().map_err(|_| bad("weight"))?,
        ));
    }
    WeightedDigraph::new(n, edges)
}

/// Reads a graph, choosing the format from the content: JSON when the first
/// non-blank character is `{`, edge list otherwise.
pub fn parse_graph(s: &str) -> Result<WeightedDigraph> {
    if s.trim_start().starts_with('{') {
        from_json(s)
    } else {
        from_edge_list(s)
    }
}

pub fn read_graph(path: &Path) -> Result<WeightedDigraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

/// SHA-256 of the canonical JSON encoding, lowercase hex.
pub fn graph_hash(g: &WeightedDigraph) -> String {
    let digest = Sha256::digest(to_json(g).as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}
