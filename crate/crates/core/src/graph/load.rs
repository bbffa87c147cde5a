use std::fs::File;
use std::io::{BufRead, BufReader, Cursor, Read};
use std::path::PathBuf;

use super::{Graph, NodeId};
use crate::error::{Error, Result};

/// How original ids in an edge list map to dense ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdPolicy {
    /// Distinct ids are sorted and numbered `0..n`; the originals are kept for output.
    #[default]
    Remap,
    /// Ids are used as-is and `n = max id + 1`.
    Identity,
}

#[derive(Debug, Clone)]
pub enum GraphInput {
    Path(PathBuf),
    Bytes(Vec<u8>),
}

/// An edge-list source: whitespace separated `u v` lines.
#[derive(Debug, Clone)]
pub struct GraphSource {
    pub input: GraphInput,
    pub directed: bool,
    pub comment_prefix: String,
    pub id_policy: IdPolicy,
}

impl GraphSource {
    pub fn path(path: impl Into<PathBuf>) -> Self {
        Self::new(GraphInput::Path(path.into()))
    }

    pub fn bytes(bytes: impl Into<Vec<u8>>) -> Self {
        Self::new(GraphInput::Bytes(bytes.into()))
    }

    fn new(input: GraphInput) -> Self {
        Self { input, directed: true, comment_prefix: "#".to_string(), id_policy: IdPolicy::Remap }
    }

    pub fn undirected(mut self) -> Self {
        self.directed = false;
        self
    }

    pub fn with_id_policy(mut self, policy: IdPolicy) -> Self {
        self.id_policy = policy;
        self
    }

    pub fn with_comment_prefix(mut self, prefix: impl Into<String>) -> Self {
        self.comment_prefix = prefix.into();
        self
    }
}

/// Reads an edge list into a degree-sorted [`Graph`].
///
/// Undirected sources contribute both `(u, v)` and `(v, u)` per line.
pub fn load_graph(src: &GraphSource) -> Result<Graph> {
    let reader: Box<dyn Read> = match &src.input {
        GraphInput::Path(p) => Box::new(File::open(p)?),
        GraphInput::Bytes(b) => Box::new(Cursor::new(b.clone())),
    };
    let raw = parse_edges(BufReader::new(reader), &src.comment_prefix)?;
    if raw.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let (n, labels, mut edges) = match src.id_policy {
        IdPolicy::Remap => {
            let mut ids: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
            ids.sort_unstable();
            ids.dedup();
            let dense = |x: u64| ids.binary_search(&x).unwrap() as NodeId;
            let edges: Vec<(NodeId, NodeId)> = raw.iter().map(|&(u, v)| (dense(u), dense(v))).collect();
            (ids.len(), Some(ids), edges)
        }
        IdPolicy::Identity => {
            let max = raw.iter().map(|&(u, v)| u.max(v)).max().unwrap();
            if max >= NodeId::MAX as u64 {
                return Err(Error::NodeOutOfRange { node: max, n: NodeId::MAX as usize });
            }
            let edges = raw.iter().map(|&(u, v)| (u as NodeId, v as NodeId)).collect();
            (max as usize + 1, None, edges)
        }
    };
    if !src.directed {
        edges = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
    }
    Graph::build(n, &edges, src.directed, labels)
}

fn parse_edges<R: BufRead>(reader: R, comment_prefix: &str) -> Result<Vec<(u64, u64)>> {
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || (!comment_prefix.is_empty() && trimmed.starts_with(comment_prefix)) {
            continue;
        }
        let lineno = i + 1;
        let mut tokens = trimmed.split_whitespace();
        let mut next_id = || -> Result<u64> {
            let tok = tokens
                .next()
                .ok_or_else(|| Error::Parse { line: lineno, message: "expected two node ids".to_string() })?;
            tok.parse::<u64>()
                .map_err(|_| Error::Parse { line: lineno, message: format!("`{tok}` is not a non-negative integer") })
        };
        let u = next_id()?;
        let v = next_id()?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse { line: lineno, message: format!("unexpected token `{extra}`") });
        }
        edges.push((u, v));
    }
    Ok(edges)
}
