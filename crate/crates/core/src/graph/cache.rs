//! Binary cache of a preprocessed graph.
//!
//! Layout (little endian): magic `PPRG`, version `u32`, `n: u64`, `m: u64`,
//! directed `u8`, has-labels `u8`, out offsets `(n+1) × u64`, out targets
//! `m × u32`, in offsets `(n+1) × u64`, in entries `m × (u32 node, u32 degree)`,
//! then `n × u64` labels when present.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::{Graph, InAdjacency, InEntry};
use crate::error::{Error, Result};
use crate::io::{write_atomic, ByteReader};

const MAGIC: &[u8; 4] = b"PPRG";
const VERSION: u32 = 1;

impl Graph {
    pub fn write_binary<W: Write + ?Sized>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&(self.n as u64).to_le_bytes())?;
        w.write_all(&(self.edge_count() as u64).to_le_bytes())?;
        w.write_all(&[u8::from(self.directed), u8::from(self.labels.is_some())])?;
        for &o in &self.out_offsets {
            w.write_all(&(o as u64).to_le_bytes())?;
        }
        for &v in &self.out_targets {
            w.write_all(&v.to_le_bytes())?;
        }
        for &o in &self.in_adj.offsets {
            w.write_all(&(o as u64).to_le_bytes())?;
        }
        for e in &self.in_adj.entries {
            w.write_all(&e.node.to_le_bytes())?;
            w.write_all(&e.out_degree.to_le_bytes())?;
        }
        if let Some(labels) = &self.labels {
            for &l in labels {
                w.write_all(&l.to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn read_binary(bytes: &[u8]) -> Result<Graph> {
        let bad = |m: &str| Error::Cache(m.to_string());
        let mut r = ByteReader::new(bytes);
        if r.take(4) != Some(&MAGIC[..]) {
            return Err(bad("bad magic"));
        }
        let version = r.u32().ok_or_else(|| bad("truncated header"))?;
        if version != VERSION {
            return Err(Error::Cache(format!("unsupported version {version}")));
        }
        let n = r.u64().ok_or_else(|| bad("truncated header"))? as usize;
        let m = r.u64().ok_or_else(|| bad("truncated header"))? as usize;
        let directed = r.u8().ok_or_else(|| bad("truncated header"))? != 0;
        let has_labels = r.u8().ok_or_else(|| bad("truncated header"))? != 0;
        let expected = 8 * (n + 1) * 2 + 4 * m + 8 * m + if has_labels { 8 * n } else { 0 };
        if bytes.len() != 26 + expected {
            return Err(bad("file length does not match header"));
        }
        let trunc = || bad("truncated body");
        let offsets = |r: &mut ByteReader| -> Result<Vec<usize>> {
            (0..=n).map(|_| r.u64().map(|x| x as usize).ok_or_else(trunc)).collect()
        };
        let out_offsets = offsets(&mut r)?;
        let out_targets = (0..m).map(|_| r.u32().ok_or_else(trunc)).collect::<Result<Vec<_>>>()?;
        let in_offsets = offsets(&mut r)?;
        let entries = (0..m)
            .map(|_| {
                let node = r.u32().ok_or_else(trunc)?;
                let out_degree = r.u32().ok_or_else(trunc)?;
                Ok(InEntry { node, out_degree })
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = if has_labels {
            Some((0..n).map(|_| r.u64().ok_or_else(trunc)).collect::<Result<Vec<_>>>()?)
        } else {
            None
        };
        if !r.is_empty() {
            return Err(bad("trailing bytes"));
        }
        let g = Graph {
            n,
            out_offsets,
            out_targets,
            in_adj: InAdjacency { offsets: in_offsets, entries },
            directed,
            labels,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn save_binary(&self, path: &Path) -> Result<()> {
        write_atomic(path, |w| self.write_binary(w))
    }

    pub fn load_binary(path: &Path) -> Result<Graph> {
        Graph::read_binary(&fs::read(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, load_graph, GraphKind, GraphSource};

    #[test]
    fn binary_round_trip_with_and_without_labels() {
        let g = generate_graph(GraphKind::ErdosRenyi { p: 0.2 }, 30, 9).unwrap();
        let mut buf = Vec::new();
        g.write_binary(&mut buf).unwrap();
        assert_eq!(Graph::read_binary(&buf).unwrap(), g);

        let h = load_graph(&GraphSource::bytes("10 20\n20 30\n30 10\n10 30").undirected()).unwrap();
        let mut buf = Vec::new();
        h.write_binary(&mut buf).unwrap();
        assert_eq!(Graph::read_binary(&buf).unwrap(), h);
    }

    #[test]
    fn rejects_corruption() {
        let g = generate_graph(GraphKind::Cycle, 4, 0).unwrap();
        let mut buf = Vec::new();
        g.write_binary(&mut buf).unwrap();
        assert!(Graph::read_binary(&buf[..buf.len() - 1]).is_err());
        let mut bad_magic = buf.clone();
        bad_magic[0] = b'X';
        assert!(Graph::read_binary(&bad_magic).is_err());
        let mut bad_version = buf.clone();
        bad_version[4] = 9;
        assert!(Graph::read_binary(&bad_version).is_err());
        // point an edge at a node that does not exist
        let mut bad_edge = buf.clone();
        let first_target = 26 + 8 * 5;
        bad_edge[first_target] = 200;
        assert!(Graph::read_binary(&bad_edge).is_err());
    }
}
