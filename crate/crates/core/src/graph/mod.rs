//! Directed graphs in compressed adjacency form.
//!
//! Out-adjacency keeps edges grouped by source in input order. In-adjacency
//! entries carry the out-degree of the in-neighbor and each list is sorted
//! ascending by that degree, which lets a push stop scanning at the first
//! in-neighbor whose degree exceeds its threshold.

mod cache;
mod generate;
mod load;
mod sort;

use std::io::Write;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use generate::{generate_graph, GraphKind};
pub use load::{load_graph, GraphInput, GraphSource, IdPolicy};
pub use sort::{sort_in_lists, InAdjacency};

pub type NodeId = u32;

/// One in-adjacency entry: the in-neighbor and its out-degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InEntry {
    pub node: NodeId,
    pub out_degree: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    out_offsets: Vec<usize>,
    out_targets: Vec<NodeId>,
    in_adj: InAdjacency,
    directed: bool,
    /// dense id → original id, ascending; `None` means identity.
    labels: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a graph over nodes `0..n` from directed edges. Duplicates and
    /// self-loops are kept; out-degrees count multiplicity.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        Self::build(n, edges, true, None)
    }

    pub(crate) fn build(
        n: usize,
        edges: &[(NodeId, NodeId)],
        directed: bool,
        labels: Option<Vec<u64>>,
    ) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u as usize >= n || v as usize >= n) {
            let node = u.max(v) as u64;
            return Err(Error::NodeOutOfRange { node, n });
        }
        if n > NodeId::MAX as usize {
            return Err(Error::invalid("too many nodes for 32-bit ids"));
        }
        let mut out_offsets = vec![0usize; n + 1];
        for &(u, _) in edges {
            out_offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
        }
        let mut cursor = out_offsets.clone();
        let mut out_targets = vec![0; edges.len()];
        for &(u, v) in edges {
            out_targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
        }
        let out_degree: Vec<u32> = out_offsets.windows(2).map(|w| (w[1] - w[0]) as u32).collect();
        // tuples are fed in out-adjacency order so that reloading a serialized
        // graph reproduces the same in-list order
        let pairs =
            (0..n).flat_map(|u| out_targets[out_offsets[u]..out_offsets[u + 1]].iter().map(move |&v| (u as NodeId, v)));
        let in_adj = sort_in_lists(n, pairs, &out_degree);
        Ok(Self { n, out_offsets, out_targets, in_adj, directed, labels })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    /// Whether the source was read as directed. Undirected sources are stored
    /// as symmetric directed graphs.
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    #[inline]
    pub fn out_neighbors(&self, u: NodeId) -> &[NodeId] {
        let u = u as usize;
        &self.out_targets[self.out_offsets[u]..self.out_offsets[u + 1]]
    }

    #[inline]
    pub fn out_degree(&self, u: NodeId) -> u32 {
        let u = u as usize;
        (self.out_offsets[u + 1] - self.out_offsets[u]) as u32
    }

    /// In-neighbors of `v`, ascending by their out-degree.
    #[inline]
    pub fn in_neighbors(&self, v: NodeId) -> &[InEntry] {
        self.in_adj.list(v)
    }

    #[inline]
    pub fn in_degree(&self, v: NodeId) -> u32 {
        self.in_adj.list(v).len() as u32
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        0..self.n as NodeId
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u, v)))
    }

    pub fn has_dangling(&self) -> bool {
        self.nodes().any(|u| self.out_degree(u) == 0)
    }

    /// Original id of a dense node.
    pub fn label(&self, u: NodeId) -> u64 {
        match &self.labels {
            Some(l) => l[u as usize],
            None => u as u64,
        }
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    /// Dense id of an original label.
    pub fn node_of(&self, label: u64) -> Result<NodeId> {
        match &self.labels {
            Some(l) => l.binary_search(&label).map(|i| i as NodeId).map_err(|_| Error::UnknownLabel(label)),
            None if (label as usize) < self.n => Ok(label as NodeId),
            None => Err(Error::UnknownLabel(label)),
        }
    }

    pub fn check_node(&self, u: NodeId) -> Result<()> {
        if (u as usize) < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: u as u64, n: self.n })
        }
    }

    /// Stable content hash over the adjacency structure, used to key cached results.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        h.update((self.edge_count() as u64).to_le_bytes());
        for (u, v) in self.edges() {
            h.update(u.to_le_bytes());
            h.update(v.to_le_bytes());
        }
        let digest = h.finalize();
        digest.iter().take(12).map(|b| format!("{b:02x}")).collect()
    }

    /// Writes one `u v` line per directed edge, using original labels.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(w, "{} {}", self.label(u), self.label(v))?;
        }
        Ok(())
    }

    /// Checks every structural invariant. Used after reading a binary cache.
    pub fn validate(&self) -> Result<()> {
        let corrupt = |m: &str| Err(Error::Cache(m.to_string()));
        if self.out_offsets.len() != self.n + 1 || self.out_offsets[self.n] != self.out_targets.len() {
            return corrupt("out-adjacency offsets do not match edge count");
        }
        if self.out_offsets.windows(2).any(|w| w[0] > w[1]) {
            return corrupt("out-adjacency offsets are not monotone");
        }
        if self.out_targets.iter().any(|&v| v as usize >= self.n) {
            return corrupt("edge target out of range");
        }
        self.in_adj.validate(self.n, self.edge_count()).map_err(Error::Cache)?;
        for v in self.nodes() {
            let list = self.in_neighbors(v);
            if list.iter().any(|e| e.node as usize >= self.n || e.out_degree != self.out_degree(e.node)) {
                return corrupt("in-adjacency degree does not match out-adjacency");
            }
            if list.windows(2).any(|w| w[0].out_degree > w[1].out_degree) {
                return corrupt("in-adjacency list is not sorted by out-degree");
            }
        }
        if let Some(l) = &self.labels {
            if l.len() != self.n || l.windows(2).any(|w| w[0] >= w[1]) {
                return corrupt("label table is not a sorted list of n distinct ids");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycle_in_lists() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.in_neighbors(0), &[InEntry { node: 1, out_degree: 1 }]);
        assert_eq!(g.in_neighbors(1), &[InEntry { node: 0, out_degree: 1 }]);
    }

    #[test]
    fn in_lists_sorted_by_source_degree() {
        // a=0 has out-degree 3, b=1 has out-degree 1, both point at v=2
        let g = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2)]).unwrap();
        assert_eq!(g.in_neighbors(2), &[InEntry { node: 1, out_degree: 1 }, InEntry { node: 0, out_degree: 3 }]);
        g.validate().unwrap();
    }

    #[test]
    fn multi_edges_and_self_loops_kept() {
        let g = Graph::from_edges(2, &[(0, 0), (0, 1), (0, 1)]).unwrap();
        assert_eq!(g.out_degree(0), 3);
        assert_eq!(g.in_degree(1), 2);
        assert_eq!(g.in_degree(0), 1);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn rejects_out_of_range_edge() {
        assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(Error::NodeOutOfRange { .. })));
    }
}
