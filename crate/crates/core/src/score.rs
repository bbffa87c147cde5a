use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Sparse node → score map, stored as `(node, value)` pairs sorted by node.
///
/// Zero entries are never stored, so `len()` is the support size.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScoreVector {
    entries: Vec<(NodeId, f64)>,
}

impl ScoreVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from a dense buffer, keeping nonzero entries.
    pub fn from_dense(values: &[f64]) -> Self {
        let entries = values.iter().enumerate().filter(|(_, &v)| v != 0.0).map(|(i, &v)| (i as NodeId, v)).collect();
        Self { entries }
    }

    /// Builds from arbitrary pairs; repeated nodes are summed.
    pub fn from_pairs(mut pairs: Vec<(NodeId, f64)>) -> Self {
        pairs.sort_by_key(|&(u, _)| u);
        let mut entries: Vec<(NodeId, f64)> = Vec::with_capacity(pairs.len());
        for (u, v) in pairs {
            match entries.last_mut() {
                Some((last, acc)) if *last == u => *acc += v,
                _ => entries.push((u, v)),
            }
        }
        entries.retain(|&(_, v)| v != 0.0);
        Self { entries }
    }

    /// Gathers the listed nodes of a dense scratch buffer. `touched` may be unsorted
    /// but must not contain duplicates.
    pub(crate) fn gather(dense: &[f64], touched: &mut [NodeId]) -> Self {
        touched.sort_unstable();
        let entries = touched.iter().map(|&u| (u, dense[u as usize])).filter(|&(_, v)| v != 0.0).collect();
        Self { entries }
    }

    pub fn get(&self, node: NodeId) -> f64 {
        match self.entries.binary_search_by_key(&node, |&(u, _)| u) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0.0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn entries(&self) -> &[(NodeId, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.entries.iter().map(|&(u, _)| u)
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().map(|&(_, v)| v).sum()
    }

    pub fn max_node(&self) -> Option<NodeId> {
        self.entries.last().map(|&(u, _)| u)
    }

    pub fn to_dense(&self, n: usize) -> Result<Vec<f64>> {
        let mut out = vec![0.0; n];
        for &(u, v) in &self.entries {
            let slot = out.get_mut(u as usize).ok_or(Error::DimensionMismatch { expected: n, found: u as usize })?;
            *slot = v;
        }
        Ok(out)
    }

    /// Adds `other` entrywise.
    pub fn add(&self, other: &ScoreVector) -> ScoreVector {
        let mut pairs = self.entries.clone();
        pairs.extend_from_slice(&other.entries);
        ScoreVector::from_pairs(pairs)
    }

    /// Writes `node,estimate` rows using the graph's original labels.
    pub fn write_csv<W: Write>(&self, mut w: W, graph: &Graph) -> std::io::Result<()> {
        writeln!(w, "node,estimate")?;
        for &(u, v) in &self.entries {
            writeln!(w, "{},{}", graph.label(u), v)?;
        }
        Ok(())
    }
}

impl FromIterator<(NodeId, f64)> for ScoreVector {
    fn from_iter<I: IntoIterator<Item = (NodeId, f64)>>(iter: I) -> Self {
        ScoreVector::from_pairs(iter.into_iter().collect())
    }
}
