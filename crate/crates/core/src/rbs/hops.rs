use std::io::Write;

use crate::graph::Graph;
use crate::score::ScoreVector;

/// Per-level estimates `π̂_ℓ(·, t)`, `ℓ = 0..=L`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HopTable {
    levels: Vec<ScoreVector>,
}

impl HopTable {
    pub fn from_levels(levels: Vec<ScoreVector>) -> Self {
        Self { levels }
    }

    pub fn levels(&self) -> &[ScoreVector] {
        &self.levels
    }

    pub fn level(&self, ell: usize) -> Option<&ScoreVector> {
        self.levels.get(ell)
    }

    /// Number of stored levels, `L + 1`.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `Σ_ℓ π̂_ℓ`.
    pub fn total(&self) -> ScoreVector {
        self.levels.iter().flat_map(|l| l.iter()).collect()
    }

    pub fn mass(&self) -> f64 {
        self.levels.iter().map(ScoreVector::sum).sum()
    }

    /// Rows `ell,node,estimate`, no header.
    pub fn write_rows<W: Write>(&self, mut w: W, graph: &Graph, prefix: &str) -> std::io::Result<()> {
        for (ell, level) in self.levels.iter().enumerate() {
            for (u, v) in level.iter() {
                writeln!(w, "{prefix}{ell},{},{v}", graph.label(u))?;
            }
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, mut w: W, graph: &Graph) -> std::io::Result<()> {
        writeln!(w, "ell,node,estimate")?;
        self.write_rows(w, graph, "")
    }
}
