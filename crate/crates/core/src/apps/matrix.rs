//! Approximate PPR matrix assembled from per-target (or per-source) queries.
//!
//! Binary layout (little endian): magic `PPRM`, version `u32`, `n: u64`,
//! `eps: f64`, `nnz: u64`, row offsets `(n+1) × u64`, then `nnz × (u32
//! target, f64 value)` in row order.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::baselines::{backward_search, forward_search};
use crate::error::{check_alpha, check_positive, Error, Result};
use crate::graph::{Graph, NodeId};
use crate::io::{write_atomic, ByteReader};
use crate::parallel::with_workers;
use crate::rbs::{rbs_boosted, ErrorMode, RbsConfig, ThetaRule};
use crate::rng::derive_seed;
use crate::score::ScoreVector;
use crate::stats::QueryStats;

const MAGIC: &[u8; 4] = b"PPRM";
const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixMethod {
    RbsAdditive,
    BackwardSearch,
    ForwardSearch,
}

impl MatrixMethod {
    pub fn id(self) -> &'static str {
        match self {
            MatrixMethod::RbsAdditive => "rbs-additive",
            MatrixMethod::BackwardSearch => "bs",
            MatrixMethod::ForwardSearch => "fs",
        }
    }
}

impl FromStr for MatrixMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rbs" | "rbs-additive" => Ok(MatrixMethod::RbsAdditive),
            "bs" => Ok(MatrixMethod::BackwardSearch),
            "fs" => Ok(MatrixMethod::ForwardSearch),
            other => Err(Error::UnknownMethod(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixConfig {
    pub method: MatrixMethod,
    pub alpha: f64,
    /// Additive error parameter of every query.
    pub eps: f64,
    /// Entries below this are dropped; defaults to `eps`.
    pub drop_below: Option<f64>,
    pub seed: u64,
    pub boost: usize,
    pub theta_rule: ThetaRule,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
}

impl MatrixConfig {
    pub fn new(method: MatrixMethod, eps: f64) -> Self {
        Self {
            method,
            alpha: crate::DEFAULT_ALPHA,
            eps,
            drop_below: None,
            seed: 0,
            boost: 1,
            theta_rule: ThetaRule::Experimental,
            workers: 0,
        }
    }

    pub fn drop_threshold(&self) -> f64 {
        self.drop_below.unwrap_or(self.eps)
    }
}

/// Source-indexed inverted lists of retained `π̂(s, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PprMatrix {
    /// Row `s` holds `(t, π̂(s,t))`, sorted by value descending, ties by `t`.
    rows: Vec<Vec<(NodeId, f64)>>,
    pub eps: f64,
    pub stats: QueryStats,
}

impl PprMatrix {
    pub fn node_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, s: NodeId) -> &[(NodeId, f64)] {
        &self.rows[s as usize]
    }

    pub fn get(&self, s: NodeId, t: NodeId) -> f64 {
        self.row(s).iter().find(|&&(u, _)| u == t).map_or(0.0, |&(_, v)| v)
    }

    pub fn entry_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `s,t,value` rows ordered by `s` then `t`, with node labels.
    pub fn write_csv<W: Write>(&self, mut w: W, graph: &Graph) -> std::io::Result<()> {
        writeln!(w, "s,t,value")?;
        for (s, row) in self.rows.iter().enumerate() {
            let mut sorted = row.clone();
            sorted.sort_unstable_by_key(|&(t, _)| t);
            for (t, v) in sorted {
                writeln!(w, "{},{},{v}", graph.label(s as NodeId), graph.label(t))?;
            }
        }
        Ok(())
    }

    pub fn write_binary<W: Write + ?Sized>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&(self.rows.len() as u64).to_le_bytes())?;
        w.write_all(&self.eps.to_le_bytes())?;
        w.write_all(&(self.entry_count() as u64).to_le_bytes())?;
        let mut offset = 0u64;
        w.write_all(&offset.to_le_bytes())?;
        for row in &self.rows {
            offset += row.len() as u64;
            w.write_all(&offset.to_le_bytes())?;
        }
        for &(t, v) in self.rows.iter().flatten() {
            w.write_all(&t.to_le_bytes())?;
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    /// Build stats are not persisted and read back as zero.
    pub fn read_binary(bytes: &[u8]) -> Result<PprMatrix> {
        let bad = |m: &str| Error::Cache(m.to_string());
        let mut r = ByteReader::new(bytes);
        if r.take(4) != Some(&MAGIC[..]) {
            return Err(bad("bad magic"));
        }
        if r.u32() != Some(VERSION) {
            return Err(bad("unsupported version"));
        }
        let n = r.u64().ok_or_else(|| bad("truncated header"))? as usize;
        let eps = r.f64().ok_or_else(|| bad("truncated header"))?;
        let nnz = r.u64().ok_or_else(|| bad("truncated header"))? as usize;
        let offsets = (0..=n)
            .map(|_| r.u64().map(|o| o as usize).ok_or_else(|| bad("truncated offsets")))
            .collect::<Result<Vec<_>>>()?;
        if offsets[0] != 0 || offsets[n] != nnz || offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(bad("inconsistent row offsets"));
        }
        let mut rows = Vec::with_capacity(n);
        for w in offsets.windows(2) {
            let row = (w[0]..w[1])
                .map(|_| {
                    let t = r.u32().ok_or_else(|| bad("truncated entries"))?;
                    let v = r.f64().ok_or_else(|| bad("truncated entries"))?;
                    if t as usize >= n || v.is_nan() || v < 0.0 {
                        return Err(bad("entry out of range"));
                    }
                    Ok((t, v))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if !r.is_empty() {
            return Err(bad("trailing bytes"));
        }
        Ok(PprMatrix { rows, eps, stats: QueryStats::default() })
    }

    pub fn save_binary(&self, path: &Path) -> Result<()> {
        write_atomic(path, |w| self.write_binary(w))
    }

    pub fn load_binary(path: &Path) -> Result<PprMatrix> {
        PprMatrix::read_binary(&fs::read(path)?)
    }
}

/// One query per target (RBS, BS) or per source (FS), run in parallel and
/// merged in node-id order, so the result does not depend on `workers`.
pub fn build_ppr_matrix(g: &Graph, cfg: &MatrixConfig) -> Result<PprMatrix> {
    check_alpha(cfg.alpha)?;
    check_positive("eps", cfg.eps)?;
    let start = Instant::now();
    let n = g.node_count();
    let query = |u: NodeId| -> Result<(ScoreVector, QueryStats)> {
        match cfg.method {
            MatrixMethod::RbsAdditive => {
                let theta = cfg.theta_rule.theta(ErrorMode::Additive, cfg.eps, cfg.alpha);
                let rbs = RbsConfig::additive(theta)
                    .with_alpha(cfg.alpha)
                    .with_seed(derive_seed(cfg.seed, u as u64))
                    .with_boost(cfg.boost);
                let out = rbs_boosted(g, u, &rbs)?;
                Ok((out.estimate, out.stats))
            }
            MatrixMethod::BackwardSearch => {
                let out = backward_search(g, u, cfg.alpha, cfg.eps)?;
                Ok((out.reserve, out.stats))
            }
            MatrixMethod::ForwardSearch => {
                let out = forward_search(g, u, cfg.alpha, cfg.eps)?;
                Ok((out.reserve, out.stats))
            }
        }
    };
    let results: Vec<(ScoreVector, QueryStats)> =
        with_workers(cfg.workers, || (0..n as NodeId).into_par_iter().map(query).collect::<Result<Vec<_>>>())?;

    let drop = cfg.drop_threshold();
    let mut rows: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); n];
    let mut stats = QueryStats::default();
    for (u, (vector, s)) in results.into_iter().enumerate() {
        stats += s;
        for (w, v) in vector.iter().filter(|&(_, v)| v >= drop) {
            match cfg.method {
                MatrixMethod::ForwardSearch => rows[u].push((w, v)),
                _ => rows[w as usize].push((u as NodeId, v)),
            }
        }
    }
    for row in &mut rows {
        row.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    }
    stats.wall_time = start.elapsed();
    Ok(PprMatrix { rows, eps: cfg.eps, stats })
}
