use std::fs::File;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use ppr_core::graph::load_graph;
use ppr_core::harness::Sampling;
use ppr_core::{ErrorMode, Graph, GraphSource, NodeId, ThetaRule, DEFAULT_ALPHA};

use crate::{usage, CliResult};

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Edge list (`u v` per line, `#` comments) or a binary graph cache.
    #[arg(long)]
    pub graph: PathBuf,
    /// Treat each edge-list line as two directed edges.
    #[arg(long)]
    pub undirected: bool,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
}

impl GraphArgs {
    pub fn load(&self) -> CliResult<Graph> {
        let mut file = File::open(&self.graph)
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", self.graph.display())))?;
        let mut magic = [0u8; 4];
        let is_binary = file.read(&mut magic)? == 4 && &magic == b"PPRG";
        if is_binary {
            if self.undirected {
                return usage("--undirected applies to edge lists, not binary graph caches");
            }
            return Ok(Graph::load_binary(&self.graph)?);
        }
        let mut src = GraphSource::path(&self.graph);
        if self.undirected {
            src = src.undirected();
        }
        Ok(load_graph(&src)?)
    }

    pub fn describe(&self, g: &Graph) -> Value {
        json!({
            "path": self.graph.display().to_string(),
            "undirected": self.undirected,
            "nodes": g.node_count(),
            "edges": g.edge_count(),
            "fingerprint": g.fingerprint(),
        })
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutArgs {
    /// Result file; a `.stats.json` sibling receives the counters. Stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include wall-clock times in outputs (makes them machine dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Power,
    Bs,
    Fs,
    Mc,
    Rbs,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Power => "power",
            Method::Bs => "bs",
            Method::Fs => "fs",
            Method::Mc => "mc",
            Method::Rbs => "rbs",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Relative,
    Additive,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThetaRuleArg {
    /// θ = δ or θ = ε.
    #[default]
    Experimental,
    /// θ = ε_r²δ/(3L) or θ = ε/√(3Lα).
    Theoretical,
}

#[derive(Args, Debug, Clone)]
pub struct ThetaRuleArgs {
    #[arg(long, value_enum, default_value_t = ThetaRuleArg::Experimental)]
    pub theta_rule: ThetaRuleArg,
    /// Relative error target ε_r used by the theoretical rule in relative mode.
    #[arg(long, default_value_t = 0.5)]
    pub rel_eps: f64,
}

impl ThetaRuleArgs {
    pub fn rule(&self) -> ThetaRule {
        match self.theta_rule {
            ThetaRuleArg::Experimental => ThetaRule::Experimental,
            ThetaRuleArg::Theoretical => ThetaRule::Theoretical { relative_eps: self.rel_eps },
        }
    }
}

/// Error parameters of an RBS query.
#[derive(Args, Debug, Clone)]
pub struct ErrorArgs {
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Additive error ε.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Relative error threshold δ.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Use this θ directly instead of deriving it from ε or δ.
    #[arg(long)]
    pub theta: Option<f64>,
    #[command(flatten)]
    pub rule: ThetaRuleArgs,
}

/// The mode, θ and the parameter it came from.
#[derive(Debug, Clone, Copy)]
pub struct Resolved {
    pub mode: ErrorMode,
    pub param: Option<f64>,
    pub theta: f64,
    pub rule: &'static str,
}

impl Resolved {
    pub fn to_json(self) -> Value {
        json!({
            "mode": self.mode.name(),
            "param": self.param,
            "theta": self.theta,
            "theta_rule": self.rule,
        })
    }
}

impl ErrorArgs {
    pub fn resolve(&self, alpha: f64) -> CliResult<Resolved> {
        let mode = match (self.mode, self.eps, self.delta) {
            (_, Some(_), Some(_)) => return usage("--eps and --delta are mutually exclusive"),
            (Some(ModeArg::Relative), Some(_), None) => {
                return usage("--eps is the additive error; use --delta with --mode relative")
            }
            (Some(ModeArg::Additive), None, Some(_)) => {
                return usage("--delta is the relative threshold; use --eps with --mode additive")
            }
            (Some(ModeArg::Additive), _, _) | (None, Some(_), None) => ErrorMode::Additive,
            _ => ErrorMode::Relative,
        };
        let param = self.eps.or(self.delta);
        if let Some(p) = param {
            positive("error parameter", p)?;
        }
        match (self.theta, param) {
            (Some(theta), _) => {
                positive("--theta", theta)?;
                Ok(Resolved { mode, param, theta, rule: "explicit" })
            }
            (None, Some(p)) => {
                let rule = self.rule.rule();
                Ok(Resolved { mode, param, theta: rule.theta(mode, p, alpha), rule: rule.name() })
            }
            (None, None) => usage("one of --eps, --delta or --theta is required"),
        }
    }
}

pub fn positive(name: &str, v: f64) -> CliResult<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        usage(format!("{name} must be positive, got {v}"))
    }
}

pub fn node(g: &Graph, label: u64) -> CliResult<NodeId> {
    Ok(g.node_of(label)?)
}

#[derive(Args, Debug)]
pub struct StQueryArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value_t = Method::Rbs)]
    pub method: Method,
    #[arg(long)]
    pub target: u64,
    #[command(flatten)]
    pub error: ErrorArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Independent RBS copies combined by median; must be odd.
    #[arg(long, default_value_t = 1)]
    pub boost: usize,
    /// Also write the RBS hop table to `<out>.hops.csv`.
    #[arg(long)]
    pub hops: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct SsQueryArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value_t = Method::Power)]
    pub method: Method,
    #[arg(long)]
    pub source: u64,
    /// Forward-search threshold, or power-iteration error.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Monte-Carlo walk count.
    #[arg(long, default_value_t = 100_000)]
    pub walks: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct HeavyHittersArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub target: u64,
    #[arg(long)]
    pub phi: f64,
    #[arg(long, default_value_t = 0.1)]
    pub c: f64,
    /// Supplied nπ(t); computed exactly when absent.
    #[arg(long)]
    pub pagerank: Option<f64>,
    #[arg(long, default_value_t = 15)]
    pub boost: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub rule: ThetaRuleArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value_t = Method::Rbs)]
    pub method: Method,
    #[arg(long)]
    pub eps: f64,
    /// Drop entries below this value (default: eps).
    #[arg(long)]
    pub drop_below: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub boost: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub rule: ThetaRuleArgs,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct HopIndexArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Comma-separated target labels.
    #[arg(long, value_delimiter = ',', required = true)]
    pub targets: Vec<u64>,
    #[command(flatten)]
    pub error: ErrorArgs,
    #[arg(long)]
    pub max_level: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub boost: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingArg {
    Degree,
    Uniform,
}

impl From<SamplingArg> for Sampling {
    fn from(s: SamplingArg) -> Self {
        match s {
            SamplingArg::Degree => Sampling::DegreeWeighted,
            SamplingArg::Uniform => Sampling::Uniform,
        }
    }
}

#[derive(Args, Debug)]
pub struct TradeoffArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value_t = Method::Rbs)]
    pub method: Method,
    /// RBS mode; ignored by other methods.
    #[arg(long, value_enum, default_value_t = ModeArg::Relative)]
    pub mode: ModeArg,
    /// Comma-separated error parameters (ε or δ).
    #[arg(long, value_delimiter = ',', required = true)]
    pub sweep: Vec<f64>,
    /// Number of sampled targets.
    #[arg(long, default_value_t = 100)]
    pub targets: usize,
    #[arg(long, value_enum, default_value_t = SamplingArg::Degree)]
    pub sampling: SamplingArg,
    /// k for Precision@k.
    #[arg(long, default_value_t = 50)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub boost: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub rule: ThetaRuleArgs,
    /// Power iterations for the ground truth (default: error below 1e-7).
    #[arg(long)]
    pub truth_iters: Option<usize>,
    /// Directory for cached ground-truth vectors.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub target: u64,
    #[command(flatten)]
    pub error: ErrorArgs,
    #[arg(long)]
    pub max_level: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindArg {
    Complete,
    Cycle,
    StarIn,
    Er,
    PowerLaw,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GraphFormat {
    #[default]
    Edges,
    Binary,
}

#[derive(Args, Debug)]
pub struct GenGraphArgs {
    #[arg(value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    /// Edge probability for `er`.
    #[arg(long)]
    pub p: Option<f64>,
    /// Links per new node for `power-law`.
    #[arg(long)]
    pub attach: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
    pub format: GraphFormat,
    /// Output path; stdout when absent (edge lists only).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn error_args(mode: Option<ModeArg>, eps: Option<f64>, delta: Option<f64>, theta: Option<f64>) -> ErrorArgs {
        ErrorArgs {
            mode,
            eps,
            delta,
            theta,
            rule: ThetaRuleArgs { theta_rule: ThetaRuleArg::Experimental, rel_eps: 0.5 },
        }
    }

    #[test]
    fn mode_follows_parameter() {
        let r = error_args(None, Some(1e-3), None, None).resolve(0.2).unwrap();
        assert_eq!((r.mode, r.theta), (ErrorMode::Additive, 1e-3));
        let r = error_args(None, None, Some(1e-2), Some(5e-3)).resolve(0.2).unwrap();
        assert_eq!((r.mode, r.theta, r.rule), (ErrorMode::Relative, 5e-3, "explicit"));
    }

    #[test]
    fn conflicts_are_usage_errors() {
        for args in [
            error_args(Some(ModeArg::Relative), Some(1e-3), None, None),
            error_args(Some(ModeArg::Additive), None, Some(1e-3), None),
            error_args(None, Some(1e-3), Some(1e-3), None),
            error_args(None, None, None, None),
            error_args(None, Some(-1.0), None, None),
        ] {
            assert!(matches!(args.resolve(0.2), Err(crate::CliError::Usage(_))));
        }
    }
}
