use std::io::Write;

use serde_json::{json, Value};

use ppr_core::apps::{self, build_hop_index, build_ppr_matrix, HeavyHitterConfig, MatrixConfig, MatrixMethod};
use ppr_core::baselines::{backward_search, forward_search, monte_carlo_single_source};
use ppr_core::exact::{ground_truth_iterations, iterations_for, power_single_source, power_single_target};
use ppr_core::graph::generate_graph;
use ppr_core::harness::{run_tradeoff, verify_lemmas, TradeoffMethod, TradeoffOptions, TradeoffRow, TruthCache};
use ppr_core::rbs::rbs_boosted;
use ppr_core::{ErrorMode, Graph, GraphKind, QueryStats, RbsConfig, ScoreVector};

use crate::args::{
    node, positive, GenGraphArgs, GraphFormat, HeavyHittersArgs, HopIndexArgs, KindArg, MatrixArgs, Method, ModeArg,
    OutArgs, SsQueryArgs, StQueryArgs, TradeoffArgs, VerifyArgs,
};
use crate::output::{sibling, write_json, write_stats, write_table};
use crate::{usage, CliResult};

fn unsupported<T>(command: &str, method: Method) -> CliResult<T> {
    usage(format!("{command} does not support --method {}", method.name()))
}

fn check_boost(boost: usize) -> CliResult {
    if boost == 0 || boost.is_multiple_of(2) {
        return usage(format!("--boost must be odd, got {boost}"));
    }
    Ok(())
}

fn stats_json(stats: &QueryStats, out: &OutArgs) -> Value {
    stats.to_json(out.timing)
}

fn write_scores(g: &Graph, out: &OutArgs, config: &Value, scores: &ScoreVector, stats: &QueryStats) -> CliResult {
    write_table(out.out.as_deref(), config, |w| scores.write_csv(w, g))?;
    write_stats(out.out.as_deref(), &stats_json(stats, out))
}

fn power_iters(alpha: f64, eps: Option<f64>) -> CliResult<usize> {
    match eps {
        Some(e) => {
            positive("--eps", e)?;
            Ok(iterations_for(alpha, e))
        }
        None => Ok(ground_truth_iterations(alpha)),
    }
}

fn power_stats(g: &Graph, iters: usize) -> QueryStats {
    QueryStats {
        push_count: (iters * g.node_count()) as u64,
        edge_touches: (iters * g.edge_count()) as u64,
        ..Default::default()
    }
}

pub fn st_query(a: StQueryArgs) -> CliResult {
    if a.hops && (a.method != Method::Rbs || a.out.out.is_none()) {
        return usage("--hops needs --method rbs and --out");
    }
    let alpha = a.graph.alpha;
    let g = a.graph.load()?;
    let t = node(&g, a.target)?;
    let mut config = json!({
        "command": "st-query",
        "graph": a.graph.describe(&g),
        "alpha": alpha,
        "method": a.method.name(),
        "target": a.target,
    });
    match a.method {
        Method::Power => {
            if a.error.delta.is_some() || a.error.theta.is_some() {
                return usage("power iteration takes only --eps");
            }
            let iters = power_iters(alpha, a.error.eps)?;
            config["iterations"] = json!(iters);
            let v = power_single_target(&g, t, alpha, iters)?;
            write_scores(&g, &a.out, &config, &ScoreVector::from_dense(&v.values), &power_stats(&g, iters))
        }
        Method::Bs => {
            let Some(eps) = a.error.eps.or(a.error.delta) else {
                return usage("backward search needs --eps (or --delta)");
            };
            config["eps"] = json!(eps);
            let out = backward_search(&g, t, alpha, eps)?;
            write_scores(&g, &a.out, &config, &out.reserve, &out.stats)
        }
        Method::Rbs => {
            check_boost(a.boost)?;
            let r = a.error.resolve(alpha)?;
            let cfg = RbsConfig::new(r.mode, r.theta).with_alpha(alpha).with_seed(a.seed).with_boost(a.boost);
            config["error"] = r.to_json();
            config["rbs"] = cfg.to_json();
            let out = rbs_boosted(&g, t, &cfg)?;
            if a.hops {
                let path = sibling(a.out.out.as_deref().expect("checked above"), ".hops.csv");
                write_table(Some(&path), &config, |w| out.hops.write_csv(w, &g))?;
            }
            write_scores(&g, &a.out, &config, &out.estimate, &out.stats)
        }
        m => unsupported("st-query", m),
    }
}

pub fn ss_query(a: SsQueryArgs) -> CliResult {
    let alpha = a.graph.alpha;
    let g = a.graph.load()?;
    let s = node(&g, a.source)?;
    let mut config = json!({
        "command": "ss-query",
        "graph": a.graph.describe(&g),
        "alpha": alpha,
        "method": a.method.name(),
        "source": a.source,
    });
    match a.method {
        Method::Power => {
            let iters = power_iters(alpha, a.eps)?;
            config["iterations"] = json!(iters);
            let v = power_single_source(&g, s, alpha, iters)?;
            write_scores(&g, &a.out, &config, &ScoreVector::from_dense(&v.values), &power_stats(&g, iters))
        }
        Method::Fs => {
            let Some(eps) = a.eps else { return usage("forward search needs --eps") };
            config["eps"] = json!(eps);
            let out = forward_search(&g, s, alpha, eps)?;
            write_scores(&g, &a.out, &config, &out.reserve, &out.stats)
        }
        Method::Mc => {
            if a.walks == 0 {
                return usage("--walks must be positive");
            }
            config["walks"] = json!(a.walks);
            config["seed"] = json!(a.seed);
            let est = monte_carlo_single_source(&g, s, alpha, a.walks, a.seed)?;
            write_scores(&g, &a.out, &config, &est, &QueryStats::default())
        }
        m => unsupported("ss-query", m),
    }
}

pub fn heavy_hitters(a: HeavyHittersArgs) -> CliResult {
    check_boost(a.boost)?;
    let alpha = a.graph.alpha;
    let g = a.graph.load()?;
    let t = node(&g, a.target)?;
    let (pagerank, provenance) = match a.pagerank {
        Some(p) => (p, "supplied"),
        None => (power_single_target(&g, t, alpha, ground_truth_iterations(alpha))?.sum(), "exact"),
    };
    let mut cfg = HeavyHitterConfig::new(a.phi, a.c, pagerank);
    cfg.theta_rule = a.rule.rule();
    if let Err(e) = cfg.validate() {
        return usage(e.to_string());
    }
    let theta = cfg.theta_rule.theta(ErrorMode::Relative, cfg.delta(), alpha);
    let rbs = RbsConfig::relative(theta).with_alpha(alpha).with_seed(a.seed).with_boost(a.boost);
    let config = json!({
        "command": "heavy-hitters",
        "graph": a.graph.describe(&g),
        "alpha": alpha,
        "target": a.target,
        "phi": a.phi,
        "c": a.c,
        "pagerank_of_t": pagerank,
        "pagerank_provenance": provenance,
        "delta": cfg.delta(),
        "theta_rule": cfg.theta_rule.name(),
        "rbs": rbs.to_json(),
    });
    let hits = apps::heavy_hitters(&g, t, &cfg, &rbs)?;
    write_table(a.out.out.as_deref(), &config, |w| {
        writeln!(w, "node,estimate,class")?;
        for h in &hits {
            writeln!(w, "{},{},{}", g.label(h.node), h.estimate, h.class.name())?;
        }
        Ok(())
    })?;
    let stats = json!({ "hitters": hits.len() });
    write_stats(a.out.out.as_deref(), &stats)
}

pub fn ppr_matrix(a: MatrixArgs) -> CliResult {
    let method = match a.method {
        Method::Rbs => MatrixMethod::RbsAdditive,
        Method::Bs => MatrixMethod::BackwardSearch,
        Method::Fs => MatrixMethod::ForwardSearch,
        m => return unsupported("ppr-matrix", m),
    };
    check_boost(a.boost)?;
    positive("--eps", a.eps)?;
    let g = a.graph.load()?;
    let cfg = MatrixConfig {
        method,
        alpha: a.graph.alpha,
        eps: a.eps,
        drop_below: a.drop_below,
        seed: a.seed,
        boost: a.boost,
        theta_rule: a.rule.rule(),
        workers: a.workers,
    };
    let config = json!({
        "command": "ppr-matrix",
        "graph": a.graph.describe(&g),
        "alpha": cfg.alpha,
        "method": method.id(),
        "eps": cfg.eps,
        "drop_below": cfg.drop_threshold(),
        "seed": cfg.seed,
        "boost": cfg.boost,
        "theta_rule": cfg.theta_rule.name(),
    });
    let m = build_ppr_matrix(&g, &cfg)?;
    write_table(a.out.out.as_deref(), &config, |w| m.write_csv(w, &g))?;
    if let Some(path) = a.out.out.as_deref() {
        m.save_binary(&sibling(path, ".pprm"))?;
    }
    let mut stats = stats_json(&m.stats, &a.out);
    stats["entries"] = json!(m.entry_count());
    write_stats(a.out.out.as_deref(), &stats)
}

pub fn hop_index(a: HopIndexArgs) -> CliResult {
    check_boost(a.boost)?;
    let alpha = a.graph.alpha;
    let g = a.graph.load()?;
    let targets = a.targets.iter().map(|&l| node(&g, l)).collect::<CliResult<Vec<_>>>()?;
    let r = a.error.resolve(alpha)?;
    let mut cfg = RbsConfig::new(r.mode, r.theta).with_alpha(alpha).with_seed(a.seed).with_boost(a.boost);
    cfg.max_level = a.max_level;
    let config = json!({
        "command": "hop-index",
        "graph": a.graph.describe(&g),
        "alpha": alpha,
        "targets": a.targets,
        "error": r.to_json(),
        "rbs": cfg.to_json(),
    });
    let idx = build_hop_index(&g, &targets, &cfg, a.workers)?;
    write_table(a.out.out.as_deref(), &config, |w| idx.write_csv(w, &g))?;
    write_stats(a.out.out.as_deref(), &stats_json(&idx.stats, &a.out))
}

pub fn tradeoff(a: TradeoffArgs) -> CliResult {
    let method = match (a.method, a.mode) {
        (Method::Power, _) => TradeoffMethod::Power,
        (Method::Bs, _) => TradeoffMethod::BackwardSearch,
        (Method::Rbs, ModeArg::Additive) => TradeoffMethod::RbsAdditive,
        (Method::Rbs, ModeArg::Relative) => TradeoffMethod::RbsRelative,
        (m, _) => return unsupported("tradeoff", m),
    };
    check_boost(a.boost)?;
    for &p in &a.sweep {
        positive("sweep value", p)?;
    }
    if a.targets == 0 || a.k == 0 {
        return usage("--targets and --k must be positive");
    }
    let alpha = a.graph.alpha;
    let g = a.graph.load()?;
    let opts = TradeoffOptions {
        alpha,
        sampling: a.sampling.into(),
        target_count: a.targets,
        seed: a.seed,
        k: a.k,
        boost: a.boost,
        theta_rule: a.rule.rule(),
        truth_iters: a.truth_iters.unwrap_or_else(|| iterations_for(alpha, 1e-7)),
        cache: TruthCache::new(a.cache.clone()),
        record_wall_time: a.out.timing,
        workers: a.workers,
    };
    let config = json!({
        "command": "tradeoff",
        "graph": a.graph.describe(&g),
        "alpha": alpha,
        "method": method.id(),
        "sweep": a.sweep,
        "targets": a.targets,
        "sampling": opts.sampling.name(),
        "sampling_replacement": true,
        "sampling_degree": "in+out",
        "k": a.k,
        "boost": a.boost,
        "seed": a.seed,
        "theta_rule": opts.theta_rule.name(),
        "truth_iters": opts.truth_iters,
    });
    let rows = run_tradeoff(&g, method, &a.sweep, &opts)?;
    write_table(a.out.out.as_deref(), &config, |w| TradeoffRow::write_csv(&rows, w))
}

pub fn verify(a: VerifyArgs) -> CliResult {
    if a.trials < 2 {
        return usage("--trials must be at least 2");
    }
    let alpha = a.graph.alpha;
    let g = a.graph.load()?;
    let t = node(&g, a.target)?;
    let r = a.error.resolve(alpha)?;
    let mut cfg = RbsConfig::new(r.mode, r.theta).with_alpha(alpha).with_seed(a.seed);
    cfg.max_level = a.max_level;
    let report = verify_lemmas(&g, t, &cfg, a.trials)?;
    let mut value = report.to_json();
    value["graph"] = a.graph.describe(&g);
    value["target"] = json!(a.target);
    value["error"] = r.to_json();
    write_json(a.out.as_deref(), &value)?;
    if !report.passed() {
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
        eprintln!("verification failed: {}", failed.join(", "));
    }
    Ok(())
}

pub fn gen_graph(a: GenGraphArgs) -> CliResult {
    let kind = match a.kind {
        KindArg::Complete => GraphKind::Complete,
        KindArg::Cycle => GraphKind::Cycle,
        KindArg::StarIn => GraphKind::StarIn,
        KindArg::Er => match a.p {
            Some(p) if (0.0..=1.0).contains(&p) => GraphKind::ErdosRenyi { p },
            _ => return usage("er needs --p in [0, 1]"),
        },
        KindArg::PowerLaw => match a.attach {
            Some(k) if k > 0 => GraphKind::PowerLaw { k },
            _ => return usage("power-law needs --attach >= 1"),
        },
    };
    if a.n == 0 {
        return usage("--n must be positive");
    }
    let g = generate_graph(kind, a.n, a.seed)?;
    match (a.format, a.out.as_deref()) {
        (GraphFormat::Binary, Some(path)) => g.save_binary(path)?,
        (GraphFormat::Binary, None) => return usage("--format binary needs --out"),
        (GraphFormat::Edges, Some(path)) => ppr_core::io::write_atomic(path, |w| g.write_edge_list(w))?,
        (GraphFormat::Edges, None) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            g.write_edge_list(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}
