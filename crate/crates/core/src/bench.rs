//! Batch driver: runs pipeline configurations over a suite of instances and
//! emits one row per (instance, config), plus a mean row per generator
//! group. Timing columns come from the pipeline stats, so they never include
//! parsing or serialization.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io;
use crate::pipeline::{self, CoverStatus, PipelineConfig, SolverChoice};
use crate::vcc_solve::SolveBudget;
use std::path::Path;
use std::time::Duration;

#[derive(Debug, Clone, serde::Deserialize)]
pub struct SuiteSpec {
    pub instances: Vec<InstanceSpec>,
    #[serde(default = "default_configs")]
    pub configs: Vec<String>,
    /// Per-instance time budget in seconds; 0 disables the limit.
    #[serde(default = "default_budget")]
    pub budget_s: f64,
    #[serde(default)]
    pub node_limit: Option<u64>,
    /// Halve generator probabilities before drawing edges.
    #[serde(default)]
    pub paper_density: bool,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_configs() -> Vec<String> {
    vec!["full".to_string()]
}

fn default_budget() -> f64 {
    60.0
}

fn default_seed() -> u64 {
    1
}

#[derive(Debug, Clone, serde::Deserialize)]
#[serde(untagged)]
pub enum InstanceSpec {
    File { file: String },
    Gnp { n: usize, p: f64, seeds: Vec<u64> },
}

/// One result line. Numeric columns are f64 so mean rows can carry
/// fractional values; instance rows always hold integers.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BenchRow {
    pub name: String,
    pub n: f64,
    pub m: f64,
    pub config: String,
    pub ecc_kernel: f64,
    pub vcc_kernel: f64,
    pub theta_ub: f64,
    pub theta_lb: f64,
    pub status: String,
    pub t_reduce: f64,
    pub t_transform: f64,
    pub t_vccreduce: f64,
    pub t_solve: f64,
}

pub fn config_named(name: &str, seed: u64) -> Result<PipelineConfig> {
    let mut cfg = match name {
        "full" => PipelineConfig::default(),
        "gramm-only" => PipelineConfig::gramm_only(),
        "ig" => PipelineConfig {
            solver: SolverChoice::IteratedGreedy,
            ..Default::default()
        },
        other => {
            return Err(Error::Invalid(format!(
                "unknown config {other:?} (expected full, gramm-only or ig)"
            )))
        }
    };
    cfg.seed = seed;
    Ok(cfg)
}

pub fn run_bench(spec: &SuiteSpec) -> Result<Vec<BenchRow>> {
    let mut configs = Vec::with_capacity(spec.configs.len());
    for name in &spec.configs {
        configs.push((name.clone(), config_named(name, spec.seed)?));
    }
    let budget = SolveBudget {
        time_limit: (spec.budget_s > 0.0).then(|| Duration::from_secs_f64(spec.budget_s)),
        node_limit: spec.node_limit,
        target: None,
    };

    let mut rows = Vec::new();
    for inst in &spec.instances {
        match inst {
            InstanceSpec::File { file } => {
                let name = Path::new(file)
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| file.clone());
                match io::parse_edge_list(Path::new(file)) {
                    Ok(lg) => {
                        for (cname, cfg) in &configs {
                            rows.push(solve_row(&lg.graph, &name, cname, cfg, &budget));
                        }
                    }
                    Err(e) => {
                        for (cname, _) in &configs {
                            rows.push(error_row(&name, cname, 0, 0, &e.to_string()));
                        }
                    }
                }
            }
            InstanceSpec::Gnp { n, p, seeds } => {
                let p_eff = if spec.paper_density { p / 2.0 } else { *p };
                for (cname, cfg) in &configs {
                    let start = rows.len();
                    for &s in seeds {
                        let g = io::gen_gnp(*n, p_eff, s);
                        let name = format!("gnp-{n}-{p}-s{s}");
                        rows.push(solve_row(&g, &name, cname, cfg, &budget));
                    }
                    if let Some(mean) = mean_row(&rows[start..], format!("gnp-{n}-{p}-mean"), cname)
                    {
                        rows.push(mean);
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// Flattens a pipeline result into a report row.
pub fn result_row(name: &str, config: &str, res: &pipeline::EccResult) -> BenchRow {
    BenchRow {
        name: name.to_string(),
        n: res.stats.n as f64,
        m: res.stats.m as f64,
        config: config.to_string(),
        ecc_kernel: res.stats.ecc_kernel as f64,
        vcc_kernel: res.stats.vcc_kernel as f64,
        theta_ub: res.size as f64,
        theta_lb: res.lower_bound as f64,
        status: match res.status {
            CoverStatus::Optimal => "optimal".to_string(),
            CoverStatus::Feasible => "feasible".to_string(),
        },
        t_reduce: res.stats.t_reduce,
        t_transform: res.stats.t_transform,
        t_vccreduce: res.stats.t_vccreduce,
        t_solve: res.stats.t_solve,
    }
}

fn solve_row(
    g: &Graph,
    name: &str,
    cname: &str,
    cfg: &PipelineConfig,
    budget: &SolveBudget,
) -> BenchRow {
    match pipeline::solve_ecc(g, cfg, budget) {
        Ok(res) => result_row(name, cname, &res),
        Err(e) => error_row(name, cname, g.n(), g.m(), &e.to_string()),
    }
}

fn error_row(name: &str, cname: &str, n: usize, m: usize, msg: &str) -> BenchRow {
    BenchRow {
        name: name.to_string(),
        n: n as f64,
        m: m as f64,
        config: cname.to_string(),
        ecc_kernel: 0.0,
        vcc_kernel: 0.0,
        theta_ub: 0.0,
        theta_lb: 0.0,
        status: format!("error: {msg}"),
        t_reduce: 0.0,
        t_transform: 0.0,
        t_vccreduce: 0.0,
        t_solve: 0.0,
    }
}

fn mean_row(group: &[BenchRow], name: String, cname: &str) -> Option<BenchRow> {
    let ok: Vec<&BenchRow> = group
        .iter()
        .filter(|r| !r.status.starts_with("error"))
        .collect();
    if ok.is_empty() {
        return None;
    }
    let k = ok.len() as f64;
    let mean = |f: fn(&BenchRow) -> f64| ok.iter().map(|r| f(r)).sum::<f64>() / k;
    Some(BenchRow {
        name,
        n: mean(|r| r.n),
        m: mean(|r| r.m),
        config: cname.to_string(),
        ecc_kernel: mean(|r| r.ecc_kernel),
        vcc_kernel: mean(|r| r.vcc_kernel),
        theta_ub: mean(|r| r.theta_ub),
        theta_lb: mean(|r| r.theta_lb),
        status: "mean".to_string(),
        t_reduce: mean(|r| r.t_reduce),
        t_transform: mean(|r| r.t_transform),
        t_vccreduce: mean(|r| r.t_vccreduce),
        t_solve: mean(|r| r.t_solve),
    })
}

pub const CSV_HEADER: &str =
    "name,n,m,config,ecc_kernel,vcc_kernel,theta_ub,theta_lb,status,t_reduce,t_transform,t_vccreduce,t_solve";

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{:.6},{:.6},{:.6},{:.6}\n",
            field(&r.name),
            count(r.n),
            count(r.m),
            field(&r.config),
            count(r.ecc_kernel),
            count(r.vcc_kernel),
            count(r.theta_ub),
            count(r.theta_lb),
            field(&r.status),
            r.t_reduce,
            r.t_transform,
            r.t_vccreduce,
            r.t_solve,
        ));
    }
    out
}

fn count(x: f64) -> String {
    if x.fract() == 0.0 {
        format!("{}", x as i64)
    } else {
        format!("{x:.2}")
    }
}

fn field(s: &str) -> String {
    s.replace(',', ";")
}
