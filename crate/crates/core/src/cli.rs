//! Command-line front end. `run` is the whole entry point and returns the
//! process exit code, so tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 invalid cover (verify), 2 usage or runtime error.

use crate::bench;
use crate::ecc_reduce::{CoverState, EccRules};
use crate::error::{Error, Result};
use crate::io;
use crate::pipeline::{self, CoverStatus, PipelineConfig, SolverChoice};
use crate::transform::build_vcc_instance;
use crate::vcc_reduce::{VccReduceState, VccRules};
use crate::vcc_solve::SolveBudget;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[derive(Parser)]
#[command(
    name = "ecc-cover",
    version,
    about = "Exact edge clique cover solver with synergistic kernelization"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance end to end and report the cover
    Solve(SolveArgs),
    /// Apply reductions only and report kernel sizes
    Reduce(ReduceArgs),
    /// Rewrite uncovered edges as a vertex clique cover instance
    Transform(TransformArgs),
    /// Check a cover file against a graph
    Verify(VerifyArgs),
    /// Generate a seeded G(n,p) edge list
    Gen(GenArgs),
    /// Run a benchmark suite described by a JSON file
    Bench(BenchArgs),
    /// Brute-force optimum for tiny instances (at most 20 edges)
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    /// Exact branch and reduce
    Bnr,
    /// Iterated greedy heuristic
    Ig,
}

#[derive(Args)]
struct PipelineOpts {
    /// Seed for all randomized components
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Edge-space rules, e.g. 1,2,5 or none
    #[arg(long, default_value = "1,2,5")]
    rules: String,
    /// Vertex-space rules, e.g. simplicial,fold2,crown or none
    #[arg(long, default_value = "simplicial,fold2,crown")]
    vcc_rules: String,
    /// Degree cap for the simplicial rule; 0 lifts the cap
    #[arg(long, default_value_t = 64)]
    simplicial_cap: u32,
    /// Edge rules 1,2 only, no rewrite; overrides --rules and --vcc-rules
    #[arg(long)]
    gramm_only: bool,
    /// Kernel solver
    #[arg(long, value_enum, default_value_t = SolverArg::Bnr)]
    solver: SolverArg,
    /// Depth interval for in-search re-reduction
    #[arg(long, default_value_t = 8)]
    reduce_interval: u32,
}

impl PipelineOpts {
    fn to_config(&self, trace: bool) -> Result<PipelineConfig> {
        if self.gramm_only {
            return Ok(PipelineConfig {
                seed: self.seed,
                trace,
                ..PipelineConfig::gramm_only()
            });
        }
        Ok(PipelineConfig {
            ecc_rules: parse_rules(&self.rules)?,
            vcc_rules: parse_vcc_rules(&self.vcc_rules, self.simplicial_cap)?,
            transform: true,
            solver: match self.solver {
                SolverArg::Bnr => SolverChoice::BranchAndReduce,
                SolverArg::Ig => SolverChoice::IteratedGreedy,
            },
            seed: self.seed,
            reduce_interval: self.reduce_interval,
            trace,
        })
    }

    fn label(&self) -> &'static str {
        if self.gramm_only {
            "gramm-only"
        } else if self.solver == SolverArg::Ig {
            "ig"
        } else {
            "full"
        }
    }
}

#[derive(Args)]
struct BudgetOpts {
    /// Wall-clock budget in seconds; 0 disables the limit
    #[arg(long, default_value_t = 0.0)]
    budget_s: f64,
    /// Kernel search node limit (iteration count for the heuristic solver)
    #[arg(long)]
    node_limit: Option<u64>,
}

impl BudgetOpts {
    fn to_budget(&self) -> SolveBudget {
        SolveBudget {
            time_limit: (self.budget_s > 0.0).then(|| Duration::from_secs_f64(self.budget_s)),
            node_limit: self.node_limit,
            target: None,
        }
    }
}

fn parse_rules(s: &str) -> Result<EccRules> {
    let mut r = EccRules::none();
    if s.trim() == "none" {
        return Ok(r);
    }
    for tok in s.split(',') {
        match tok.trim() {
            "1" => r.rule1 = true,
            "2" => r.rule2 = true,
            "5" => r.rule5 = true,
            other => {
                return Err(Error::Invalid(format!(
                    "unknown edge rule {other:?} (expected 1, 2, 5 or none)"
                )))
            }
        }
    }
    Ok(r)
}

fn parse_vcc_rules(s: &str, cap: u32) -> Result<VccRules> {
    let mut r = VccRules::none();
    r.simplicial_degree_cap = cap;
    if s.trim() == "none" {
        return Ok(r);
    }
    for tok in s.split(',') {
        match tok.trim() {
            "simplicial" => r.simplicial = true,
            "fold2" => r.fold2 = true,
            "crown" => r.crown = true,
            other => {
                return Err(Error::Invalid(format!(
                    "unknown vertex rule {other:?} (expected simplicial, fold2, crown or none)"
                )))
            }
        }
    }
    Ok(r)
}

#[derive(Args)]
struct SolveArgs {
    /// Input edge list
    input: PathBuf,
    #[command(flatten)]
    pipeline: PipelineOpts,
    #[command(flatten)]
    budget: BudgetOpts,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    /// Write the cover here, one clique per line in original labels
    #[arg(long)]
    cover_out: Option<PathBuf>,
    /// Write reduction events here, one JSON object per line
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    input: PathBuf,
    #[command(flatten)]
    pipeline: PipelineOpts,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
}

#[derive(Args)]
struct TransformArgs {
    input: PathBuf,
    /// Edge-space rules to apply before the rewrite; none keeps every edge
    #[arg(long, default_value = "none")]
    rules: String,
    /// Output path; stdout when omitted
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph edge list
    graph: PathBuf,
    /// Cover file, one clique per line in the graph's labels
    cover: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
}

#[derive(Args)]
struct GenArgs {
    n: usize,
    p: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Halve p before drawing edges
    #[arg(long)]
    paper_density: bool,
    /// Output path; stdout when omitted
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// JSON suite description
    suite: PathBuf,
    /// Override the suite's per-instance budget
    #[arg(long)]
    budget_s: Option<f64>,
    /// Override the suite's node limit
    #[arg(long)]
    node_limit: Option<u64>,
    /// Force halved generator densities
    #[arg(long)]
    paper_density: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path; stdout when omitted
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    input: PathBuf,
    /// Write the optimal cover here in original labels
    #[arg(long)]
    cover_out: Option<PathBuf>,
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Reduce(a) => cmd_reduce(a),
        Cmd::Transform(a) => cmd_transform(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Bench(a) => cmd_bench(a),
        Cmd::Oracle(a) => cmd_oracle(a),
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Invalid(e.to_string()))
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_solve(a: SolveArgs) -> Result<i32> {
    let lg = io::parse_edge_list(&a.input)?;
    let cfg = a.pipeline.to_config(a.trace.is_some())?;
    let res = pipeline::solve_ecc(&lg.graph, &cfg, &a.budget.to_budget())?;
    if let Some(path) = &a.cover_out {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        io::write_cover(&mut f, &res.cliques, &lg.labels)?;
    }
    if let Some(path) = &a.trace {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        for ev in &res.trace {
            let line = serde_json::to_string(ev).map_err(|e| Error::Invalid(e.to_string()))?;
            writeln!(f, "{line}")?;
        }
    }
    match a.format {
        FormatArg::Json => println!("{}", to_json(&res)?),
        FormatArg::Csv => {
            let row = bench::result_row(&stem(&a.input), a.pipeline.label(), &res);
            print!("{}", bench::to_csv(&[row]));
        }
        FormatArg::Human => {
            println!("n {}  m {}", res.stats.n, res.stats.m);
            println!("status {}", status_str(res.status));
            println!("size {}", res.size);
            println!("lower_bound {}", res.lower_bound);
            println!(
                "forced {}  ecc_kernel {}  vcc_kernel {}",
                res.stats.forced, res.stats.ecc_kernel, res.stats.vcc_kernel
            );
            println!(
                "t_reduce {:.3}s  t_transform {:.3}s  t_vccreduce {:.3}s  t_solve {:.3}s",
                res.stats.t_reduce, res.stats.t_transform, res.stats.t_vccreduce, res.stats.t_solve
            );
        }
    }
    Ok(0)
}

fn status_str(s: CoverStatus) -> &'static str {
    match s {
        CoverStatus::Optimal => "optimal",
        CoverStatus::Feasible => "feasible",
    }
}

#[derive(serde::Serialize)]
struct ReduceReport {
    n: usize,
    m: usize,
    forced: usize,
    ecc_kernel: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    vcc_vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vcc_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vcc_kernel: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    taken: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    folds: Option<usize>,
}

fn cmd_reduce(a: ReduceArgs) -> Result<i32> {
    let lg = io::parse_edge_list(&a.input)?;
    let cfg = a.pipeline.to_config(false)?;
    let mut state = CoverState::new(&lg.graph);
    state.reduce(&cfg.ecc_rules);
    let mut report = ReduceReport {
        n: lg.graph.n(),
        m: lg.graph.m(),
        forced: state.forced_cliques().len(),
        ecc_kernel: state.uncovered_count(),
        vcc_vertices: None,
        vcc_edges: None,
        vcc_kernel: None,
        taken: None,
        folds: None,
    };
    if cfg.transform {
        let inst = build_vcc_instance(&state);
        let mut red = VccReduceState::new(&inst.h);
        red.reduce(&cfg.vcc_rules)?;
        report.vcc_vertices = Some(inst.h.n());
        report.vcc_edges = Some(inst.h.m());
        report.vcc_kernel = Some(red.kernel_size());
        report.taken = Some(red.taken_cliques().len());
        report.folds = Some(red.fold_records().len());
    }
    match a.format {
        FormatArg::Json => println!("{}", to_json(&report)?),
        _ => {
            println!("n {}  m {}", report.n, report.m);
            println!("forced {}", report.forced);
            println!("ecc_kernel {} uncovered edges", report.ecc_kernel);
            if let (Some(v), Some(e)) = (report.vcc_vertices, report.vcc_edges) {
                println!("vcc_instance {v} vertices, {e} edges");
            }
            if let Some(k) = report.vcc_kernel {
                println!("vcc_kernel {k} vertices");
            }
        }
    }
    Ok(0)
}

fn cmd_transform(a: TransformArgs) -> Result<i32> {
    let lg = io::parse_edge_list(&a.input)?;
    let rules = parse_rules(&a.rules)?;
    let mut state = CoverState::new(&lg.graph);
    state.reduce(&rules);
    let inst = build_vcc_instance(&state);
    let mut buf = Vec::new();
    io::write_vcc_instance(&mut buf, &inst, Some(&lg.labels))?;
    write_out(a.out.as_ref(), &String::from_utf8_lossy(&buf))?;
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> Result<i32> {
    let lg = io::parse_edge_list(&a.graph)?;
    let cover = io::parse_cover(&a.cover, &lg)?;
    let verdict = pipeline::verify_ecc(&lg.graph, &cover);
    match a.format {
        FormatArg::Json => println!("{}", to_json(&verdict)?),
        _ => {
            if verdict.valid {
                println!("valid cover: {} cliques", cover.len());
            } else {
                println!("invalid cover: {:?}", verdict.first_violation.unwrap());
            }
        }
    }
    Ok(if verdict.valid { 0 } else { 1 })
}

fn cmd_gen(a: GenArgs) -> Result<i32> {
    if !(0.0..=1.0).contains(&a.p) {
        return Err(Error::Invalid(format!("p must lie in [0, 1], got {}", a.p)));
    }
    let p = if a.paper_density { a.p / 2.0 } else { a.p };
    let g = io::gen_gnp(a.n, p, a.seed);
    let mut buf = Vec::new();
    io::write_edge_list(&mut buf, &g, None)?;
    write_out(a.out.as_ref(), &String::from_utf8_lossy(&buf))?;
    Ok(0)
}

fn cmd_bench(a: BenchArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&a.suite)?;
    let mut spec: bench::SuiteSpec =
        serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("bad suite: {e}")))?;
    if let Some(b) = a.budget_s {
        spec.budget_s = b;
    }
    if let Some(nl) = a.node_limit {
        spec.node_limit = Some(nl);
    }
    if a.paper_density {
        spec.paper_density = true;
    }
    let rows = bench::run_bench(&spec)?;
    let text = match a.format {
        FormatArg::Json => format!("{}\n", to_json(&rows)?),
        _ => bench::to_csv(&rows),
    };
    write_out(a.out.as_ref(), &text)?;
    Ok(0)
}

fn cmd_oracle(a: OracleArgs) -> Result<i32> {
    let lg = io::parse_edge_list(&a.input)?;
    let (theta, cover) = pipeline::brute_force_ecc(&lg.graph)?;
    if let Some(path) = &a.cover_out {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        io::write_cover(&mut f, &cover, &lg.labels)?;
    }
    println!("{theta}");
    Ok(0)
}
