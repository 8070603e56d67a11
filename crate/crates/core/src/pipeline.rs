//! End-to-end edge clique cover solving.
//!
//! The default pipeline reduces the instance in edge space, rewrites the
//! leftover uncovered edges as a vertex clique cover instance, reduces that
//! further, solves the kernel, and maps everything back. Each stage preserves
//! the optimum exactly, so the final status can honestly claim optimality
//! whenever the kernel solve proved it. An independent brute-force oracle
//! for small instances lives here too, used heavily by the tests.

use crate::ecc_reduce::{CoverState, EccRules};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::transform::{build_vcc_instance, VccInstance};
use crate::vcc_reduce::{VccReduceState, VccRules};
use crate::vcc_solve::{
    branch_and_reduce_with, independent_set_lower_bound, iterated_greedy, BnROptions, BudgetClock,
    SolveBudget, SolveStatus,
};
use std::collections::HashMap;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverChoice {
    BranchAndReduce,
    IteratedGreedy,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PipelineConfig {
    pub ecc_rules: EccRules,
    pub vcc_rules: VccRules,
    /// When off, uncovered edges are emitted as 2-cliques instead of being
    /// rewritten and solved (the reduction-only comparison mode).
    pub transform: bool,
    pub solver: SolverChoice,
    pub seed: u64,
    pub reduce_interval: u32,
    /// Record one event per rule application across both reduction stages.
    pub trace: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            ecc_rules: EccRules::all(),
            vcc_rules: VccRules::all(),
            transform: true,
            solver: SolverChoice::BranchAndReduce,
            seed: 1,
            reduce_interval: 8,
            trace: false,
        }
    }
}

impl PipelineConfig {
    /// Classic reduction-only setup: edge rules 1 and 2, no rewrite, no
    /// kernel solve.
    pub fn gramm_only() -> Self {
        PipelineConfig {
            ecc_rules: EccRules::gramm(),
            transform: false,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverStatus {
    Optimal,
    Feasible,
}

#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct PipelineStats {
    pub n: usize,
    pub m: usize,
    pub forced: usize,
    /// Uncovered edges after the edge-space rules.
    pub ecc_kernel: usize,
    pub vcc_vertices: usize,
    pub vcc_edges: usize,
    /// Alive vertices after the vertex-space rules.
    pub vcc_kernel: usize,
    pub taken: usize,
    pub folds: usize,
    pub solver_nodes: u64,
    pub t_reduce: f64,
    pub t_transform: f64,
    pub t_vccreduce: f64,
    pub t_solve: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct EccResult {
    pub cliques: Vec<Vec<Vertex>>,
    pub size: usize,
    pub status: CoverStatus,
    pub lower_bound: usize,
    pub stats: PipelineStats,
    pub config: PipelineConfig,
    /// Rule applications in order, when tracing was requested. Events from
    /// the vertex-cover stage use derived-instance ids.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<crate::trace::TraceEvent>,
}

pub fn solve_ecc(g: &Graph, cfg: &PipelineConfig, budget: &SolveBudget) -> Result<EccResult> {
    let clock = BudgetClock::new(budget);
    let mut stats = PipelineStats {
        n: g.n(),
        m: g.m(),
        ..Default::default()
    };

    let t = Instant::now();
    let mut state = CoverState::new(g);
    if cfg.trace {
        state.enable_trace();
    }
    state.reduce(&cfg.ecc_rules);
    stats.t_reduce = t.elapsed().as_secs_f64();
    stats.forced = state.forced_cliques().len();
    stats.ecc_kernel = state.uncovered_count();

    if !cfg.transform {
        let mut cliques: Vec<Vec<Vertex>> = state.forced_cliques().to_vec();
        for e in state.uncovered_edges() {
            let (u, v) = g.edge_endpoints(e);
            cliques.push(vec![u, v]);
        }
        let (status, lower_bound) = if stats.ecc_kernel == 0 {
            (CoverStatus::Optimal, cliques.len())
        } else {
            (CoverStatus::Feasible, stats.forced + 1)
        };
        let trace = state.trace().map(<[_]>::to_vec).unwrap_or_default();
        return finish(g, cliques, status, lower_bound, stats, cfg, trace);
    }

    let t = Instant::now();
    let inst = build_vcc_instance(&state);
    stats.t_transform = t.elapsed().as_secs_f64();
    stats.vcc_vertices = inst.h.n();
    stats.vcc_edges = inst.h.m();

    let t = Instant::now();
    let mut red = VccReduceState::new(&inst.h);
    if cfg.trace {
        red.enable_trace();
    }
    red.reduce(&cfg.vcc_rules)?;
    stats.t_vccreduce = t.elapsed().as_secs_f64();
    stats.taken = red.taken_cliques().len();
    stats.folds = red.fold_records().len();
    stats.vcc_kernel = red.kernel_size();

    let (kernel, map) = red.kernel_graph();
    let t = Instant::now();
    let (kcover, optimal, nodes, kernel_lb) = if kernel.n() == 0 {
        (Vec::new(), true, 0, 0)
    } else {
        let kb = SolveBudget {
            time_limit: clock.remaining(),
            node_limit: budget.node_limit,
            target: None,
        };
        match cfg.solver {
            SolverChoice::BranchAndReduce => {
                let opts = BnROptions {
                    seed: cfg.seed,
                    reduce_interval: cfg.reduce_interval,
                    rules: cfg.vcc_rules,
                };
                let sol = branch_and_reduce_with(&kernel, &kb, &opts)?;
                let optimal = sol.status == SolveStatus::Optimal;
                let lb = if optimal {
                    sol.cliques.len()
                } else {
                    sol.lower_bound
                };
                (sol.cliques, optimal, sol.nodes, lb)
            }
            SolverChoice::IteratedGreedy => {
                let sol = iterated_greedy(&kernel, cfg.seed, &kb);
                let lb = independent_set_lower_bound(&kernel, cfg.seed ^ 0x15bd, &kb);
                (sol.cliques, false, sol.nodes, lb.max(1))
            }
        }
    };
    stats.t_solve = t.elapsed().as_secs_f64();
    stats.solver_nodes = nodes;

    let mapped: Vec<Vec<Vertex>> = kcover
        .iter()
        .map(|c| c.iter().map(|&v| map[v as usize]).collect())
        .collect();
    let vcc_cover = red.unfold(&mapped)?;
    let cliques = reconstruct(g, &inst, &vcc_cover, state.forced_cliques())?;
    let status = if optimal {
        CoverStatus::Optimal
    } else {
        CoverStatus::Feasible
    };
    let lower_bound = stats.forced + stats.taken + stats.folds + kernel_lb;
    let mut trace = state.trace().map(<[_]>::to_vec).unwrap_or_default();
    if let Some(vt) = red.trace() {
        let base = trace.last().map_or(0, |ev| ev.step);
        trace.extend(vt.iter().cloned().map(|mut ev| {
            ev.step += base;
            ev
        }));
    }
    finish(g, cliques, status, lower_bound, stats, cfg, trace)
}

fn finish(
    g: &Graph,
    cliques: Vec<Vec<Vertex>>,
    status: CoverStatus,
    lower_bound: usize,
    stats: PipelineStats,
    cfg: &PipelineConfig,
    trace: Vec<crate::trace::TraceEvent>,
) -> Result<EccResult> {
    let verification = verify_ecc(g, &cliques);
    if !verification.valid {
        return Err(Error::Inconsistent(format!(
            "pipeline produced an invalid cover: {:?}",
            verification.first_violation
        )));
    }
    if lower_bound > cliques.len() || (status == CoverStatus::Optimal && lower_bound != cliques.len())
    {
        return Err(Error::Inconsistent(format!(
            "bound bookkeeping broke: lower bound {lower_bound}, size {}, status {status:?}",
            cliques.len()
        )));
    }
    Ok(EccResult {
        size: cliques.len(),
        cliques,
        status,
        lower_bound,
        stats,
        config: cfg.clone(),
        trace,
    })
}

/// Maps a cover of the derived instance back to edge space: each clique
/// becomes the union of its members' endpoint pairs, then the forced
/// cliques from the reduction stage are appended verbatim.
pub fn reconstruct(
    g: &Graph,
    inst: &VccInstance,
    vcc_cover: &[Vec<Vertex>],
    forced: &[Vec<Vertex>],
) -> Result<Vec<Vec<Vertex>>> {
    let mut seen = vec![false; inst.h.n()];
    for c in vcc_cover {
        for &hv in c {
            if hv as usize >= inst.h.n() {
                return Err(Error::Inconsistent(format!(
                    "reconstruct: vertex {hv} is outside the derived instance"
                )));
            }
            seen[hv as usize] = true;
        }
    }
    if let Some(miss) = seen.iter().position(|&b| !b) {
        return Err(Error::Inconsistent(format!(
            "reconstruct: derived vertex {miss} (edge {:?}) left uncovered",
            inst.origin[miss]
        )));
    }
    let mut out = Vec::with_capacity(vcc_cover.len() + forced.len());
    for c in vcc_cover {
        let union = inst.origin_union(c);
        if !g.is_clique(&union) {
            return Err(Error::Inconsistent(format!(
                "reconstruct: endpoint union {union:?} of derived clique {c:?} \
                 is not a clique; the rewrite must have produced a bad edge"
            )));
        }
        out.push(union);
    }
    out.extend(forced.iter().cloned());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum CoverViolation {
    /// Set `index` contains `vertex`, which the graph does not have.
    UnknownVertex { index: usize, vertex: Vertex },
    /// Set `index` misses the edge between `missing.0` and `missing.1`.
    NotAClique { index: usize, missing: (Vertex, Vertex) },
    UncoveredEdge { u: Vertex, v: Vertex },
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Verification {
    pub valid: bool,
    pub first_violation: Option<CoverViolation>,
}

/// Checks that every set is a clique of g and every edge of g lies in some
/// set. Reports the first violation only: sets in order, then edges in id
/// order.
pub fn verify_ecc(g: &Graph, cliques: &[Vec<Vertex>]) -> Verification {
    for (index, c) in cliques.iter().enumerate() {
        for &v in c {
            if v as usize >= g.n() {
                return invalid(CoverViolation::UnknownVertex { index, vertex: v });
            }
        }
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                if c[i] != c[j] && !g.has_edge(c[i], c[j]) {
                    return invalid(CoverViolation::NotAClique {
                        index,
                        missing: (c[i].min(c[j]), c[i].max(c[j])),
                    });
                }
            }
        }
    }
    let mut covered = vec![false; g.m()];
    for c in cliques {
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                if let Some(e) = g.edge_id(c[i], c[j]) {
                    covered[e as usize] = true;
                }
            }
        }
    }
    if let Some(e) = covered.iter().position(|&b| !b) {
        let (u, v) = g.edge_endpoints(e as EdgeId);
        return invalid(CoverViolation::UncoveredEdge { u, v });
    }
    Verification {
        valid: true,
        first_violation: None,
    }
}

fn invalid(violation: CoverViolation) -> Verification {
    Verification {
        valid: false,
        first_violation: Some(violation),
    }
}

/// Exact cover of all edges for instances with at most 20 edges.
pub fn brute_force_ecc(g: &Graph) -> Result<(usize, Vec<Vec<Vertex>>)> {
    if g.m() > 20 {
        return Err(Error::OracleGuard(format!(
            "brute-force edge cover limited to 20 edges, got {}",
            g.m()
        )));
    }
    let targets: Vec<EdgeId> = (0..g.m() as EdgeId).collect();
    let cover = min_cliques_covering(g, &targets, None)?;
    Ok((cover.len(), cover))
}

/// Minimum number of cliques of g covering the given edges, at most 20 of
/// them. Any clique covering several targets can be shrunk to the targets'
/// endpoints, so the search runs inside the induced endpoint subgraph:
/// enumerate its maximal cliques (pivoting Bron-Kerbosch over bitsets),
/// then solve the set cover over target edges exactly with memoization.
/// `alive` only sanity-checks that no endpoint was removed.
pub fn min_cliques_covering(
    g: &Graph,
    targets: &[EdgeId],
    alive: Option<&[bool]>,
) -> Result<Vec<Vec<Vertex>>> {
    if targets.len() > 20 {
        return Err(Error::OracleGuard(format!(
            "edge cover oracle limited to 20 targets, got {}",
            targets.len()
        )));
    }
    if targets.is_empty() {
        return Ok(Vec::new());
    }
    let mut verts: Vec<Vertex> = Vec::with_capacity(targets.len() * 2);
    for &e in targets {
        let (u, v) = g.edge_endpoints(e);
        verts.push(u);
        verts.push(v);
    }
    verts.sort_unstable();
    verts.dedup();
    if let Some(a) = alive {
        if let Some(&dead) = verts.iter().find(|&&v| !a[v as usize]) {
            return Err(Error::Contract(format!(
                "target endpoint {dead} was removed"
            )));
        }
    }
    let k = verts.len();
    debug_assert!(k <= 40);
    let mut adj = vec![0u64; k];
    for (i, &v) in verts.iter().enumerate() {
        for &u in g.neighbors(v) {
            if let Ok(j) = verts.binary_search(&u) {
                adj[i] |= 1u64 << j;
            }
        }
    }

    let mut maximal: Vec<u64> = Vec::new();
    let full_p: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    bk_pivot(0, full_p, 0, &adj, &mut maximal);

    let mut cands: Vec<(u32, u64)> = Vec::new();
    for &bits in &maximal {
        let mut mask = 0u32;
        for (t, &e) in targets.iter().enumerate() {
            let (u, v) = g.edge_endpoints(e);
            let i = verts.binary_search(&u).unwrap();
            let j = verts.binary_search(&v).unwrap();
            if bits >> i & 1 == 1 && bits >> j & 1 == 1 {
                mask |= 1 << t;
            }
        }
        if mask != 0 {
            cands.push((mask, bits));
        }
    }
    cands.sort_unstable();
    cands.dedup_by_key(|c| c.0);

    let mut per_target: Vec<Vec<usize>> = vec![Vec::new(); targets.len()];
    for (idx, &(mask, _)) in cands.iter().enumerate() {
        let mut ms = mask;
        while ms != 0 {
            per_target[ms.trailing_zeros() as usize].push(idx);
            ms &= ms - 1;
        }
    }
    let full: u32 = if targets.len() == 32 {
        u32::MAX
    } else {
        (1u32 << targets.len()) - 1
    };
    let mut memo: HashMap<u32, (u32, usize)> = HashMap::new();
    cover_targets(full, &per_target, &cands, &mut memo);

    let mut out = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let (_, idx) = memo[&mask];
        let (cm, bits) = cands[idx];
        let mut clique = Vec::new();
        let mut b = bits;
        while b != 0 {
            clique.push(verts[b.trailing_zeros() as usize]);
            b &= b - 1;
        }
        out.push(clique);
        mask &= !cm;
    }
    Ok(out)
}

fn cover_targets(
    mask: u32,
    per_target: &[Vec<usize>],
    cands: &[(u32, u64)],
    memo: &mut HashMap<u32, (u32, usize)>,
) -> u32 {
    if mask == 0 {
        return 0;
    }
    if let Some(&(size, _)) = memo.get(&mask) {
        return size;
    }
    let t = mask.trailing_zeros() as usize;
    let mut best = u32::MAX;
    let mut best_idx = usize::MAX;
    for &idx in &per_target[t] {
        let size = 1 + cover_targets(mask & !cands[idx].0, per_target, cands, memo);
        if size < best {
            best = size;
            best_idx = idx;
        }
    }
    memo.insert(mask, (best, best_idx));
    best
}

fn bk_pivot(r: u64, p: u64, x: u64, adj: &[u64], out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let mut pivot = usize::MAX;
    let mut best = u32::MAX;
    let mut pool = p | x;
    while pool != 0 {
        let v = pool.trailing_zeros() as usize;
        pool &= pool - 1;
        let missing = (p & !adj[v]).count_ones();
        if missing < best {
            best = missing;
            pivot = v;
        }
    }
    let mut cand = p & !adj[pivot];
    let (mut p, mut x) = (p, x);
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let bit = 1u64 << v;
        bk_pivot(r | bit, p & adj[v], x & adj[v], adj, out);
        p &= !bit;
        x |= bit;
    }
}
