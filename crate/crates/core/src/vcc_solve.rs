//! Solvers for vertex clique cover: exact branch-and-reduce, an iterated
//! greedy heuristic, an independent-set lower bound, a brute-force oracle
//! for small instances, and an LP-format export of the assignment ILP.
//!
//! Covering a graph's vertices with cliques is coloring the complement, so
//! the brancher is a DSATUR-style scheme run on cliques instead of color
//! classes: the next vertex is the one incompatible with the most open
//! cliques, and it is tried in every compatible clique plus one fresh one.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::SplitMix64;
use crate::vcc_reduce::{VccReduceState, VccRules};
use std::collections::HashMap;
use std::io::Write;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveBudget {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
    /// Stop as soon as a cover of at most this size is known.
    pub target: Option<usize>,
}

impl SolveBudget {
    pub fn unlimited() -> Self {
        SolveBudget::default()
    }

    pub fn seconds(s: f64) -> Self {
        SolveBudget {
            time_limit: Some(Duration::from_secs_f64(s)),
            ..Default::default()
        }
    }

    pub fn nodes(n: u64) -> Self {
        SolveBudget {
            node_limit: Some(n),
            ..Default::default()
        }
    }

    pub fn with_target(mut self, t: usize) -> Self {
        self.target = Some(t);
        self
    }
}

#[derive(Debug)]
pub struct BudgetClock {
    start: Instant,
    limit: Option<Duration>,
}

impl BudgetClock {
    pub fn new(budget: &SolveBudget) -> Self {
        BudgetClock {
            start: Instant::now(),
            limit: budget.time_limit,
        }
    }

    pub fn expired(&self) -> bool {
        self.limit.map_or(false, |l| self.start.elapsed() >= l)
    }

    pub fn remaining(&self) -> Option<Duration> {
        self.limit.map(|l| l.saturating_sub(self.start.elapsed()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    Feasible,
    InfeasibleBudget,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct VccSolution {
    pub cliques: Vec<Vec<Vertex>>,
    pub status: SolveStatus,
    pub nodes: u64,
    pub lower_bound: usize,
}

/// Internal invariant check run on everything a solver hands back.
pub(crate) fn assert_valid_cover(g: &Graph, cover: &[Vec<Vertex>]) {
    let mut seen = vec![false; g.n()];
    for c in cover {
        assert!(g.is_clique(c), "solver produced a non-clique: {c:?}");
        for &v in c {
            seen[v as usize] = true;
        }
    }
    if let Some(v) = seen.iter().position(|&b| !b) {
        panic!("solver left vertex {v} uncovered");
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BnROptions {
    pub seed: u64,
    /// Depth interval at which an isolated remainder is split off and
    /// re-reduced as its own subproblem.
    pub reduce_interval: u32,
    pub rules: VccRules,
}

impl Default for BnROptions {
    fn default() -> Self {
        BnROptions {
            seed: 0x5eed,
            reduce_interval: 8,
            rules: VccRules::all(),
        }
    }
}

pub fn branch_and_reduce(h: &Graph, budget: &SolveBudget) -> Result<VccSolution> {
    branch_and_reduce_with(h, budget, &BnROptions::default())
}

/// Exact when the budget allows: reduces at the root, seeds the incumbent
/// with one iterated-greedy run, lower-bounds with a greedy independent
/// set, and branches DSATUR-style, splitting off any remainder that no open
/// clique can touch as an independent subproblem (which re-runs reductions).
pub fn branch_and_reduce_with(
    h: &Graph,
    budget: &SolveBudget,
    opts: &BnROptions,
) -> Result<VccSolution> {
    let clock = BudgetClock::new(budget);
    if h.n() == 0 {
        return Ok(VccSolution {
            cliques: Vec::new(),
            status: SolveStatus::Optimal,
            nodes: 0,
            lower_bound: 0,
        });
    }
    if clock.expired() {
        return Ok(VccSolution {
            cliques: Vec::new(),
            status: SolveStatus::InfeasibleBudget,
            nodes: 0,
            lower_bound: 1,
        });
    }

    let mut red = VccReduceState::new(h);
    red.reduce(&opts.rules)?;
    let (kernel, map) = red.kernel_graph();
    let off = red.taken_cliques().len() + red.fold_records().len();

    let ktarget = budget.target.map(|t| t.saturating_sub(off));
    let (kcover, kstatus, nodes, klb) = solve_kernel(&kernel, &clock, budget, ktarget, opts)?;

    let mapped: Vec<Vec<Vertex>> = kcover
        .iter()
        .map(|c| c.iter().map(|&v| map[v as usize]).collect())
        .collect();
    let cliques = red.unfold(&mapped)?;
    assert_valid_cover(h, &cliques);
    let lower_bound = off + klb;
    debug_assert!(kstatus != SolveStatus::Optimal || lower_bound == cliques.len());
    Ok(VccSolution {
        cliques,
        status: kstatus,
        nodes,
        lower_bound,
    })
}

fn solve_kernel(
    g: &Graph,
    clock: &BudgetClock,
    budget: &SolveBudget,
    target: Option<usize>,
    opts: &BnROptions,
) -> Result<(Vec<Vec<Vertex>>, SolveStatus, u64, usize)> {
    if g.n() == 0 {
        return Ok((Vec::new(), SolveStatus::Optimal, 0, 0));
    }
    let (incumbent, _) = ig_core(g, opts.seed, 256, clock, target);
    let lb = is_bound_core(g, opts.seed ^ 0x9e37_79b9, clock);
    if incumbent.len() == lb {
        return Ok((incumbent, SolveStatus::Optimal, 0, lb));
    }
    if let Some(t) = target {
        if incumbent.len() <= t {
            return Ok((incumbent, SolveStatus::Feasible, 0, lb));
        }
    }

    let mut search = Search {
        g,
        clock,
        node_limit: budget.node_limit.unwrap_or(u64::MAX),
        target,
        opts,
        open: Vec::new(),
        assigned: vec![false; g.n()],
        unassigned: g.n(),
        best: incumbent,
        nodes: 0,
        aborted: false,
        early: false,
    };
    search.run(0);
    let status = if search.aborted || search.early {
        SolveStatus::Feasible
    } else {
        SolveStatus::Optimal
    };
    let klb = if status == SolveStatus::Optimal {
        search.best.len()
    } else {
        lb
    };
    Ok((search.best, status, search.nodes, klb))
}

struct Search<'a> {
    g: &'a Graph,
    clock: &'a BudgetClock,
    node_limit: u64,
    target: Option<usize>,
    opts: &'a BnROptions,
    open: Vec<Vec<Vertex>>,
    assigned: Vec<bool>,
    unassigned: usize,
    best: Vec<Vec<Vertex>>,
    nodes: u64,
    aborted: bool,
    early: bool,
}

impl<'a> Search<'a> {
    fn compatible(&self, clique: &[Vertex], v: Vertex) -> bool {
        clique.iter().all(|&u| self.g.has_edge(u, v))
    }

    fn run(&mut self, depth: u32) {
        if self.aborted || self.early {
            return;
        }
        self.nodes += 1;
        if self.nodes >= self.node_limit || (self.nodes % 512 == 0 && self.clock.expired()) {
            self.aborted = true;
            return;
        }
        if self.unassigned == 0 {
            if self.open.len() < self.best.len() {
                self.best = self.open.clone();
                if self.target.map_or(false, |t| self.best.len() <= t) {
                    self.early = true;
                }
            }
            return;
        }

        // per-vertex compatibility with the open cliques
        let mut pick: Option<(usize, usize, Vertex)> = None; // (compat, -deg) minimized
        let mut blocked: Vec<Vertex> = Vec::new(); // no open clique fits
        for v in 0..self.g.n() as Vertex {
            if self.assigned[v as usize] {
                continue;
            }
            let compat = self
                .open
                .iter()
                .filter(|c| self.compatible(c, v))
                .count();
            if compat == 0 {
                blocked.push(v);
            }
            let key = (compat, usize::MAX - self.g.degree(v), v);
            if pick.map_or(true, |p| key < p) {
                pick = Some(key);
            }
        }

        // each member of an independent set among the blocked vertices
        // needs its own new clique
        let mut bound = greedy_independent(self.g, &blocked);
        bound = bound.max(1);
        if self.open.len() + bound >= self.best.len() {
            return;
        }

        // nothing unassigned can extend an open clique: the rest is an
        // independent subproblem, solved on its own (re-reducing it)
        if blocked.len() == self.unassigned
            && depth > 0
            && self.opts.reduce_interval > 0
            && depth % self.opts.reduce_interval == 0
        {
            self.decompose(&blocked);
            return;
        }

        let (_, _, v) = pick.expect("some vertex is unassigned");
        self.assigned[v as usize] = true;
        self.unassigned -= 1;
        for ci in 0..self.open.len() {
            if self.compatible(&self.open[ci], v) {
                self.open[ci].push(v);
                self.run(depth + 1);
                self.open[ci].pop();
                if self.aborted || self.early {
                    self.assigned[v as usize] = false;
                    self.unassigned += 1;
                    return;
                }
            }
        }
        self.open.push(vec![v]);
        self.run(depth + 1);
        self.open.pop();
        self.assigned[v as usize] = false;
        self.unassigned += 1;
    }

    fn decompose(&mut self, rest: &[Vertex]) {
        let mut index = vec![0 as Vertex; self.g.n()];
        for (i, &v) in rest.iter().enumerate() {
            index[v as usize] = i as Vertex;
        }
        let mut edges = Vec::new();
        for &v in rest {
            for &u in self.g.neighbors(v) {
                if v < u && !self.assigned[u as usize] {
                    edges.push((index[v as usize], index[u as usize]));
                }
            }
        }
        let sub = Graph::from_edges(&edges, Some(rest.len()));
        let sub_budget = SolveBudget {
            time_limit: self.clock.remaining(),
            node_limit: Some(self.node_limit.saturating_sub(self.nodes).max(1)),
            target: None,
        };
        match branch_and_reduce_with(&sub, &sub_budget, self.opts) {
            Ok(sol) => {
                self.nodes += sol.nodes;
                let total = self.open.len() + sol.cliques.len();
                if total < self.best.len() {
                    let mut cand = self.open.clone();
                    for c in &sol.cliques {
                        cand.push(c.iter().map(|&i| rest[i as usize]).collect());
                    }
                    self.best = cand;
                    if self.target.map_or(false, |t| self.best.len() <= t) {
                        self.early = true;
                    }
                }
                if sol.status != SolveStatus::Optimal {
                    self.aborted = true;
                }
            }
            Err(_) => {
                self.aborted = true;
            }
        }
    }
}

/// Greedy independent set among `among`, lowest degree first.
fn greedy_independent(g: &Graph, among: &[Vertex]) -> usize {
    if among.is_empty() {
        return 0;
    }
    let mut order: Vec<Vertex> = among.to_vec();
    order.sort_unstable_by_key(|&v| (g.degree(v), v));
    let mut chosen = vec![false; g.n()];
    let mut count = 0;
    for &v in &order {
        if g.neighbors(v).iter().all(|&u| !chosen[u as usize]) {
            chosen[v as usize] = true;
            count += 1;
        }
    }
    count
}

fn greedy_over(g: &Graph, order: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut cliques: Vec<Vec<Vertex>> = Vec::new();
    for &v in order {
        let mut placed = false;
        for c in cliques.iter_mut() {
            if c.iter().all(|&u| g.has_edge(u, v)) {
                c.push(v);
                placed = true;
                break;
            }
        }
        if !placed {
            cliques.push(vec![v]);
        }
    }
    cliques
}

/// Core of the iterated-greedy heuristic. Reinserting a cover clique by
/// clique can never need more cliques than the cover had, so plain block
/// shuffles are monotone; the occasional single-vertex extraction is the
/// move that can actually escape a local optimum, and a worse rebuild is
/// thrown away.
fn ig_core(
    g: &Graph,
    seed: u64,
    iterations: u64,
    clock: &BudgetClock,
    target: Option<usize>,
) -> (Vec<Vec<Vertex>>, u64) {
    let n = g.n();
    let mut rng = SplitMix64::new(seed);
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    rng.shuffle(&mut order);
    let mut cover = greedy_over(g, &order);
    let mut done = 0;
    for _ in 0..iterations {
        if target.map_or(false, |t| cover.len() <= t) || clock.expired() {
            break;
        }
        done += 1;
        let mut idx: Vec<u32> = (0..cover.len() as u32).collect();
        rng.shuffle(&mut idx);
        let mut extracted: Option<Vertex> = None;
        if cover.len() > 1 && rng.next_f64() < 0.2 {
            let ci = rng.next_below(cover.len());
            let vi = rng.next_below(cover[ci].len());
            extracted = Some(cover[ci][vi]);
        }
        let mut order = Vec::with_capacity(n);
        if let Some(x) = extracted {
            order.push(x);
        }
        for &i in &idx {
            for &v in &cover[i as usize] {
                if Some(v) != extracted {
                    order.push(v);
                }
            }
        }
        let cand = greedy_over(g, &order);
        if cand.len() <= cover.len() {
            cover = cand;
        }
    }
    (cover, done)
}

/// Chalupa-style iterated greedy. The node budget counts improvement
/// iterations (default 1000).
pub fn iterated_greedy(h: &Graph, seed: u64, budget: &SolveBudget) -> VccSolution {
    let clock = BudgetClock::new(budget);
    let iterations = budget.node_limit.unwrap_or(1000);
    let (cliques, done) = ig_core(h, seed, iterations, &clock, budget.target);
    assert_valid_cover(h, &cliques);
    VccSolution {
        status: SolveStatus::Feasible,
        nodes: done,
        lower_bound: if h.n() == 0 { 0 } else { 1 },
        cliques,
    }
}

fn is_bound_core(g: &Graph, seed: u64, clock: &BudgetClock) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut rng = SplitMix64::new(seed);
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    rng.shuffle(&mut order);
    let mut chosen = vec![false; n];
    for &v in &order {
        if g.neighbors(v).iter().all(|&u| !chosen[u as usize]) {
            chosen[v as usize] = true;
        }
    }
    // (1,2)-swaps: drop one chosen vertex for two of its neighbors that are
    // non-adjacent and have no other chosen neighbor
    let mut tight: Vec<u32> = (0..n as Vertex)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&u| chosen[u as usize])
                .count() as u32
        })
        .collect();
    for _pass in 0..16 {
        if clock.expired() {
            break;
        }
        let mut improved = false;
        for u in 0..n as Vertex {
            if !chosen[u as usize] {
                continue;
            }
            let cands: Vec<Vertex> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&x| !chosen[x as usize] && tight[x as usize] == 1)
                .collect();
            let mut pair = None;
            'outer: for (i, &x) in cands.iter().enumerate() {
                for &y in &cands[i + 1..] {
                    if !g.has_edge(x, y) {
                        pair = Some((x, y));
                        break 'outer;
                    }
                }
            }
            if let Some((x, y)) = pair {
                chosen[u as usize] = false;
                for &t in g.neighbors(u) {
                    tight[t as usize] -= 1;
                }
                for v in [x, y] {
                    chosen[v as usize] = true;
                    for &t in g.neighbors(v) {
                        tight[t as usize] += 1;
                    }
                }
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    chosen.iter().filter(|&&b| b).count()
}

/// A greedily built and locally improved independent set; its size is a
/// valid lower bound on the clique cover number since no clique holds two
/// independent vertices.
pub fn independent_set_lower_bound(h: &Graph, seed: u64, budget: &SolveBudget) -> usize {
    let clock = BudgetClock::new(budget);
    is_bound_core(h, seed, &clock)
}

/// Exhaustive minimum cover for instances of at most 16 vertices. Works on
/// bitmasks: the lowest uncovered vertex is put in each clique that is
/// maximal within the remaining vertex set (extending any clique to maximal
/// never hurts a partition), with memoization over the remainder.
pub fn brute_force_vcc(h: &Graph) -> Result<VccSolution> {
    let n = h.n();
    if n > 16 {
        return Err(Error::OracleGuard(format!(
            "brute-force cover limited to 16 vertices, got {n}"
        )));
    }
    let adj: Vec<u32> = (0..n as Vertex)
        .map(|v| {
            h.neighbors(v)
                .iter()
                .fold(0u32, |acc, &u| acc | (1 << u))
        })
        .collect();
    let full: u32 = (1u32 << n) - 1;
    let mut memo: HashMap<u32, (u32, u32)> = HashMap::new();
    let best = cover_mask(full, &adj, &mut memo);
    let mut cliques = Vec::with_capacity(best as usize);
    let mut mask = full;
    while mask != 0 {
        let (_, chosen) = memo[&mask];
        let mut clique = Vec::new();
        let mut c = chosen;
        while c != 0 {
            let v = c.trailing_zeros();
            clique.push(v as Vertex);
            c &= c - 1;
        }
        cliques.push(clique);
        mask &= !chosen;
    }
    assert_valid_cover(h, &cliques);
    let nodes = memo.len() as u64;
    let lb = cliques.len();
    Ok(VccSolution {
        cliques,
        status: SolveStatus::Optimal,
        nodes,
        lower_bound: lb,
    })
}

fn cover_mask(mask: u32, adj: &[u32], memo: &mut HashMap<u32, (u32, u32)>) -> u32 {
    if mask == 0 {
        return 0;
    }
    if let Some(&(size, _)) = memo.get(&mask) {
        return size;
    }
    let v = mask.trailing_zeros() as usize;
    let mut cliques = Vec::new();
    maximal_cliques_from(1 << v, adj[v] & mask, 0, adj, &mut cliques);
    let mut best = u32::MAX;
    let mut best_clique = 0u32;
    for clique in cliques {
        let size = 1 + cover_mask(mask & !clique, adj, memo);
        if size < best {
            best = size;
            best_clique = clique;
        }
    }
    memo.insert(mask, (best, best_clique));
    best
}

/// Collects the cliques containing `clique` that are maximal within
/// `clique | p`, where p holds the common neighbors still available and x
/// the skipped vertices that could still extend the clique (standard
/// take/leave enumeration; a branch dies when some skipped vertex stays
/// compatible with everything left).
fn maximal_cliques_from(clique: u32, p: u32, x: u32, adj: &[u32], out: &mut Vec<u32>) {
    if p == 0 {
        if x == 0 {
            out.push(clique);
        }
        return;
    }
    let mut xs = x;
    while xs != 0 {
        let w = xs.trailing_zeros() as usize;
        if p & adj[w] == p {
            return;
        }
        xs &= xs - 1;
    }
    let u = p.trailing_zeros() as usize;
    let rest = p & !(1 << u);
    maximal_cliques_from(clique | (1 << u), rest & adj[u], x & adj[u], adj, out);
    maximal_cliques_from(clique, rest, x | (1 << u), adj, out);
}

/// Writes the assignment model in LP format: binary x_v_c places vertex v
/// in slot c, binary y_c marks slot c used. Rows: every vertex in some
/// slot; for every non-adjacent pair, at most one of the two in any slot
/// (bounded by that slot's y); x_v_c switched off when the slot is unused;
/// slots used in order. Objective: used slots.
pub fn export_ilp<W: Write>(h: &Graph, upper: usize, w: &mut W) -> Result<()> {
    if upper == 0 {
        return Err(Error::Invalid("slot count must be positive".into()));
    }
    writeln!(w, "\\ vertex clique cover, {} vertices, {} slots", h.n(), upper)?;
    writeln!(w, "Minimize")?;
    let obj: Vec<String> = (0..upper).map(|c| format!("y_{c}")).collect();
    writeln!(w, " obj: {}", obj.join(" + "))?;
    writeln!(w, "Subject To")?;
    for v in 0..h.n() {
        let terms: Vec<String> = (0..upper).map(|c| format!("x_{v}_{c}")).collect();
        writeln!(w, " cover_{v}: {} >= 1", terms.join(" + "))?;
    }
    for u in 0..h.n() as Vertex {
        for v in u + 1..h.n() as Vertex {
            if !h.has_edge(u, v) {
                for c in 0..upper {
                    writeln!(w, " conf_{u}_{v}_{c}: x_{u}_{c} + x_{v}_{c} - y_{c} <= 0")?;
                }
            }
        }
    }
    for v in 0..h.n() {
        for c in 0..upper {
            writeln!(w, " link_{v}_{c}: x_{v}_{c} - y_{c} <= 0")?;
        }
    }
    for c in 1..upper {
        writeln!(w, " sym_{c}: y_{c} - y_{} <= 0", c - 1)?;
    }
    writeln!(w, "Binaries")?;
    let mut names = Vec::new();
    for v in 0..h.n() {
        for c in 0..upper {
            names.push(format!("x_{v}_{c}"));
        }
    }
    for c in 0..upper {
        names.push(format!("y_{c}"));
    }
    writeln!(w, " {}", names.join(" "))?;
    writeln!(w, "End")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(&edges, Some(n))
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n as u32)
            .map(|i| (i, (i + 1) % n as u32))
            .collect();
        Graph::from_edges(&edges, Some(n))
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(&edges, Some(n))
    }

    fn bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a as u32 {
            for v in 0..b as u32 {
                edges.push((u, a as u32 + v));
            }
        }
        Graph::from_edges(&edges, Some(a + b))
    }

    fn petersen() -> Graph {
        let mut edges: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        for i in 0..5u32 {
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(&edges, Some(10))
    }

    #[test]
    fn brute_force_basics() {
        assert_eq!(brute_force_vcc(&path(3)).unwrap().cliques.len(), 2);
        assert_eq!(brute_force_vcc(&cycle(5)).unwrap().cliques.len(), 3);
        assert_eq!(brute_force_vcc(&complete(6)).unwrap().cliques.len(), 1);
        assert_eq!(brute_force_vcc(&petersen()).unwrap().cliques.len(), 5);
        let empty4 = Graph::from_edges(&[], Some(4));
        assert_eq!(brute_force_vcc(&empty4).unwrap().cliques.len(), 4);
    }

    #[test]
    fn brute_force_guard() {
        let g = Graph::from_edges(&[], Some(17));
        assert!(matches!(brute_force_vcc(&g), Err(Error::OracleGuard(_))));
        let g16 = Graph::from_edges(&[], Some(16));
        assert_eq!(brute_force_vcc(&g16).unwrap().cliques.len(), 16);
    }

    #[test]
    fn branch_and_reduce_small_shapes() {
        let budget = SolveBudget::unlimited();
        let sol = branch_and_reduce(&cycle(5), &budget).unwrap();
        assert_eq!(sol.cliques.len(), 3);
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_eq!(sol.lower_bound, 3);

        let sol = branch_and_reduce(&complete(6), &budget).unwrap();
        assert_eq!(sol.cliques.len(), 1);

        let empty4 = Graph::from_edges(&[], Some(4));
        let sol = branch_and_reduce(&empty4, &budget).unwrap();
        assert_eq!(sol.cliques.len(), 4);

        let none = Graph::from_edges(&[], Some(0));
        let sol = branch_and_reduce(&none, &budget).unwrap();
        assert!(sol.cliques.is_empty());
        assert_eq!(sol.status, SolveStatus::Optimal);
    }

    #[test]
    fn branch_and_reduce_matches_brute_on_catalog() {
        let budget = SolveBudget::unlimited();
        let mut graphs: Vec<Graph> = Vec::new();
        for n in 2..=8 {
            graphs.push(path(n));
            graphs.push(complete(n));
        }
        for n in 3..=9 {
            graphs.push(cycle(n));
        }
        graphs.push(bipartite(3, 3));
        graphs.push(bipartite(2, 4));
        for k in 1..=6 {
            graphs.push(bipartite(1, k));
        }
        graphs.push(petersen());
        for g in &graphs {
            let exact = brute_force_vcc(g).unwrap().cliques.len();
            let sol = branch_and_reduce(g, &budget).unwrap();
            assert_eq!(sol.cliques.len(), exact, "n={} m={}", g.n(), g.m());
            assert_eq!(sol.status, SolveStatus::Optimal);
        }
        assert_eq!(
            brute_force_vcc(&bipartite(3, 3)).unwrap().cliques.len(),
            3
        );
    }

    #[test]
    fn branch_and_reduce_matches_brute_on_randoms() {
        let budget = SolveBudget::unlimited();
        for seed in 0..40u64 {
            let n = 8 + (seed % 5) as usize;
            let p = [0.2, 0.4, 0.6][(seed % 3) as usize];
            let g = crate::io::gen_gnp(n, p, seed);
            let exact = brute_force_vcc(&g).unwrap().cliques.len();
            let sol = branch_and_reduce(&g, &budget).unwrap();
            assert_eq!(sol.cliques.len(), exact, "seed {seed}");
            assert_eq!(sol.status, SolveStatus::Optimal);
            assert_eq!(sol.lower_bound, exact);
        }
    }

    #[test]
    fn exact_on_disjoint_odd_cycles_with_short_split_interval() {
        // two C5s; nothing reduces, so the search must branch, and a short
        // interval makes it exercise the independent-remainder split
        let mut edges: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 1) % 5)));
        let g = Graph::from_edges(&edges, Some(10));
        let opts = BnROptions {
            reduce_interval: 2,
            ..Default::default()
        };
        let sol = branch_and_reduce_with(&g, &SolveBudget::unlimited(), &opts).unwrap();
        assert_eq!(sol.cliques.len(), 6);
        assert_eq!(sol.status, SolveStatus::Optimal);
    }

    #[test]
    fn node_budget_degrades_to_feasible() {
        let g = petersen();
        let sol = branch_and_reduce(&g, &SolveBudget::nodes(1)).unwrap();
        assert_eq!(sol.status, SolveStatus::Feasible);
        assert!(sol.cliques.len() >= 5);
        assert!(sol.lower_bound <= sol.cliques.len());
    }

    #[test]
    fn target_stops_early() {
        let sol = branch_and_reduce(&cycle(5), &SolveBudget::unlimited().with_target(5)).unwrap();
        assert!(sol.cliques.len() <= 5);
        assert_eq!(sol.status, SolveStatus::Feasible);
    }

    #[test]
    fn iterated_greedy_reaches_known_optima() {
        let budget = SolveBudget::unlimited();
        for seed in [1u64, 7, 42] {
            assert_eq!(iterated_greedy(&cycle(5), seed, &budget).cliques.len(), 3);
            assert_eq!(iterated_greedy(&complete(6), seed, &budget).cliques.len(), 1);
            assert_eq!(
                iterated_greedy(&bipartite(3, 3), seed, &budget).cliques.len(),
                3
            );
        }
    }

    #[test]
    fn iterated_greedy_never_beats_exact() {
        let budget = SolveBudget::unlimited();
        for seed in 0..25u64 {
            let g = crate::io::gen_gnp(10, 0.35, seed);
            let exact = brute_force_vcc(&g).unwrap().cliques.len();
            let heur = iterated_greedy(&g, seed ^ 0xabc, &budget);
            assert!(heur.cliques.len() >= exact, "seed {seed}");
            assert_eq!(heur.status, SolveStatus::Feasible);
        }
    }

    #[test]
    fn iterated_greedy_deterministic_per_seed() {
        let g = crate::io::gen_gnp(30, 0.3, 5);
        let budget = SolveBudget::nodes(200);
        let a = iterated_greedy(&g, 11, &budget);
        let b = iterated_greedy(&g, 11, &budget);
        assert_eq!(a.cliques, b.cliques);
        let c = iterated_greedy(&g, 12, &budget);
        assert!(c.cliques.len() >= 1);
    }

    #[test]
    fn is_bound_values_and_validity() {
        let budget = SolveBudget::unlimited();
        assert_eq!(independent_set_lower_bound(&complete(6), 1, &budget), 1);
        assert_eq!(independent_set_lower_bound(&cycle(5), 3, &budget), 2);
        let empty4 = Graph::from_edges(&[], Some(4));
        assert_eq!(independent_set_lower_bound(&empty4, 9, &budget), 4);
        for seed in 0..30u64 {
            let g = crate::io::gen_gnp(11, 0.3, seed);
            let theta = brute_force_vcc(&g).unwrap().cliques.len();
            let lb = independent_set_lower_bound(&g, seed, &budget);
            assert!(lb <= theta, "seed {seed}: {lb} > {theta}");
            assert!(lb >= 1 || g.n() == 0);
        }
    }

    /// Tiny LP-format reader for the export tests: collects variables,
    /// linear rows, and the objective.
    struct LpModel {
        obj: Vec<String>,
        rows: Vec<(Vec<(i32, String)>, String, i32)>,
        binaries: Vec<String>,
    }

    fn parse_lp(text: &str) -> LpModel {
        let mut obj = Vec::new();
        let mut rows = Vec::new();
        let mut binaries = Vec::new();
        let mut section = "";
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('\\') {
                continue;
            }
            match line {
                "Minimize" => {
                    section = "obj";
                    continue;
                }
                "Subject To" => {
                    section = "rows";
                    continue;
                }
                "Binaries" => {
                    section = "bin";
                    continue;
                }
                "End" => break,
                _ => {}
            }
            match section {
                "obj" => {
                    let expr = line.split(':').nth(1).unwrap();
                    obj.extend(
                        expr.split('+')
                            .map(|t| t.trim().to_string())
                            .filter(|t| !t.is_empty()),
                    );
                }
                "rows" => {
                    let expr = line.split(':').nth(1).unwrap();
                    let (lhs, op, rhs) = if let Some(p) = expr.find(">=") {
                        (&expr[..p], ">=", expr[p + 2..].trim())
                    } else {
                        let p = expr.find("<=").unwrap();
                        (&expr[..p], "<=", expr[p + 2..].trim())
                    };
                    let mut terms = Vec::new();
                    let mut sign = 1;
                    for tok in lhs.split_whitespace() {
                        match tok {
                            "+" => sign = 1,
                            "-" => sign = -1,
                            name => {
                                terms.push((sign, name.to_string()));
                                sign = 1;
                            }
                        }
                    }
                    rows.push((terms, op.to_string(), rhs.parse().unwrap()));
                }
                "bin" => {
                    binaries.extend(line.split_whitespace().map(|s| s.to_string()));
                }
                _ => {}
            }
        }
        LpModel {
            obj,
            rows,
            binaries,
        }
    }

    fn lp_optimum(model: &LpModel) -> Option<u32> {
        let vars = &model.binaries;
        let k = vars.len();
        assert!(k <= 20, "test model too large to enumerate");
        let index: HashMap<&str, usize> =
            vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut best = None;
        for bits in 0u32..(1 << k) {
            let val = |name: &str| (bits >> index[name]) & 1;
            let feasible = model.rows.iter().all(|(terms, op, rhs)| {
                let lhs: i32 = terms
                    .iter()
                    .map(|(c, name)| c * val(name) as i32)
                    .sum();
                match op.as_str() {
                    ">=" => lhs >= *rhs,
                    _ => lhs <= *rhs,
                }
            });
            if feasible {
                let cost: u32 = model.obj.iter().map(|name| val(name)).sum();
                best = Some(best.map_or(cost, |b: u32| b.min(cost)));
            }
        }
        best
    }

    #[test]
    fn ilp_k3_single_slot() {
        let g = complete(3);
        let mut buf = Vec::new();
        export_ilp(&g, 1, &mut buf).unwrap();
        let model = parse_lp(std::str::from_utf8(&buf).unwrap());
        let xs = model.binaries.iter().filter(|v| v.starts_with("x_")).count();
        let ys = model.binaries.iter().filter(|v| v.starts_with("y_")).count();
        assert_eq!((xs, ys), (3, 1));
        let conf = model
            .rows
            .iter()
            .filter(|(terms, _, _)| terms.len() == 3)
            .filter(|(terms, _, _)| terms.iter().filter(|(_, n)| n.starts_with("x_")).count() == 2)
            .count();
        assert_eq!(conf, 0, "all pairs adjacent, no conflict rows");
        assert_eq!(lp_optimum(&model), Some(1));
    }

    #[test]
    fn ilp_p3_two_slots_solves_to_two() {
        let g = path(3);
        let mut buf = Vec::new();
        export_ilp(&g, 2, &mut buf).unwrap();
        let model = parse_lp(std::str::from_utf8(&buf).unwrap());
        assert_eq!(lp_optimum(&model), Some(2));
    }

    #[test]
    fn ilp_edgeless_pair() {
        let g = Graph::from_edges(&[], Some(2));
        let mut buf = Vec::new();
        export_ilp(&g, 2, &mut buf).unwrap();
        let model = parse_lp(std::str::from_utf8(&buf).unwrap());
        assert_eq!(lp_optimum(&model), Some(2));
    }

    #[test]
    fn lower_bound_field_sane() {
        let budget = SolveBudget::unlimited();
        for seed in 0..10u64 {
            let g = crate::io::gen_gnp(12, 0.3, seed);
            let sol = branch_and_reduce(&g, &budget).unwrap();
            assert!(sol.lower_bound <= sol.cliques.len());
            if sol.status == SolveStatus::Optimal {
                assert_eq!(sol.lower_bound, sol.cliques.len());
            }
        }
    }
}
