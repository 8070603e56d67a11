//! In-place reductions for the edge clique cover problem.
//!
//! `CoverState` tracks, per alive edge {u, v}, the common neighborhood
//! cn(u, v) restricted to non-removed vertices and the count
//! c(u, v) = |E(G[cn(u, v)])|. Both are maintained differentially as rule 1
//! removes vertices, which is what makes repeated sweeps affordable.
//!
//! Rules:
//! 1. a vertex whose incident edges are all covered leaves the graph;
//! 2. an uncovered edge with c = C(|cn|, 2) lies in exactly one maximal
//!    clique, cn together with the endpoints, which is forced into the cover;
//! 3. (rule id 5 on the CLI) for an uncovered edge {u, w}, collect the
//!    endpoints of every uncovered edge that forms a clique with {u, w};
//!    if that set is itself a clique, force it. Covered edges may appear
//!    inside the forced clique, so this fires where rule 2 cannot.

use crate::error::{Error, Result};
use crate::graph::{self, EdgeId, Graph, Vertex};
use crate::trace::{TraceEvent, TraceRule};
use std::time::Instant;

/// Which ECC rules a reduction run may apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct EccRules {
    pub rule1: bool,
    pub rule2: bool,
    pub rule5: bool,
}

impl EccRules {
    pub fn all() -> Self {
        EccRules {
            rule1: true,
            rule2: true,
            rule5: true,
        }
    }

    /// Rules 1 and 2 only.
    pub fn gramm() -> Self {
        EccRules {
            rule1: true,
            rule2: true,
            rule5: false,
        }
    }

    pub fn none() -> Self {
        EccRules {
            rule1: false,
            rule2: false,
            rule5: false,
        }
    }
}

impl Default for EccRules {
    fn default() -> Self {
        EccRules::all()
    }
}

#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct ReduceStats {
    pub rounds: u32,
    pub rule1_removed: u64,
    pub rule2_cliques: u64,
    pub rule5_cliques: u64,
    pub rule2_edges_covered: u64,
    pub rule5_edges_covered: u64,
    pub t_rule1: f64,
    pub t_rule2: f64,
    pub t_rule5: f64,
}

#[derive(Debug)]
pub struct CoverState<'g> {
    g: &'g Graph,
    covered: Vec<bool>,
    removed: Vec<bool>,
    /// Number of uncovered edges incident to each vertex.
    uncovered_deg: Vec<u32>,
    /// Sorted alive common neighborhood per edge.
    cn: Vec<Vec<Vertex>>,
    /// Edge count inside cn per edge.
    c: Vec<u32>,
    forced: Vec<Vec<Vertex>>,
    uncovered: usize,
    trace: Option<Vec<TraceEvent>>,
    step: u64,
}

impl<'g> CoverState<'g> {
    /// Builds the initial state: nothing covered, nothing removed, cn filled
    /// by one triangle enumeration and c by one 4-clique enumeration (an
    /// edge inside a common neighborhood closes a 4-clique with the edge's
    /// endpoints, and each 4-clique contributes one such pair to each of its
    /// six edges).
    pub fn new(g: &'g Graph) -> CoverState<'g> {
        let m = g.m();
        let ord = g.degeneracy_order();
        let mut cn: Vec<Vec<Vertex>> = vec![Vec::new(); m];
        graph::for_each_triangle(g, &ord, |a, b, w, e_ab, e_aw, e_bw| {
            cn[e_ab as usize].push(w);
            cn[e_aw as usize].push(b);
            cn[e_bw as usize].push(a);
        });
        for list in &mut cn {
            list.sort_unstable();
        }
        let mut c = vec![0u32; m];
        graph::for_each_four_clique(g, &ord, |_, eids| {
            for e in eids {
                c[e as usize] += 1;
            }
        });
        let uncovered_deg = (0..g.n()).map(|v| g.degree(v as Vertex) as u32).collect();
        CoverState {
            g,
            covered: vec![false; m],
            removed: vec![false; g.n()],
            uncovered_deg,
            cn,
            c,
            forced: Vec::new(),
            uncovered: m,
            trace: None,
            step: 0,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn uncovered_count(&self) -> usize {
        self.uncovered
    }

    pub fn is_covered(&self, e: EdgeId) -> bool {
        self.covered[e as usize]
    }

    pub fn is_removed(&self, v: Vertex) -> bool {
        self.removed[v as usize]
    }

    pub fn forced_cliques(&self) -> &[Vec<Vertex>] {
        &self.forced
    }

    pub fn cn(&self, e: EdgeId) -> &[Vertex] {
        &self.cn[e as usize]
    }

    pub fn c(&self, e: EdgeId) -> u32 {
        self.c[e as usize]
    }

    /// Ascending ids of the edges still uncovered.
    pub fn uncovered_edges(&self) -> Vec<EdgeId> {
        (0..self.g.m() as EdgeId)
            .filter(|&e| !self.covered[e as usize])
            .collect()
    }

    pub fn enable_trace(&mut self) {
        if self.trace.is_none() {
            self.trace = Some(Vec::new());
        }
    }

    pub fn trace(&self) -> Option<&[TraceEvent]> {
        self.trace.as_deref()
    }

    fn record(&mut self, rule: TraceRule, tv: Option<Vertex>, te: Option<EdgeId>, clique: &[Vertex]) {
        self.step += 1;
        if let Some(t) = self.trace.as_mut() {
            t.push(TraceEvent {
                step: self.step,
                rule,
                trigger_vertex: tv,
                trigger_edge: te.map(|e| self.g.edge_endpoints(e)),
                clique: clique.to_vec(),
            });
        }
    }

    /// Adds a clique of the original graph to the cover and marks its edges
    /// covered. Returns how many edges were newly covered. The set must be a
    /// clique over non-removed vertices.
    pub fn apply_clique(&mut self, clique: &[Vertex]) -> Result<usize> {
        let mut set = clique.to_vec();
        set.sort_unstable();
        set.dedup();
        if let Some(&v) = set.iter().find(|&&v| self.removed[v as usize]) {
            return Err(Error::Contract(format!(
                "apply_clique: vertex {v} is removed"
            )));
        }
        if !self.g.is_clique(&set) {
            return Err(Error::Contract(format!(
                "apply_clique: {set:?} is not a clique"
            )));
        }
        let newly = self.cover_clique_edges(&set);
        self.forced.push(set.clone());
        self.record(TraceRule::External, None, None, &set);
        Ok(newly)
    }

    fn cover_clique_edges(&mut self, set: &[Vertex]) -> usize {
        let mut newly = 0;
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                let e = self.g.edge_id(u, v).expect("clique pair must be an edge");
                if !self.covered[e as usize] {
                    self.covered[e as usize] = true;
                    self.uncovered -= 1;
                    self.uncovered_deg[u as usize] -= 1;
                    self.uncovered_deg[v as usize] -= 1;
                    newly += 1;
                }
            }
        }
        newly
    }

    fn force(&mut self, rule: TraceRule, trigger: EdgeId, set: Vec<Vertex>) -> usize {
        let newly = self.cover_clique_edges(&set);
        self.record(rule, None, Some(trigger), &set);
        self.forced.push(set);
        newly
    }

    /// Rule 1. Removes every vertex whose incident edges are all covered,
    /// in ascending vertex id order, updating cn and c of untouched edges
    /// differentially. Returns the number of removed vertices.
    pub fn rule1_sweep(&mut self) -> usize {
        let mut removed_now = 0;
        for v in 0..self.g.n() as Vertex {
            if !self.removed[v as usize] && self.uncovered_deg[v as usize] == 0 {
                self.remove_vertex(v);
                self.record(TraceRule::EccCoveredVertex, Some(v), None, &[]);
                removed_now += 1;
            }
        }
        removed_now
    }

    fn remove_vertex(&mut self, v: Vertex) {
        self.removed[v as usize] = true;
        let nv: Vec<Vertex> = self
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| !self.removed[u as usize])
            .collect();
        // Every alive edge {a, b} with a, b in N(v) holds v in its cn.
        for (idx, &a) in nv.iter().enumerate() {
            let mut i = 0;
            let nbrs = self.g.neighbors(a);
            let eids = self.g.neighbor_edge_ids(a);
            let rest = &nv[idx + 1..];
            let mut j = 0;
            while i < nbrs.len() && j < rest.len() {
                match nbrs[i].cmp(&rest[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let e = eids[i] as usize;
                        let list = &mut self.cn[e];
                        let p = list
                            .binary_search(&v)
                            .expect("v must sit in cn of an edge between its neighbors");
                        list.remove(p);
                        self.c[e] -= count_common(list, self.g.neighbors(v));
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }

    /// Rule 2. For each uncovered edge whose common neighborhood is a
    /// clique (c = C(|cn|, 2)), forces cn plus the endpoints. Scans edges in
    /// ascending id; edges covered earlier in the same sweep are skipped.
    /// Returns the number of cliques forced.
    pub fn rule2_sweep(&mut self) -> usize {
        let mut fired = 0;
        for e in 0..self.g.m() as EdgeId {
            if self.covered[e as usize] {
                continue;
            }
            let k = self.cn[e as usize].len() as u64;
            if self.c[e as usize] as u64 == k * (k.saturating_sub(1)) / 2 {
                let (u, v) = self.g.edge_endpoints(e);
                let mut set = self.cn[e as usize].clone();
                set.push(u);
                set.push(v);
                set.sort_unstable();
                self.force(TraceRule::EccUniqueMaxClique, e, set);
                fired += 1;
            }
        }
        fired
    }

    /// Rule 5 on the CLI. For each uncovered edge {u, w}, let C hold u, w
    /// and the endpoints of every uncovered edge that spans a clique with
    /// {u, w} (a triangle through u or w, or the opposite side of a
    /// 4-clique). When C is a clique it is forced. Subsumes rule 2 triggers
    /// and additionally fires when only covered edges break uniqueness.
    pub fn rule5_sweep(&mut self) -> usize {
        let mut fired = 0;
        for e in 0..self.g.m() as EdgeId {
            if self.covered[e as usize] {
                continue;
            }
            let (u, w) = self.g.edge_endpoints(e);
            let cnl = &self.cn[e as usize];
            let mut set = vec![u, w];
            for &y in cnl {
                let e_uy = self.g.edge_id(u, y).expect("cn member adjacent to u");
                let e_wy = self.g.edge_id(w, y).expect("cn member adjacent to w");
                if !self.covered[e_uy as usize] || !self.covered[e_wy as usize] {
                    set.push(y);
                }
            }
            for i in 0..cnl.len() {
                for j in i + 1..cnl.len() {
                    if let Some(e_xy) = self.g.edge_id(cnl[i], cnl[j]) {
                        if !self.covered[e_xy as usize] {
                            set.push(cnl[i]);
                            set.push(cnl[j]);
                        }
                    }
                }
            }
            set.sort_unstable();
            set.dedup();
            if self.g.is_clique(&set) {
                self.force(TraceRule::EccEdgeSimplicial, e, set);
                fired += 1;
            }
        }
        fired
    }

    /// Alternates the enabled rule sweeps until a full round fires nothing.
    /// Round order: rule 2, rule 5, rule 1. Idempotent on a fixpoint.
    pub fn reduce(&mut self, rules: &EccRules) -> ReduceStats {
        let mut stats = ReduceStats::default();
        loop {
            let mut fired = 0u64;
            if rules.rule2 {
                let t = Instant::now();
                let before = self.uncovered;
                let f = self.rule2_sweep();
                stats.t_rule2 += t.elapsed().as_secs_f64();
                stats.rule2_cliques += f as u64;
                stats.rule2_edges_covered += (before - self.uncovered) as u64;
                fired += f as u64;
            }
            if rules.rule5 {
                let t = Instant::now();
                let before = self.uncovered;
                let f = self.rule5_sweep();
                stats.t_rule5 += t.elapsed().as_secs_f64();
                stats.rule5_cliques += f as u64;
                stats.rule5_edges_covered += (before - self.uncovered) as u64;
                fired += f as u64;
            }
            if rules.rule1 {
                let t = Instant::now();
                let f = self.rule1_sweep();
                stats.t_rule1 += t.elapsed().as_secs_f64();
                stats.rule1_removed += f as u64;
                fired += f as u64;
            }
            stats.rounds += 1;
            if fired == 0 {
                break;
            }
        }
        stats
    }

    /// Recomputes cn and c from scratch by sorted-adjacency intersection and
    /// pairwise adjacency tests (independent of the triangle and 4-clique
    /// enumeration used by `new`), and checks them plus the uncovered
    /// counters against the maintained state.
    pub fn verify_consistency(&self) -> Result<()> {
        let alive = |v: Vertex| !self.removed[v as usize];
        for e in 0..self.g.m() as EdgeId {
            let (u, v) = self.g.edge_endpoints(e);
            if !alive(u) || !alive(v) {
                if !self.covered[e as usize] {
                    return Err(Error::Inconsistent(format!(
                        "edge {e} has a removed endpoint but is uncovered"
                    )));
                }
                continue;
            }
            let expect_cn: Vec<Vertex> = graph::intersect_sorted(
                self.g.neighbors(u),
                self.g.neighbors(v),
            )
            .into_iter()
            .filter(|&w| alive(w))
            .collect();
            if expect_cn != self.cn[e as usize] {
                return Err(Error::Inconsistent(format!(
                    "cn mismatch on edge {e}: expected {expect_cn:?}, have {:?}",
                    self.cn[e as usize]
                )));
            }
            let mut expect_c = 0u32;
            for i in 0..expect_cn.len() {
                for j in i + 1..expect_cn.len() {
                    if self.g.has_edge(expect_cn[i], expect_cn[j]) {
                        expect_c += 1;
                    }
                }
            }
            if expect_c != self.c[e as usize] {
                return Err(Error::Inconsistent(format!(
                    "c mismatch on edge {e}: expected {expect_c}, have {}",
                    self.c[e as usize]
                )));
            }
        }
        let covered_count = self.covered.iter().filter(|&&b| b).count();
        if covered_count + self.uncovered != self.g.m() {
            return Err(Error::Inconsistent("uncovered counter drifted".into()));
        }
        for v in 0..self.g.n() as Vertex {
            let expect: u32 = self
                .g
                .neighbor_edge_ids(v)
                .iter()
                .filter(|&&e| !self.covered[e as usize])
                .count() as u32;
            if expect != self.uncovered_deg[v as usize] {
                return Err(Error::Inconsistent(format!(
                    "uncovered degree of {v} drifted"
                )));
            }
            if self.removed[v as usize] && expect != 0 {
                return Err(Error::Inconsistent(format!(
                    "removed vertex {v} still has uncovered edges"
                )));
            }
        }
        Ok(())
    }
}

fn count_common(a: &[Vertex], b: &[Vertex]) -> u32 {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}
