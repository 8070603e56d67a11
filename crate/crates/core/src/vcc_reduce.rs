//! Reductions for vertex clique cover instances.
//!
//! Three rules, each preserving the clique cover number exactly:
//! * simplicial: a vertex whose closed neighborhood is a clique gives away
//!   that clique;
//! * crown: a maximum matching on the bipartite double cover yields the
//!   half-integral relaxation; the vertices valued 0 form an independent set
//!   I whose neighborhood H it dominates, and H matched into I plus leftover
//!   singletons belong to some minimum cover;
//! * degree-2 fold: a degree-2 vertex v with non-adjacent neighbors u, w is
//!   contracted with them into one fresh vertex, shrinking the instance by
//!   two, provided no edge runs between N(u)-only and N(w)-only vertices
//!   (otherwise the contraction could merge two cliques that must stay
//!   separate).
//!
//! Folds mutate an adjacency overlay; the input graph itself is never
//! touched. Every removal and fold carries a step number so `unfold` can
//! replay history strictly backwards, which matters when a clique taken
//! late contains a fold's replacement vertex.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::matching::{hopcroft_karp, Matching};
use crate::trace::{TraceEvent, TraceRule};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct VccRules {
    pub simplicial: bool,
    pub fold2: bool,
    pub crown: bool,
    /// Vertices above this degree are skipped by the simplicial rule;
    /// 0 lifts the cap.
    pub simplicial_degree_cap: u32,
}

impl VccRules {
    pub fn all() -> Self {
        VccRules {
            simplicial: true,
            fold2: true,
            crown: true,
            simplicial_degree_cap: 64,
        }
    }

    pub fn none() -> Self {
        VccRules {
            simplicial: false,
            fold2: false,
            crown: false,
            simplicial_degree_cap: 64,
        }
    }
}

impl Default for VccRules {
    fn default() -> Self {
        VccRules::all()
    }
}

#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct VccReduceStats {
    pub rounds: u32,
    pub simplicial_cliques: u64,
    pub folds: u64,
    pub crown_cliques: u64,
    pub crown_vertices_removed: u64,
    pub t_simplicial: f64,
    pub t_fold: f64,
    pub t_crown: f64,
}

#[derive(Debug, Clone)]
pub struct TakenClique {
    pub step: u64,
    pub clique: Vec<Vertex>,
}

#[derive(Debug, Clone)]
pub struct FoldRecord {
    pub step: u64,
    pub v: Vertex,
    pub u: Vertex,
    pub w: Vertex,
    pub v_prime: Vertex,
    /// Alive neighbors of u at fold time, without v, sorted.
    pub n_u: Vec<Vertex>,
    /// Alive neighbors of w at fold time, without v, sorted.
    pub n_w: Vec<Vertex>,
}

/// A crown decomposition: `independent` may be removed after covering it
/// with the matched pairs and leftover singletons.
#[derive(Debug, Clone)]
pub struct Crown {
    pub independent: Vec<Vertex>,
    pub head: Vec<Vertex>,
    /// (head vertex, its crown partner), one entry per head vertex.
    pub matching: Vec<(Vertex, Vertex)>,
    pub unmatched: Vec<Vertex>,
}

/// Mutable reduction state over its own adjacency copy; the input graph is
/// not borrowed past construction.
#[derive(Debug)]
pub struct VccReduceState {
    adj: Vec<Vec<Vertex>>,
    alive: Vec<bool>,
    taken: Vec<TakenClique>,
    folds: Vec<FoldRecord>,
    step: u64,
    alive_count: usize,
    trace: Option<Vec<TraceEvent>>,
}

impl VccReduceState {
    pub fn new(h: &Graph) -> VccReduceState {
        let adj: Vec<Vec<Vertex>> = (0..h.n() as Vertex).map(|v| h.neighbors(v).to_vec()).collect();
        VccReduceState {
            adj,
            alive: vec![true; h.n()],
            taken: Vec::new(),
            folds: Vec::new(),
            step: 0,
            alive_count: h.n(),
            trace: None,
        }
    }

    pub fn kernel_size(&self) -> usize {
        self.alive_count
    }

    pub fn is_alive(&self, v: Vertex) -> bool {
        self.alive[v as usize]
    }

    /// Total id space, original vertices plus fold replacements.
    pub fn id_count(&self) -> usize {
        self.adj.len()
    }

    pub fn degree_of(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors_of(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn taken_cliques(&self) -> &[TakenClique] {
        &self.taken
    }

    pub fn fold_records(&self) -> &[FoldRecord] {
        &self.folds
    }

    pub fn enable_trace(&mut self) {
        if self.trace.is_none() {
            self.trace = Some(Vec::new());
        }
    }

    pub fn trace(&self) -> Option<&[TraceEvent]> {
        self.trace.as_deref()
    }

    fn overlay_has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.adj[u as usize].len() <= self.adj[v as usize].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    fn kill(&mut self, v: Vertex) {
        debug_assert!(self.alive[v as usize]);
        self.alive[v as usize] = false;
        self.alive_count -= 1;
        let nbrs = std::mem::take(&mut self.adj[v as usize]);
        for &u in &nbrs {
            let row = &mut self.adj[u as usize];
            if let Ok(p) = row.binary_search(&v) {
                row.remove(p);
            }
        }
    }

    fn record(&mut self, rule: TraceRule, tv: Option<Vertex>, clique: &[Vertex]) {
        if let Some(t) = self.trace.as_mut() {
            t.push(TraceEvent {
                step: self.step,
                rule,
                trigger_vertex: tv,
                trigger_edge: None,
                clique: clique.to_vec(),
            });
        }
    }

    fn take_clique(&mut self, rule: TraceRule, trigger: Option<Vertex>, clique: Vec<Vertex>) {
        debug_assert!(clique.iter().all(|&v| self.alive[v as usize]));
        debug_assert!((0..clique.len()).all(|i| {
            (i + 1..clique.len()).all(|j| self.overlay_has_edge(clique[i], clique[j]))
        }));
        self.step += 1;
        self.record(rule, trigger, &clique);
        for &v in &clique {
            self.kill(v);
        }
        self.taken.push(TakenClique {
            step: self.step,
            clique,
        });
    }

    /// Removes every vertex whose closed neighborhood is a clique (within
    /// the degree cap), taking that neighborhood into the cover. Internally
    /// repeats until a full pass fires nothing. Returns cliques taken.
    pub fn simplicial_sweep(&mut self, degree_cap: u32) -> usize {
        let mut total = 0;
        loop {
            let mut fired = 0;
            for v in 0..self.adj.len() as Vertex {
                if !self.alive[v as usize] {
                    continue;
                }
                let deg = self.adj[v as usize].len();
                if degree_cap != 0 && deg > degree_cap as usize {
                    continue;
                }
                let nbrs = &self.adj[v as usize];
                let mut clique = true;
                'pairs: for i in 0..nbrs.len() {
                    for j in i + 1..nbrs.len() {
                        if !self.overlay_has_edge(nbrs[i], nbrs[j]) {
                            clique = false;
                            break 'pairs;
                        }
                    }
                }
                if clique {
                    let mut cl = self.adj[v as usize].clone();
                    cl.push(v);
                    cl.sort_unstable();
                    self.take_clique(TraceRule::VccSimplicial, Some(v), cl);
                    fired += 1;
                }
            }
            total += fired;
            if fired == 0 {
                break;
            }
        }
        total
    }

    /// Computes the crown of the current overlay from the half-integral
    /// relaxation: vertices valued 0 by the bipartite double cover matching
    /// form `independent`, those valued 1 its neighborhood `head`. The
    /// returned matching saturates the head (guaranteed by LP optimality).
    /// An empty `independent` means no crown exists.
    pub fn find_crown(&self) -> Result<Crown> {
        let ids: Vec<Vertex> = (0..self.adj.len() as Vertex)
            .filter(|&v| self.alive[v as usize])
            .collect();
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in ids.iter().enumerate() {
            index[v as usize] = i;
        }
        let k = ids.len();
        // double cover: left copy and right copy of every alive vertex,
        // each overlay edge {u, v} giving L_u-R_v and L_v-R_u
        let mut cover_adj: Vec<Vec<u32>> = vec![Vec::new(); k];
        for (i, &v) in ids.iter().enumerate() {
            for &u in &self.adj[v as usize] {
                cover_adj[i].push(index[u as usize] as u32);
            }
        }
        let m = hopcroft_karp(&cover_adj, k);

        // Koenig: alternate from the unmatched left copies; non-matching
        // edges go left to right, matching edges come back
        let mut z_left = vec![false; k];
        let mut z_right = vec![false; k];
        let mut stack: Vec<u32> = (0..k as u32)
            .filter(|&i| m.pair_left[i as usize].is_none())
            .collect();
        for &i in &stack {
            z_left[i as usize] = true;
        }
        while let Some(i) = stack.pop() {
            for &j in &cover_adj[i as usize] {
                if !z_right[j as usize] {
                    z_right[j as usize] = true;
                    if let Some(i2) = m.pair_right[j as usize] {
                        if !z_left[i2 as usize] {
                            z_left[i2 as usize] = true;
                            stack.push(i2);
                        }
                    }
                }
            }
        }

        let mut independent = Vec::new();
        let mut head = Vec::new();
        for (i, &v) in ids.iter().enumerate() {
            if z_left[i] && !z_right[i] {
                independent.push(v);
            } else if !z_left[i] && z_right[i] {
                head.push(v);
            }
        }
        debug_assert!((0..independent.len()).all(|a| {
            (a + 1..independent.len())
                .all(|b| !self.overlay_has_edge(independent[a], independent[b]))
        }));

        // saturate the head into the crown with a second matching
        let mut in_ind = vec![false; self.adj.len()];
        for &v in &independent {
            in_ind[v as usize] = true;
        }
        let ind_index: std::collections::HashMap<Vertex, u32> = independent
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let head_adj: Vec<Vec<u32>> = head
            .iter()
            .map(|&hv| {
                self.adj[hv as usize]
                    .iter()
                    .filter(|&&u| in_ind[u as usize])
                    .map(|u| ind_index[u])
                    .collect()
            })
            .collect();
        let hm: Matching = hopcroft_karp(&head_adj, independent.len());
        if hm.size != head.len() {
            return Err(Error::Inconsistent(format!(
                "crown head of size {} only matched {} times into the crown",
                head.len(),
                hm.size
            )));
        }
        let mut matched_ind = vec![false; independent.len()];
        let mut matching = Vec::with_capacity(head.len());
        for (hi, &hv) in head.iter().enumerate() {
            let iv = hm.pair_left[hi].expect("head is saturated");
            matched_ind[iv as usize] = true;
            matching.push((hv, independent[iv as usize]));
        }
        let unmatched: Vec<Vertex> = independent
            .iter()
            .enumerate()
            .filter(|&(i, _)| !matched_ind[i])
            .map(|(_, &v)| v)
            .collect();
        Ok(Crown {
            independent,
            head,
            matching,
            unmatched,
        })
    }

    /// Removes the crown: one 2-clique per matched head vertex, one
    /// singleton per leftover crown vertex. Returns (cliques, vertices)
    /// removed.
    pub fn crown_sweep(&mut self) -> Result<(usize, usize)> {
        let crown = self.find_crown()?;
        if crown.independent.is_empty() {
            return Ok((0, 0));
        }
        let vertices = crown.independent.len() + crown.head.len();
        let mut cliques = 0;
        for &(hv, iv) in &crown.matching {
            let mut cl = vec![hv, iv];
            cl.sort_unstable();
            self.take_clique(TraceRule::VccCrown, Some(iv), cl);
            cliques += 1;
        }
        for &iv in &crown.unmatched {
            self.take_clique(TraceRule::VccCrown, Some(iv), vec![iv]);
            cliques += 1;
        }
        Ok((cliques, vertices))
    }

    /// Folds degree-2 vertex v with its non-adjacent neighbors u, w into a
    /// fresh vertex adjacent to (N(u) ∪ N(w)) \ {v}. Refuses (returning
    /// false) when an edge links a vertex seen only from u to one seen only
    /// from w, since such an edge makes the contraction lossy. Errors on a
    /// violated precondition.
    pub fn degree2_fold(&mut self, v: Vertex) -> Result<bool> {
        if !self.alive[v as usize] {
            return Err(Error::Contract(format!("fold: vertex {v} is dead")));
        }
        if self.adj[v as usize].len() != 2 {
            return Err(Error::Contract(format!(
                "fold: vertex {v} has degree {}",
                self.adj[v as usize].len()
            )));
        }
        let (u, w) = (self.adj[v as usize][0], self.adj[v as usize][1]);
        if self.overlay_has_edge(u, w) {
            return Err(Error::Contract(format!(
                "fold: neighbors {u}, {w} of {v} are adjacent"
            )));
        }
        let n_u: Vec<Vertex> = self.adj[u as usize]
            .iter()
            .copied()
            .filter(|&x| x != v)
            .collect();
        let n_w: Vec<Vertex> = self.adj[w as usize]
            .iter()
            .copied()
            .filter(|&x| x != v)
            .collect();
        let only_u: Vec<Vertex> = n_u
            .iter()
            .copied()
            .filter(|x| n_w.binary_search(x).is_err())
            .collect();
        let only_w: Vec<Vertex> = n_w
            .iter()
            .copied()
            .filter(|x| n_u.binary_search(x).is_err())
            .collect();
        for &x in &only_u {
            for &y in &only_w {
                if self.overlay_has_edge(x, y) {
                    return Ok(false);
                }
            }
        }

        let v_prime = self.adj.len() as Vertex;
        let mut merged = n_u.clone();
        merged.extend_from_slice(&n_w);
        merged.sort_unstable();
        merged.dedup();
        self.step += 1;
        self.record(TraceRule::VccFold, Some(v), &[v, u, w]);
        self.folds.push(FoldRecord {
            step: self.step,
            v,
            u,
            w,
            v_prime,
            n_u,
            n_w,
        });
        self.kill(v);
        self.kill(u);
        self.kill(w);
        // fresh ids exceed every existing one, so pushing keeps rows sorted
        for &x in &merged {
            self.adj[x as usize].push(v_prime);
        }
        self.adj.push(merged);
        self.alive.push(true);
        self.alive_count += 1;
        Ok(true)
    }

    /// Tries the fold at every alive degree-2 vertex with non-adjacent
    /// neighbors, in ascending id order, including replacement vertices
    /// created along the way. Returns the number of folds.
    pub fn fold_pass(&mut self) -> usize {
        let mut fired = 0;
        let mut v = 0;
        while (v as usize) < self.adj.len() {
            if self.alive[v as usize] && self.adj[v as usize].len() == 2 {
                let (u, w) = (self.adj[v as usize][0], self.adj[v as usize][1]);
                if !self.overlay_has_edge(u, w) && self.degree2_fold(v).unwrap_or(false) {
                    fired += 1;
                }
            }
            v += 1;
        }
        fired
    }

    /// Runs the enabled rules in rounds (simplicial, folds, crown) until a
    /// whole round changes nothing.
    pub fn reduce(&mut self, rules: &VccRules) -> Result<VccReduceStats> {
        let mut stats = VccReduceStats::default();
        loop {
            let mut fired = 0usize;
            if rules.simplicial {
                let t = Instant::now();
                let f = self.simplicial_sweep(rules.simplicial_degree_cap);
                stats.t_simplicial += t.elapsed().as_secs_f64();
                stats.simplicial_cliques += f as u64;
                fired += f;
            }
            if rules.fold2 {
                let t = Instant::now();
                let f = self.fold_pass();
                stats.t_fold += t.elapsed().as_secs_f64();
                stats.folds += f as u64;
                fired += f;
            }
            if rules.crown {
                let t = Instant::now();
                let (cl, vs) = self.crown_sweep()?;
                stats.t_crown += t.elapsed().as_secs_f64();
                stats.crown_cliques += cl as u64;
                stats.crown_vertices_removed += vs as u64;
                fired += cl;
            }
            stats.rounds += 1;
            if fired == 0 {
                break;
            }
        }
        Ok(stats)
    }

    /// The alive overlay as a standalone graph, plus the map from its
    /// vertex ids back to state ids.
    pub fn kernel_graph(&self) -> (Graph, Vec<Vertex>) {
        let ids: Vec<Vertex> = (0..self.adj.len() as Vertex)
            .filter(|&v| self.alive[v as usize])
            .collect();
        let mut index = vec![0 as Vertex; self.adj.len()];
        for (i, &v) in ids.iter().enumerate() {
            index[v as usize] = i as Vertex;
        }
        let mut edges = Vec::new();
        for &v in &ids {
            for &u in &self.adj[v as usize] {
                if v < u {
                    edges.push((index[v as usize], index[u as usize]));
                }
            }
        }
        (Graph::from_edges(&edges, Some(ids.len())), ids)
    }

    /// Expands a cover of the kernel (in state vertex ids) into a cover of
    /// the original instance by replaying history backwards. Taken cliques
    /// re-enter at their recorded step; each fold finds the clique holding
    /// its replacement vertex, strips the replacement everywhere, and
    /// re-expands per which side's neighborhood hosts the clique.
    pub fn unfold(&self, kernel_cover: &[Vec<Vertex>]) -> Result<Vec<Vec<Vertex>>> {
        let mut cover: Vec<Vec<Vertex>> = kernel_cover.to_vec();
        let mut ti = self.taken.len();
        let mut fi = self.folds.len();
        loop {
            let ts = if ti > 0 { self.taken[ti - 1].step } else { 0 };
            let fs = if fi > 0 { self.folds[fi - 1].step } else { 0 };
            if ts == 0 && fs == 0 {
                break;
            }
            if ts > fs {
                ti -= 1;
                cover.push(self.taken[ti].clique.clone());
                continue;
            }
            fi -= 1;
            let rec = &self.folds[fi];
            let host = cover
                .iter()
                .position(|c| c.contains(&rec.v_prime))
                .ok_or_else(|| {
                    Error::Inconsistent(format!(
                        "unfold: no clique contains replacement vertex {}",
                        rec.v_prime
                    ))
                })?;
            let mut rest: Vec<Vertex> = cover
                .swap_remove(host)
                .into_iter()
                .filter(|&x| x != rec.v_prime)
                .collect();
            // the replacement vertex may sit in several cliques of a
            // non-partition cover; it exists nowhere before the fold
            for c in cover.iter_mut() {
                c.retain(|&x| x != rec.v_prime);
            }
            cover.retain(|c| !c.is_empty());
            let pair;
            if rest.iter().all(|x| rec.n_u.binary_search(x).is_ok()) {
                rest.push(rec.u);
                pair = vec![rec.v.min(rec.w), rec.v.max(rec.w)];
            } else {
                debug_assert!(rest.iter().all(|x| rec.n_w.binary_search(x).is_ok()));
                rest.push(rec.w);
                pair = vec![rec.v.min(rec.u), rec.v.max(rec.u)];
            }
            rest.sort_unstable();
            cover.push(rest);
            cover.push(pair);
        }
        Ok(cover)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vcc_solve::brute_force_vcc;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(&edges, Some(n))
    }

    fn validate_cover(h: &Graph, cover: &[Vec<Vertex>]) {
        let mut seen = vec![false; h.n()];
        for c in cover {
            assert!(h.is_clique(c), "not a clique: {c:?}");
            for &v in c {
                seen[v as usize] = true;
            }
        }
        assert!(seen.iter().all(|&b| b), "some vertex uncovered");
    }

    #[test]
    fn simplicial_takes_isolated_and_triangle() {
        let g = Graph::from_edges(&[(0, 1), (0, 2), (1, 2)], Some(4));
        let mut st = VccReduceState::new(&g);
        let taken = st.simplicial_sweep(0);
        assert_eq!(taken, 2);
        assert_eq!(st.kernel_size(), 0);
        let cliques: Vec<_> = st.taken_cliques().iter().map(|t| t.clique.clone()).collect();
        assert!(cliques.contains(&vec![0, 1, 2]));
        assert!(cliques.contains(&vec![3]));
    }

    #[test]
    fn simplicial_cap_skips_high_degree() {
        let g = complete(6);
        let mut st = VccReduceState::new(&g);
        assert_eq!(st.simplicial_sweep(3), 0);
        assert_eq!(st.kernel_size(), 6);
        assert_eq!(st.simplicial_sweep(0), 1);
        assert_eq!(st.kernel_size(), 0);
    }

    #[test]
    fn star_crown_covers_with_three_cliques() {
        let g = Graph::from_edges(&[(0, 1), (0, 2), (0, 3)], None);
        let mut st = VccReduceState::new(&g);
        let crown = st.find_crown().unwrap();
        let mut ind = crown.independent.clone();
        ind.sort_unstable();
        assert_eq!(ind, vec![1, 2, 3]);
        assert_eq!(crown.head, vec![0]);
        assert_eq!(crown.matching.len(), 1);
        assert_eq!(crown.unmatched.len(), 2);
        let (cliques, vertices) = st.crown_sweep().unwrap();
        assert_eq!((cliques, vertices), (3, 4));
        assert_eq!(st.kernel_size(), 0);
        let cover: Vec<_> = st.taken_cliques().iter().map(|t| t.clique.clone()).collect();
        validate_cover(&g, &cover);
        assert_eq!(cover.len(), 3);
    }

    #[test]
    fn flared_crown_removed_in_one_sweep() {
        // head {0, 1}, crown {2, 3, 4}: 0-2, 0-3, 1-3, 1-4
        let g = Graph::from_edges(&[(0, 2), (0, 3), (1, 3), (1, 4)], None);
        let mut st = VccReduceState::new(&g);
        let crown = st.find_crown().unwrap();
        let mut ind = crown.independent.clone();
        ind.sort_unstable();
        let mut head = crown.head.clone();
        head.sort_unstable();
        assert_eq!(ind, vec![2, 3, 4]);
        assert_eq!(head, vec![0, 1]);
        let (cliques, vertices) = st.crown_sweep().unwrap();
        assert_eq!((cliques, vertices), (3, 5));
        // a second look finds nothing
        assert!(st.find_crown().unwrap().independent.is_empty());
        let cover: Vec<_> = st.taken_cliques().iter().map(|t| t.clique.clone()).collect();
        validate_cover(&g, &cover);
    }

    #[test]
    fn complete_graph_has_no_crown() {
        let g = complete(4);
        let st = VccReduceState::new(&g);
        let crown = st.find_crown().unwrap();
        assert!(crown.independent.is_empty());
        assert!(crown.head.is_empty());
    }

    #[test]
    fn crown_empty_after_sweep_on_randoms() {
        for seed in 0..15u64 {
            let g = crate::io::gen_gnp(24, 0.12, seed);
            let mut st = VccReduceState::new(&g);
            st.crown_sweep().unwrap();
            let again = st.find_crown().unwrap();
            assert!(again.independent.is_empty(), "seed {seed}");
        }
    }

    #[test]
    fn fold_contracts_path_to_point() {
        let g = Graph::from_edges(&[(0, 1), (1, 2)], None);
        let mut st = VccReduceState::new(&g);
        assert!(st.degree2_fold(1).unwrap());
        assert_eq!(st.kernel_size(), 1);
        assert!(st.is_alive(3));
        assert_eq!(st.degree_of(3), 0);
        let cover = st.unfold(&[vec![3]]).unwrap();
        assert_eq!(cover.len(), 2);
        validate_cover(&g, &cover);
    }

    #[test]
    fn fold_preconditions_reported() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (0, 2), (2, 3)], None);
        let mut st = VccReduceState::new(&g);
        // 0 has degree 2 but adjacent neighbors
        assert!(st.degree2_fold(0).is_err());
        // 3 has degree 1
        assert!(st.degree2_fold(3).is_err());
        st.kill(3);
        assert!(st.degree2_fold(3).is_err());
    }

    #[test]
    fn fold_refused_when_outside_edge_links_the_sides() {
        // v=0 between u=1 and w=2; 1-3, 2-4, 3-4: folding would merge the
        // cover needs of the 5-cycle 0-1-3-4-2
        let g = Graph::from_edges(&[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)], None);
        let mut st = VccReduceState::new(&g);
        assert_eq!(st.degree2_fold(0).unwrap(), false);
        assert_eq!(st.kernel_size(), 5);
        // and indeed theta = 3 > 1 + 1 fold would claim
        assert_eq!(brute_force_vcc(&g).unwrap().cliques.len(), 3);
    }

    #[test]
    fn fold_then_simplicial_interleaves_in_unfold() {
        // path a(0)-b(1)-c(2)-d(3): fold at b creates 4 ~ {3}; simplicial
        // then takes {3, 4}; unfold must expand that taken clique
        let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3)], None);
        let mut st = VccReduceState::new(&g);
        assert_eq!(st.fold_pass(), 1);
        assert_eq!(st.simplicial_sweep(0), 1);
        assert_eq!(st.kernel_size(), 0);
        let cover = st.unfold(&[]).unwrap();
        let mut c = cover.clone();
        for cl in &mut c {
            cl.sort_unstable();
        }
        c.sort();
        assert_eq!(c, vec![vec![0, 1], vec![2, 3]]);
        validate_cover(&g, &cover);
    }

    #[test]
    fn fold_chain_collapses_long_path() {
        let edges: Vec<(u32, u32)> = (0..5).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(&edges, None);
        let mut st = VccReduceState::new(&g);
        let folds = st.fold_pass();
        assert!(folds >= 2);
        let (kernel, map) = st.kernel_graph();
        let kcover = brute_force_vcc(&kernel).unwrap().cliques;
        let mapped: Vec<Vec<Vertex>> = kcover
            .iter()
            .map(|c| c.iter().map(|&v| map[v as usize]).collect())
            .collect();
        let cover = st.unfold(&mapped).unwrap();
        validate_cover(&g, &cover);
        assert_eq!(cover.len(), 3, "theta(P6) = 3");
    }

    #[test]
    fn each_rule_preserves_cover_number() {
        let (mut simp_fires, mut fold_fires, mut crown_fires) = (0, 0, 0);
        for seed in 0..60u64 {
            let n = 7 + (seed % 3) as usize;
            let p = 0.25 + 0.05 * (seed % 5) as f64;
            let g = crate::io::gen_gnp(n, p, seed);
            let theta = brute_force_vcc(&g).unwrap().cliques.len();

            // one simplicial pass
            let mut st = VccReduceState::new(&g);
            let taken = st.simplicial_sweep(0);
            if taken > 0 {
                simp_fires += 1;
                let (kernel, _) = st.kernel_graph();
                let after = brute_force_vcc(&kernel).unwrap().cliques.len();
                assert_eq!(theta, after + taken, "simplicial, seed {seed}");
            }

            // one fold
            let mut st = VccReduceState::new(&g);
            let mut folded = false;
            for v in 0..g.n() as Vertex {
                if st.is_alive(v) && st.degree_of(v) == 2 {
                    let (u, w) = (st.neighbors_of(v)[0], st.neighbors_of(v)[1]);
                    if !g.has_edge(u, w) && st.degree2_fold(v).unwrap() {
                        folded = true;
                        break;
                    }
                }
            }
            if folded {
                fold_fires += 1;
                let (kernel, _) = st.kernel_graph();
                let after = brute_force_vcc(&kernel).unwrap().cliques.len();
                assert_eq!(theta, after + 1, "fold, seed {seed}");
            }

            // one crown sweep
            let mut st = VccReduceState::new(&g);
            let (cliques, _) = st.crown_sweep().unwrap();
            if cliques > 0 {
                crown_fires += 1;
                let (kernel, _) = st.kernel_graph();
                let after = brute_force_vcc(&kernel).unwrap().cliques.len();
                assert_eq!(theta, after + cliques, "crown, seed {seed}");
            }
        }
        assert!(simp_fires >= 10, "simplicial fired {simp_fires} times");
        assert!(fold_fires >= 10, "fold fired {fold_fires} times");
        assert!(crown_fires >= 10, "crown fired {crown_fires} times");
    }

    #[test]
    fn full_reduce_and_unfold_hits_brute_force_theta() {
        for seed in 0..50u64 {
            let n = 6 + (seed % 4) as usize;
            let g = crate::io::gen_gnp(n, 0.3, seed);
            let theta = brute_force_vcc(&g).unwrap().cliques.len();
            let mut st = VccReduceState::new(&g);
            let stats = st.reduce(&VccRules::all()).unwrap();
            let _ = stats;
            let (kernel, map) = st.kernel_graph();
            assert!(kernel.n() <= 16, "kernel blew past the brute guard");
            let kcover = brute_force_vcc(&kernel).unwrap().cliques;
            let mapped: Vec<Vec<Vertex>> = kcover
                .iter()
                .map(|c| c.iter().map(|&v| map[v as usize]).collect())
                .collect();
            let cover = st.unfold(&mapped).unwrap();
            validate_cover(&g, &cover);
            assert_eq!(cover.len(), theta, "seed {seed}");
        }
    }

    #[test]
    fn reduce_trace_records_rules() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4)], None);
        let mut st = VccReduceState::new(&g);
        st.enable_trace();
        st.reduce(&VccRules::all()).unwrap();
        let trace = st.trace().unwrap();
        assert!(!trace.is_empty());
        assert!(trace
            .iter()
            .any(|e| matches!(e.rule, TraceRule::VccFold | TraceRule::VccSimplicial)));
    }

    #[test]
    fn unfold_rejects_cover_missing_replacement() {
        let g = Graph::from_edges(&[(0, 1), (1, 2)], None);
        let mut st = VccReduceState::new(&g);
        st.degree2_fold(1).unwrap();
        assert!(st.unfold(&[vec![0]]).is_err());
    }
}
