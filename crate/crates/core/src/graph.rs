//! Immutable simple undirected graph with dense vertex and edge ids.
//!
//! Adjacency lists are sorted by neighbor id and carry the edge id of each
//! incidence, so edge lookup is a binary search. Edge ids follow the
//! lexicographic order of the normalized (min, max) endpoint pairs.

use crate::error::{Error, Result};

pub type Vertex = u32;
pub type EdgeId = u32;

#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    adj_eid: Vec<Vec<EdgeId>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// Builds a graph from an arbitrary pair list. Self-loops are dropped,
    /// duplicates (in either orientation) are merged. Vertices are
    /// `0..max(n_hint, highest id + 1)`, so isolated vertices survive when
    /// the hint accounts for them.
    pub fn from_edges(pairs: &[(Vertex, Vertex)], n_hint: Option<usize>) -> Graph {
        let mut norm: Vec<(Vertex, Vertex)> = pairs
            .iter()
            .filter(|(u, v)| u != v)
            .map(|&(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        norm.sort_unstable();
        norm.dedup();

        let mut n = n_hint.unwrap_or(0);
        for &(_, v) in &norm {
            n = n.max(v as usize + 1);
        }

        let mut adj = vec![Vec::new(); n];
        let mut adj_eid = vec![Vec::new(); n];
        for (id, &(u, v)) in norm.iter().enumerate() {
            adj[u as usize].push(v);
            adj_eid[u as usize].push(id as EdgeId);
            adj[v as usize].push(u);
            adj_eid[v as usize].push(id as EdgeId);
        }
        // The lexicographic edge scan pushes each vertex's neighbors in
        // ascending id order already; assert rather than re-sort.
        debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));

        Graph {
            adj,
            adj_eid,
            edges: norm,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    /// Edge ids aligned with `neighbors(v)`.
    pub fn neighbor_edge_ids(&self, v: Vertex) -> &[EdgeId] {
        &self.adj_eid[v as usize]
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e as usize]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        if u == v || u as usize >= self.n() || v as usize >= self.n() {
            return None;
        }
        // Search from the lower-degree endpoint.
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        let list = &self.adj[a as usize];
        list.binary_search(&b)
            .ok()
            .map(|i| self.adj_eid[a as usize][i])
    }

    /// Sorted common neighborhood of an edge. Errors if {u, v} is not an edge.
    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        if !self.has_edge(u, v) {
            return Err(Error::NonEdge { u, v });
        }
        Ok(intersect_sorted(
            &self.adj[u as usize],
            &self.adj[v as usize],
        ))
    }

    /// True when the given distinct vertices are pairwise adjacent.
    /// Empty sets and singletons are cliques.
    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Degeneracy ordering by repeated minimum-degree removal with a bucket
    /// queue, O(n + m). Ties resolve toward lower vertex id at equal degree
    /// in the initial counting sort, then evolve deterministically.
    pub fn degeneracy_order(&self) -> DegeneracyOrder {
        let n = self.n();
        let mut deg: Vec<u32> = (0..n).map(|v| self.adj[v].len() as u32).collect();
        let max_degree = deg.iter().copied().max().unwrap_or(0);

        // counting sort of vertices by degree
        let mut bin = vec![0usize; max_degree as usize + 2];
        for &d in &deg {
            bin[d as usize + 1] += 1;
        }
        for i in 1..bin.len() {
            bin[i] += bin[i - 1];
        }
        let mut vert = vec![0 as Vertex; n];
        let mut pos = vec![0usize; n];
        {
            let mut next = bin.clone();
            for v in 0..n {
                let d = deg[v] as usize;
                vert[next[d]] = v as Vertex;
                pos[v] = next[d];
                next[d] += 1;
            }
        }

        let mut degeneracy = 0u32;
        for i in 0..n {
            let v = vert[i];
            degeneracy = degeneracy.max(deg[v as usize]);
            for &u in &self.adj[v as usize] {
                // Only vertices still ahead of the frontier can have a
                // larger stored degree, so this guard also skips processed
                // neighbors.
                if deg[u as usize] > deg[v as usize] {
                    let du = deg[u as usize] as usize;
                    let pu = pos[u as usize];
                    let pw = bin[du];
                    let w = vert[pw];
                    if u != w {
                        vert[pu] = w;
                        vert[pw] = u;
                        pos[u as usize] = pw;
                        pos[w as usize] = pu;
                    }
                    bin[du] += 1;
                    deg[u as usize] -= 1;
                }
            }
        }

        let mut position = vec![0u32; n];
        for (i, &v) in vert.iter().enumerate() {
            position[v as usize] = i as u32;
        }
        DegeneracyOrder {
            order: vert,
            position,
            degeneracy,
            max_degree,
        }
    }
}

/// Result of `Graph::degeneracy_order`. Every vertex has at most
/// `degeneracy` neighbors with larger position.
#[derive(Debug, Clone)]
pub struct DegeneracyOrder {
    pub order: Vec<Vertex>,
    /// Inverse permutation of `order`.
    pub position: Vec<u32>,
    pub degeneracy: u32,
    pub max_degree: u32,
}

pub(crate) fn intersect_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Per-vertex neighbors that come later in the degeneracy order, with edge
/// ids, sorted by neighbor id. Vertices failing `alive` are left out.
fn later_lists(
    g: &Graph,
    ord: &DegeneracyOrder,
    alive: Option<&[bool]>,
) -> Vec<Vec<(Vertex, EdgeId)>> {
    let live = |v: Vertex| alive.map_or(true, |a| a[v as usize]);
    let mut later = vec![Vec::new(); g.n()];
    for v in 0..g.n() as Vertex {
        if !live(v) {
            continue;
        }
        let pv = ord.position[v as usize];
        let nbrs = g.neighbors(v);
        let eids = g.neighbor_edge_ids(v);
        for (k, &u) in nbrs.iter().enumerate() {
            if live(u) && ord.position[u as usize] > pv {
                later[v as usize].push((u, eids[k]));
            }
        }
    }
    later
}

/// Visits every triangle exactly once. Vertices arrive in ascending position
/// within the degeneracy order; the three edge ids follow as
/// (ab, aw, bw) for the triangle (a, b, w). Returns the triangle count.
pub fn for_each_triangle<F>(g: &Graph, ord: &DegeneracyOrder, visit: F) -> u64
where
    F: FnMut(Vertex, Vertex, Vertex, EdgeId, EdgeId, EdgeId),
{
    for_each_triangle_in(g, ord, None, visit)
}

pub(crate) fn for_each_triangle_in<F>(
    g: &Graph,
    ord: &DegeneracyOrder,
    alive: Option<&[bool]>,
    mut visit: F,
) -> u64
where
    F: FnMut(Vertex, Vertex, Vertex, EdgeId, EdgeId, EdgeId),
{
    let later = later_lists(g, ord, alive);
    let mut count = 0u64;
    for (e, &(x, y)) in g.edges().iter().enumerate() {
        if let Some(a) = alive {
            if !a[x as usize] || !a[y as usize] {
                continue;
            }
        }
        let (a, b) = if ord.position[x as usize] < ord.position[y as usize] {
            (x, y)
        } else {
            (y, x)
        };
        let (la, lb) = (&later[a as usize], &later[b as usize]);
        let (mut i, mut j) = (0, 0);
        while i < la.len() && j < lb.len() {
            match la[i].0.cmp(&lb[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    visit(a, b, la[i].0, e as EdgeId, la[i].1, lb[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    count
}

/// Visits every 4-clique exactly once, from its two earliest vertices in the
/// degeneracy order. `verts` is (a, b, w, x) and `eids` the six edge ids in
/// the order (ab, aw, bw, ax, bx, wx). Returns the 4-clique count.
pub fn for_each_four_clique<F>(g: &Graph, ord: &DegeneracyOrder, visit: F) -> u64
where
    F: FnMut([Vertex; 4], [EdgeId; 6]),
{
    for_each_four_clique_in(g, ord, None, visit)
}

pub(crate) fn for_each_four_clique_in<F>(
    g: &Graph,
    ord: &DegeneracyOrder,
    alive: Option<&[bool]>,
    mut visit: F,
) -> u64
where
    F: FnMut([Vertex; 4], [EdgeId; 6]),
{
    let later = later_lists(g, ord, alive);
    let mut count = 0u64;
    let mut t: Vec<(Vertex, EdgeId, EdgeId)> = Vec::new();
    for (e, &(x, y)) in g.edges().iter().enumerate() {
        if let Some(a) = alive {
            if !a[x as usize] || !a[y as usize] {
                continue;
            }
        }
        let (a, b) = if ord.position[x as usize] < ord.position[y as usize] {
            (x, y)
        } else {
            (y, x)
        };
        t.clear();
        let (la, lb) = (&later[a as usize], &later[b as usize]);
        let (mut i, mut j) = (0, 0);
        while i < la.len() && j < lb.len() {
            match la[i].0.cmp(&lb[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    t.push((la[i].0, la[i].1, lb[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        for p in 0..t.len() {
            for q in p + 1..t.len() {
                let (w, e_aw, e_bw) = t[p];
                let (z, e_az, e_bz) = t[q];
                if let Some(e_wz) = g.edge_id(w, z) {
                    count += 1;
                    visit([a, b, w, z], [e as EdgeId, e_aw, e_bw, e_az, e_bz, e_wz]);
                }
            }
        }
    }
    count
}
