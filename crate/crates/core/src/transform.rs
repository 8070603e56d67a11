//! Turns a partially covered edge clique cover state into a vertex clique
//! cover instance.
//!
//! Each uncovered edge of G becomes a vertex of the derived graph h; two such
//! vertices are adjacent when the union of their endpoint sets is a clique in
//! the original G. Coverage status of the edges *inside* that union does not
//! matter, only the two spawning edges must be uncovered. Cliques of h then
//! correspond to cliques of G covering several uncovered edges at once.

use crate::ecc_reduce::CoverState;
use crate::error::{Error, Result};
use crate::graph::{self, DegeneracyOrder, EdgeId, Graph, Vertex};

#[derive(Debug, Clone)]
pub struct VccInstance {
    pub h: Graph,
    /// Endpoints in G of the uncovered edge behind each h-vertex.
    pub origin: Vec<(Vertex, Vertex)>,
    /// Edge id in G behind each h-vertex.
    pub origin_eid: Vec<EdgeId>,
    reverse: Vec<Option<Vertex>>,
}

impl VccInstance {
    /// The h-vertex standing for edge `e` of G, if `e` was uncovered.
    pub fn h_vertex(&self, e: EdgeId) -> Option<Vertex> {
        self.reverse[e as usize]
    }

    /// Union of origin endpoints over a set of h-vertices, sorted, deduped.
    pub fn origin_union(&self, hvs: &[Vertex]) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(hvs.len() * 2);
        for &hv in hvs {
            let (u, v) = self.origin[hv as usize];
            out.push(u);
            out.push(v);
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Builds the derived instance. h-vertices are numbered in ascending
/// uncovered-edge-id order. h-edges come from two sources: a triangle of G
/// with two uncovered edges links each uncovered pair (union of size 3), and
/// a 4-clique of G links its three pairs of disjoint edges (union of size 4).
/// Pairs sharing a vertex land in exactly one triangle and disjoint pairs in
/// exactly one 4-clique, so nothing is produced twice.
pub fn build_vcc_instance(state: &CoverState) -> VccInstance {
    let g = state.graph();
    let mut origin = Vec::new();
    let mut origin_eid = Vec::new();
    let mut reverse = vec![None; g.m()];
    for e in 0..g.m() as EdgeId {
        if !state.is_covered(e) {
            reverse[e as usize] = Some(origin.len() as Vertex);
            origin.push(g.edge_endpoints(e));
            origin_eid.push(e);
        }
    }

    // Removed vertices only touch covered edges, so every clique of G that
    // can link two uncovered edges survives the alive filter.
    let alive: Vec<bool> = (0..g.n() as Vertex).map(|v| !state.is_removed(v)).collect();
    let ord = g.degeneracy_order();
    let mut h_edges: Vec<(Vertex, Vertex)> = Vec::new();
    {
        let mut link = |ea: EdgeId, eb: EdgeId| {
            if let (Some(a), Some(b)) = (reverse[ea as usize], reverse[eb as usize]) {
                h_edges.push((a, b));
            }
        };
        graph::for_each_triangle_in(g, &ord, Some(&alive), |_, _, _, e1, e2, e3| {
            link(e1, e2);
            link(e1, e3);
            link(e2, e3);
        });
        graph::for_each_four_clique_in(
            g,
            &ord,
            Some(&alive),
            |_, [e_ab, e_aw, e_bw, e_az, e_bz, e_wz]| {
                link(e_ab, e_wz);
                link(e_aw, e_bz);
                link(e_az, e_bw);
            },
        );
    }
    let h = Graph::from_edges(&h_edges, Some(origin.len()));
    VccInstance {
        h,
        origin,
        origin_eid,
        reverse,
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SizeBoundReport {
    pub vcc_vertices: usize,
    pub vcc_edges: usize,
    pub degeneracy: usize,
    /// d * n, the vertex-count bound.
    pub bound_dn: usize,
    /// d^2 * m, the edge-count scale.
    pub bound_d2m: usize,
    /// |E(h)| / (d^2 * m); 0 when the scale is 0.
    pub ratio: f64,
}

/// Size check for instances transformed with nothing covered: exactly one
/// h-vertex per edge of g, and m never exceeds d * n. The edge count of h
/// has no hard bound here, only the reported ratio against d^2 * m.
pub fn check_size_bounds(
    g: &Graph,
    order: &DegeneracyOrder,
    inst: &VccInstance,
) -> Result<SizeBoundReport> {
    if inst.h.n() != g.m() {
        return Err(Error::Contract(format!(
            "derived instance has {} vertices but the graph has {} edges; \
             was something already covered?",
            inst.h.n(),
            g.m()
        )));
    }
    let d = order.degeneracy as usize;
    let bound_dn = d * g.n();
    if g.m() > bound_dn {
        return Err(Error::Inconsistent(format!(
            "m = {} exceeds d*n = {bound_dn}",
            g.m()
        )));
    }
    let bound_d2m = d * d * g.m();
    let ratio = if bound_d2m == 0 {
        0.0
    } else {
        inst.h.m() as f64 / bound_d2m as f64
    };
    Ok(SizeBoundReport {
        vcc_vertices: inst.h.n(),
        vcc_edges: inst.h.m(),
        degeneracy: d,
        bound_dn,
        bound_d2m,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ecc_reduce::CoverState;
    use crate::rng::SplitMix64;

    fn fresh_instance(g: &Graph) -> VccInstance {
        let st = CoverState::new(g);
        build_vcc_instance(&st)
    }

    #[test]
    fn path_becomes_isolated_vertices() {
        let g = Graph::from_edges(&[(0, 1), (1, 2)], None);
        let inst = fresh_instance(&g);
        assert_eq!(inst.h.n(), 2);
        assert_eq!(inst.h.m(), 0);
        assert_eq!(inst.origin, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn k4_becomes_k6() {
        let mut edges = Vec::new();
        for u in 0..4u32 {
            for v in u + 1..4 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(&edges, None);
        let inst = fresh_instance(&g);
        assert_eq!(inst.h.n(), 6);
        assert_eq!(inst.h.m(), 15);
    }

    #[test]
    fn vertices_follow_ascending_edge_ids() {
        let g = crate::io::gen_gnp(20, 0.3, 3);
        let mut st = CoverState::new(&g);
        // cover something first
        st.reduce(&crate::ecc_reduce::EccRules::gramm());
        let inst = build_vcc_instance(&st);
        let uncovered = st.uncovered_edges();
        assert_eq!(inst.origin_eid, uncovered);
        for (k, &e) in uncovered.iter().enumerate() {
            assert_eq!(inst.h_vertex(e), Some(k as Vertex));
            assert_eq!(inst.origin[k], g.edge_endpoints(e));
        }
        for e in 0..g.m() as EdgeId {
            if st.is_covered(e) {
                assert_eq!(inst.h_vertex(e), None);
            }
        }
    }

    /// The defining criterion, checked pairwise against first principles:
    /// h has an edge between two uncovered edges iff their endpoint union is
    /// a clique of G.
    #[test]
    fn edge_criterion_matches_clique_test_on_partial_covers() {
        let mut rng = SplitMix64::new(0xfeed);
        for seed in 0..60u64 {
            let n = 6 + (seed % 4) as usize;
            let g = crate::io::gen_gnp(n, 0.5, seed);
            let mut st = CoverState::new(&g);
            // cover a few random triangles or edges to get a partial state
            for _ in 0..3 {
                if g.m() == 0 {
                    break;
                }
                let e = rng.next_below(g.m()) as EdgeId;
                let (u, v) = g.edge_endpoints(e);
                let cn = g.common_neighbors(u, v).unwrap();
                let mut cl = vec![u, v];
                if !cn.is_empty() && rng.next_f64() < 0.7 {
                    cl.push(cn[rng.next_below(cn.len())]);
                }
                st.apply_clique(&cl).unwrap();
            }
            let inst = build_vcc_instance(&st);
            for a in 0..inst.h.n() as Vertex {
                for b in a + 1..inst.h.n() as Vertex {
                    let union = inst.origin_union(&[a, b]);
                    let expect = g.is_clique(&union);
                    assert_eq!(
                        inst.h.has_edge(a, b),
                        expect,
                        "seed {seed}: h-vertices {a},{b} origins {:?},{:?}",
                        inst.origin[a as usize],
                        inst.origin[b as usize]
                    );
                }
            }
        }
    }

    #[test]
    fn covered_edges_still_glue_uncovered_ones() {
        // triangle 0,1,2; cover edge {1,2} as a lone 2-clique. The two
        // remaining edges must still be adjacent in h through the triangle.
        let g = Graph::from_edges(&[(0, 1), (0, 2), (1, 2)], None);
        let mut st = CoverState::new(&g);
        st.apply_clique(&[1, 2]).unwrap();
        let inst = build_vcc_instance(&st);
        assert_eq!(inst.h.n(), 2);
        assert_eq!(inst.h.m(), 1);
    }

    #[test]
    fn cliques_of_h_map_to_cliques_of_g() {
        for seed in 0..30u64 {
            let g = crate::io::gen_gnp(9, 0.5, seed);
            let mut st = CoverState::new(&g);
            st.reduce(&crate::ecc_reduce::EccRules::gramm());
            let inst = build_vcc_instance(&st);
            // greedily grow cliques in h and check their origin unions
            for start in 0..inst.h.n() as Vertex {
                let mut cl = vec![start];
                for v in 0..inst.h.n() as Vertex {
                    if v != start && cl.iter().all(|&u| inst.h.has_edge(u, v)) {
                        cl.push(v);
                    }
                }
                let union = inst.origin_union(&cl);
                assert!(g.is_clique(&union), "seed {seed} start {start}");
            }
        }
    }

    #[test]
    fn size_bounds_on_fresh_instances() {
        let tree = Graph::from_edges(&[(0, 1), (1, 2), (1, 3), (3, 4)], None);
        let inst = fresh_instance(&tree);
        let rep = check_size_bounds(&tree, &tree.degeneracy_order(), &inst).unwrap();
        assert_eq!(rep.vcc_vertices, 4);
        assert_eq!(rep.vcc_edges, 0);
        assert_eq!(rep.degeneracy, 1);

        let mut edges = Vec::new();
        for u in 0..5u32 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        let k5 = Graph::from_edges(&edges, None);
        let inst = fresh_instance(&k5);
        let rep = check_size_bounds(&k5, &k5.degeneracy_order(), &inst).unwrap();
        assert_eq!(rep.vcc_vertices, 10);
        assert_eq!(rep.vcc_edges, 45);
        assert_eq!(rep.degeneracy, 4);
        assert_eq!(rep.bound_d2m, 160);
        assert!(rep.ratio > 0.28 && rep.ratio < 0.29);

        let g = crate::io::gen_gnp(128, 0.1, 9);
        let inst = fresh_instance(&g);
        let rep = check_size_bounds(&g, &g.degeneracy_order(), &inst).unwrap();
        assert_eq!(rep.vcc_vertices, g.m());
        assert!(rep.vcc_vertices <= rep.bound_dn);
    }

    #[test]
    fn size_check_rejects_partially_covered_input() {
        let g = Graph::from_edges(&[(0, 1), (0, 2), (1, 2)], None);
        let mut st = CoverState::new(&g);
        st.apply_clique(&[0, 1]).unwrap();
        let inst = build_vcc_instance(&st);
        assert!(check_size_bounds(&g, &g.degeneracy_order(), &inst).is_err());
    }

    #[test]
    fn deterministic_construction() {
        let g = crate::io::gen_gnp(40, 0.2, 11);
        let mut st1 = CoverState::new(&g);
        st1.reduce(&crate::ecc_reduce::EccRules::all());
        let mut st2 = CoverState::new(&g);
        st2.reduce(&crate::ecc_reduce::EccRules::all());
        let (a, b) = (build_vcc_instance(&st1), build_vcc_instance(&st2));
        assert_eq!(a.h.edges(), b.h.edges());
        assert_eq!(a.origin, b.origin);
    }

    /// Covering the derived instance and covering the residual edges of G
    /// are the same problem: minimum counts agree on small graphs.
    #[test]
    fn equivalence_with_direct_residual_cover() {
        for seed in 0..25u64 {
            let g = crate::io::gen_gnp(8, 0.45, seed);
            if g.m() > 20 {
                continue;
            }
            let mut st = CoverState::new(&g);
            // partial reduction so residues vary: only rule 2, one sweep
            st.rule2_sweep();
            let inst = build_vcc_instance(&st);
            let vcc = crate::vcc_solve::brute_force_vcc(&inst.h).unwrap();
            let residual =
                crate::pipeline::min_cliques_covering(&g, &st.uncovered_edges(), None).unwrap();
            assert_eq!(vcc.cliques.len(), residual.len(), "seed {seed}");
        }
    }
}
