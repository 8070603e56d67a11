//! Maximum bipartite matching (Hopcroft-Karp).

use std::collections::VecDeque;

const INF: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub(crate) struct Matching {
    /// Right partner of each left vertex.
    pub pair_left: Vec<Option<u32>>,
    /// Left partner of each right vertex.
    pub pair_right: Vec<Option<u32>>,
    pub size: usize,
}

/// `adj[u]` lists the right-side neighbors of left vertex `u`.
pub(crate) fn hopcroft_karp(adj: &[Vec<u32>], n_right: usize) -> Matching {
    let n_left = adj.len();
    let mut pair_left: Vec<Option<u32>> = vec![None; n_left];
    let mut pair_right: Vec<Option<u32>> = vec![None; n_right];
    let mut dist: Vec<u32> = vec![0; n_left];
    let mut queue = VecDeque::new();
    let mut size = 0usize;
    loop {
        queue.clear();
        for u in 0..n_left {
            if pair_left[u].is_none() {
                dist[u] = 0;
                queue.push_back(u as u32);
            } else {
                dist[u] = INF;
            }
        }
        let mut layered = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u as usize] {
                match pair_right[v as usize] {
                    None => layered = true,
                    Some(u2) => {
                        if dist[u2 as usize] == INF {
                            dist[u2 as usize] = dist[u as usize] + 1;
                            queue.push_back(u2);
                        }
                    }
                }
            }
        }
        if !layered {
            break;
        }
        for u in 0..n_left as u32 {
            if pair_left[u as usize].is_none()
                && augment(u, adj, &mut pair_left, &mut pair_right, &mut dist)
            {
                size += 1;
            }
        }
    }
    Matching {
        pair_left,
        pair_right,
        size,
    }
}

fn augment(
    u: u32,
    adj: &[Vec<u32>],
    pair_left: &mut [Option<u32>],
    pair_right: &mut [Option<u32>],
    dist: &mut [u32],
) -> bool {
    for i in 0..adj[u as usize].len() {
        let v = adj[u as usize][i];
        let extends = match pair_right[v as usize] {
            None => true,
            Some(u2) => {
                dist[u2 as usize] == dist[u as usize].wrapping_add(1)
                    && augment(u2, adj, pair_left, pair_right, dist)
            }
        };
        if extends {
            pair_right[v as usize] = Some(u);
            pair_left[u as usize] = Some(v);
            return true;
        }
    }
    dist[u as usize] = INF;
    false
}
