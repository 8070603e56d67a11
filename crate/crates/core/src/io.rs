//! Edge list parsing and writing, cover files, and the seeded G(n, p)
//! generator.
//!
//! Input format: one edge per line, two whitespace-separated labels. Labels
//! may be any integers or strings and are remapped to dense ids in first
//! appearance order; the mapping is kept for output. Lines starting with `#`
//! or `%` and blank lines are ignored. An optional first line `n m` is
//! treated as a header when it matches the body: `m` equals the number of
//! remaining data lines and `n` is large enough for the labels seen. When a
//! header is present and every label is an integer below `n`, labels map to
//! ids identically, which lets isolated vertices round-trip.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::SplitMix64;
use crate::transform::VccInstance;
use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub graph: Graph,
    /// Original label of each dense vertex id.
    pub labels: Vec<String>,
}

impl LabeledGraph {
    pub fn with_identity_labels(graph: Graph) -> LabeledGraph {
        let labels = (0..graph.n()).map(|v| v.to_string()).collect();
        LabeledGraph { graph, labels }
    }

    pub fn label_index(&self) -> HashMap<&str, Vertex> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as Vertex))
            .collect()
    }
}

pub fn parse_edge_list(path: &Path) -> Result<LabeledGraph> {
    let file = std::fs::File::open(path).map_err(|e| Error::Parse {
        file: path.display().to_string(),
        line: 0,
        msg: e.to_string(),
    })?;
    parse_edge_list_from(BufReader::new(file), &path.display().to_string())
}

pub fn parse_edge_list_from<R: BufRead>(reader: R, source: &str) -> Result<LabeledGraph> {
    let mut rows: Vec<(String, String, usize)> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse {
            file: source.to_string(),
            line: lineno + 1,
            msg: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let a = it.next();
        let b = it.next();
        let extra = it.next();
        match (a, b, extra) {
            (Some(a), Some(b), None) => rows.push((a.to_string(), b.to_string(), lineno + 1)),
            _ => {
                return Err(Error::Parse {
                    file: source.to_string(),
                    line: lineno + 1,
                    msg: format!(
                        "expected 2 whitespace-separated fields, got {}",
                        trimmed.split_whitespace().count()
                    ),
                })
            }
        }
    }

    // Header detection.
    let mut body_start = 0;
    let mut n_hint: Option<usize> = None;
    if let Some((a, b, _)) = rows.first() {
        if let (Ok(n), Ok(m)) = (a.parse::<usize>(), b.parse::<usize>()) {
            if m == rows.len() - 1 {
                let labels_fit = {
                    let mut distinct: Vec<&str> = rows[1..]
                        .iter()
                        .flat_map(|(x, y, _)| [x.as_str(), y.as_str()])
                        .collect();
                    distinct.sort_unstable();
                    distinct.dedup();
                    distinct.len() <= n
                };
                if labels_fit {
                    body_start = 1;
                    n_hint = Some(n);
                }
            }
        }
    }
    let body = &rows[body_start..];

    // Identity mapping when a header is present and every label is an
    // integer in range.
    if let Some(n) = n_hint {
        let ints: Option<Vec<(u64, u64)>> = body
            .iter()
            .map(|(a, b, _)| Ok((a.parse::<u64>()?, b.parse::<u64>()?)))
            .collect::<std::result::Result<_, std::num::ParseIntError>>()
            .ok();
        if let Some(ints) = ints {
            if ints.iter().all(|&(a, b)| (a as usize) < n && (b as usize) < n) {
                let edges: Vec<(Vertex, Vertex)> =
                    ints.iter().map(|&(a, b)| (a as Vertex, b as Vertex)).collect();
                return Ok(LabeledGraph::with_identity_labels(Graph::from_edges(
                    &edges,
                    Some(n),
                )));
            }
        }
    }

    let mut ids: HashMap<String, Vertex> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let intern = |s: &str, labels: &mut Vec<String>, ids: &mut HashMap<String, Vertex>| {
        if let Some(&i) = ids.get(s) {
            i
        } else {
            let i = labels.len() as Vertex;
            labels.push(s.to_string());
            ids.insert(s.to_string(), i);
            i
        }
    };
    let mut edges = Vec::with_capacity(body.len());
    for (a, b, _) in body {
        let u = intern(a, &mut labels, &mut ids);
        let v = intern(b, &mut labels, &mut ids);
        edges.push((u, v));
    }
    let n = labels.len().max(n_hint.unwrap_or(0));
    while labels.len() < n {
        labels.push(labels.len().to_string());
    }
    Ok(LabeledGraph {
        graph: Graph::from_edges(&edges, Some(n)),
        labels,
    })
}

/// Writes `n m` followed by one edge per line in edge-id order.
pub fn write_edge_list<W: Write>(w: &mut W, g: &Graph, labels: Option<&[String]>) -> Result<()> {
    writeln!(w, "{} {}", g.n(), g.m())?;
    for &(u, v) in g.edges() {
        match labels {
            Some(ls) => writeln!(w, "{} {}", ls[u as usize], ls[v as usize])?,
            None => writeln!(w, "{} {}", u, v)?,
        }
    }
    Ok(())
}

/// One clique per line, labels separated by whitespace.
pub fn write_cover<W: Write>(
    w: &mut W,
    cliques: &[Vec<Vertex>],
    labels: &[String],
) -> Result<()> {
    for c in cliques {
        let line: Vec<&str> = c.iter().map(|&v| labels[v as usize].as_str()).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn parse_cover(path: &Path, lg: &LabeledGraph) -> Result<Vec<Vec<Vertex>>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        file: path.display().to_string(),
        line: 0,
        msg: e.to_string(),
    })?;
    let index = lg.label_index();
    let mut cover = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut clique = Vec::new();
        for tok in trimmed.split_whitespace() {
            match index.get(tok) {
                Some(&v) => clique.push(v),
                None => {
                    return Err(Error::Parse {
                        file: path.display().to_string(),
                        line: lineno + 1,
                        msg: format!("unknown vertex label {tok:?}"),
                    })
                }
            }
        }
        clique.sort_unstable();
        clique.dedup();
        cover.push(clique);
    }
    Ok(cover)
}

/// Dumps a transformed instance: origin map as comments, then the edge list
/// of the derived graph. Re-parsing the output yields the derived graph.
pub fn write_vcc_instance<W: Write>(
    w: &mut W,
    inst: &VccInstance,
    labels: Option<&[String]>,
) -> Result<()> {
    writeln!(
        w,
        "# vertex clique cover instance; vertex k stands for original uncovered edge (u, v)"
    )?;
    for (k, &(u, v)) in inst.origin.iter().enumerate() {
        match labels {
            Some(ls) => writeln!(w, "# origin {} {} {}", k, ls[u as usize], ls[v as usize])?,
            None => writeln!(w, "# origin {} {} {}", k, u, v)?,
        }
    }
    write_edge_list(w, &inst.h, None)
}

/// Erdos-Renyi G(n, p): each of the C(n, 2) pairs is an edge independently
/// with probability p. Deterministic per (n, p, seed).
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(&edges, Some(n))
}
