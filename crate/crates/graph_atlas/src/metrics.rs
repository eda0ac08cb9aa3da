use crate::{AtlasError, GraphKind, QuotientGraph};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub vertices: usize,
    /// Non-loop edges.
    pub edges: usize,
    /// Longest shortest path following generator directions. For contracted
    /// graphs, which have no directions, this equals `undirected_diameter`.
    pub diameter: u32,
    pub undirected_diameter: u32,
    /// Loops per generator (vertices the generator fixes).
    pub fixed_points: Vec<usize>,
    pub colors: usize,
    pub wl_hash: String,
}

fn eccentricity(adj: &[Vec<usize>], src: usize) -> Option<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[src] = 0;
    let mut q = VecDeque::from([src]);
    let mut far = 0;
    let mut seen = 1;
    while let Some(v) = q.pop_front() {
        for &w in &adj[v] {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                far = far.max(dist[w]);
                seen += 1;
                q.push_back(w);
            }
        }
    }
    (seen == adj.len()).then_some(far)
}

fn diameter_of(adj: &[Vec<usize>], transitive: bool) -> Result<u32, AtlasError> {
    if adj.is_empty() {
        return Ok(0);
    }
    if transitive {
        // Cayley graphs are vertex-transitive: one source suffices
        return eccentricity(adj, 0).ok_or(AtlasError::Disconnected);
    }
    let ecc: Option<Vec<u32>> = (0..adj.len()).into_par_iter().map(|s| eccentricity(adj, s)).collect();
    ecc.map(|e| e.into_iter().max().unwrap_or(0)).ok_or(AtlasError::Disconnected)
}

pub fn graph_metrics(g: &QuotientGraph) -> Result<GraphMetrics, AtlasError> {
    let undirected = g.neighbours();
    let transitive = g.kind == GraphKind::Cayley;
    let undirected_diameter = diameter_of(&undirected, transitive)?;
    let diameter = if g.succ.is_empty() {
        undirected_diameter
    } else {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
        for t in &g.succ {
            for (v, &w) in t.iter().enumerate() {
                if w as usize != v {
                    out[v].push(w as usize);
                }
            }
        }
        diameter_of(&out, transitive)?
    };
    let fixed_points = (0..g.generators.len())
        .map(|s| g.edges.iter().filter(|e| e.is_loop() && e.labels.contains(&s)).count())
        .collect();
    Ok(GraphMetrics {
        vertices: g.vertex_count(),
        edges: g.edges.iter().filter(|e| !e.is_loop()).count(),
        diameter,
        undirected_diameter,
        fixed_points,
        colors: g.color_count(),
        wl_hash: wl_hash(g),
    })
}

/// One-dimensional Weisfeiler-Leman refinement over labeled, directed edges.
/// Equal graphs up to relabeling of vertices get equal hashes; unequal hashes
/// prove non-isomorphism. Entropy colors are ignored.
pub fn wl_hash(g: &QuotientGraph) -> String {
    let n = g.vertex_count();
    // (label, direction, neighbour) per vertex; loops get their own direction tag
    let mut inc: Vec<Vec<(u32, u8, usize)>> = vec![Vec::new(); n];
    for e in &g.edges {
        for &l in &e.labels {
            if e.is_loop() {
                inc[e.from].push((l as u32, 2, e.to));
            } else {
                inc[e.from].push((l as u32, 0, e.to));
                inc[e.to].push((l as u32, 1, e.from));
            }
        }
    }
    let mut color = vec![0u32; n];
    let mut hasher = Sha256::new();
    hasher.update(format!("{:?}|{}|", g.kind, n).as_bytes());
    let mut classes = 1;
    loop {
        let sigs: Vec<Vec<u32>> = (0..n)
            .map(|v| {
                let mut nb: Vec<(u32, u8, u32)> = inc[v].iter().map(|&(l, d, w)| (l, d, color[w])).collect();
                nb.sort_unstable();
                let mut s = vec![color[v]];
                s.extend(nb.into_iter().flat_map(|(l, d, c)| [l, d as u32, c]));
                s
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        let mut uniq: Vec<Vec<u32>> = Vec::new();
        for run in sorted.chunk_by(|a, b| a == b) {
            hasher.update(format!("{:?}x{};", run[0], run.len()).as_bytes());
            uniq.push(run[0].clone());
        }
        color = sigs.iter().map(|s| uniq.binary_search(s).unwrap() as u32).collect();
        if uniq.len() == classes {
            break;
        }
        classes = uniq.len();
    }
    hex::encode(&hasher.finalize()[..16])
}

/// Exact labeled isomorphism for graphs where every generator acts as a
/// permutation. Such a map is fixed by the image of one vertex, so each
/// candidate image is tried and propagated. `None` if either graph has no
/// generator action (contracted graphs).
pub fn permutation_isomorphic(a: &QuotientGraph, b: &QuotientGraph) -> Option<bool> {
    if a.succ.is_empty() || b.succ.is_empty() {
        return None;
    }
    if a.vertex_count() != b.vertex_count() || a.succ.len() != b.succ.len() {
        return Some(false);
    }
    let n = a.vertex_count();
    let found = (0..n).into_par_iter().any(|start| {
        let mut map = vec![u32::MAX; n];
        map[0] = start as u32;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let img = map[v] as usize;
            for (sa, sb) in a.succ.iter().zip(&b.succ) {
                let (w, wi) = (sa[v] as usize, sb[img]);
                if map[w] == u32::MAX {
                    map[w] = wi;
                    stack.push(w);
                } else if map[w] != wi {
                    return false;
                }
            }
        }
        // connected graphs: every vertex is reached; bijectivity remains
        let mut seen = vec![false; n];
        map.iter().all(|&m| m != u32::MAX && !std::mem::replace(&mut seen[m as usize], true))
    });
    Some(found)
}
