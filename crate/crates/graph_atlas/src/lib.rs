//! Cayley graphs, reachability graphs (left-coset quotients) and contracted
//! graphs (double-coset quotients), colored by entropy vector.

pub mod export;
pub mod metrics;
pub mod orbits;

pub use export::{file_stem, to_dot, to_graphml, to_json, write_all};
pub use metrics::{graph_metrics, permutation_isomorphic, wl_hash, GraphMetrics};
pub use orbits::{orbit_partition_census, OrbitCensus};

use entropy_lab::{entropy_vector, EntropyVector};
use group_engine::{
    double_cosets, left_cosets, local_subgroup, orbit_states, stabilizer_from_orbit, GroupError, SubgroupTable,
    DEFAULT_TOLERANCE,
};
use rayon::prelude::*;
use serde::Serialize;
use state_space::DenseState;
use std::collections::BTreeMap;

/// Two entropy vectors closer than this are the same color.
pub const COLOR_TOL: f64 = 1e-8;
/// Distinct colors must be at least this far apart, so grouping is unambiguous.
pub const COLOR_GAP: f64 = 1e-4;

#[derive(Debug, thiserror::Error)]
pub enum AtlasError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    State(#[from] state_space::StateError),
    #[error("class {class} mixes entropy vectors {a} and {b}")]
    MixedClass { class: usize, a: String, b: String },
    #[error("entropy vectors {a} and {b} are too close to group unambiguously")]
    AmbiguousColors { a: String, b: String },
    #[error(transparent)]
    Census(#[from] stab_census::CensusError),
    #[error("{0}")]
    Unsupported(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Cayley,
    Reachability,
    Contracted,
}

impl GraphKind {
    pub fn name(&self) -> &'static str {
        match self {
            GraphKind::Cayley => "cayley",
            GraphKind::Reachability => "reach",
            GraphKind::Contracted => "contract",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Vertex {
    /// Smallest group-element index in the class.
    pub representative: u32,
    /// Number of group elements in the class.
    pub class_size: usize,
    pub color: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// Generator indices inducing this edge, sorted.
    pub labels: Vec<usize>,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientGraph {
    pub kind: GraphKind,
    pub group: String,
    pub state: String,
    pub generators: Vec<String>,
    pub stabilizer_order: usize,
    pub vertices: Vec<Vertex>,
    /// Cayley and reachability graphs keep one edge per (vertex, generator),
    /// loops included. Contracted graphs keep one undirected edge per
    /// adjacent pair with merged labels, loops dropped.
    pub edges: Vec<Edge>,
    /// `succ[s][v]`: image of vertex `v` under generator `s`; empty for
    /// contracted graphs, where generators do not act as maps.
    pub succ: Vec<Vec<u32>>,
    pub palette: Vec<EntropyVector>,
}

impl QuotientGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn color_count(&self) -> usize {
        let mut used: Vec<usize> = self.vertices.iter().filter_map(|v| v.color).collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    }

    /// Undirected adjacency without loops or repeats.
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }
}

fn permutation_edges(succ: &[Vec<u32>]) -> Vec<Edge> {
    let n = succ.first().map_or(0, Vec::len);
    let mut edges = Vec::with_capacity(n * succ.len());
    for v in 0..n {
        for (s, t) in succ.iter().enumerate() {
            edges.push(Edge { from: v, to: t[v] as usize, labels: vec![s] });
        }
    }
    edges
}

fn generator_names(g: &SubgroupTable) -> Vec<String> {
    g.generators.iter().map(|s| s.to_string()).collect()
}

pub fn group_label(g: &SubgroupTable) -> String {
    let names = generator_names(g).join("-");
    if g.mod_phase {
        names
    } else {
        format!("{names}-phase")
    }
}

/// The Cayley graph: one vertex per element, `g -> s g` per generator.
pub fn cayley_graph(g: &SubgroupTable) -> QuotientGraph {
    let succ: Vec<Vec<u32>> = (0..g.generators.len()).map(|s| g.left_table(s).to_vec()).collect();
    QuotientGraph {
        kind: GraphKind::Cayley,
        group: group_label(g),
        state: "none".into(),
        generators: generator_names(g),
        stabilizer_order: 1,
        vertices: (0..g.order() as u32).map(|i| Vertex { representative: i, class_size: 1, color: None }).collect(),
        edges: permutation_edges(&succ),
        succ,
        palette: Vec::new(),
    }
}

/// Groups vectors into colors: members of a color lie within `COLOR_TOL` of
/// its first member, and distinct colors are `COLOR_GAP` apart. Colors are
/// numbered in lexicographic order of their vectors.
pub fn assign_colors(vectors: &[EntropyVector]) -> Result<(Vec<EntropyVector>, Vec<usize>), AtlasError> {
    let mut reps: Vec<EntropyVector> = Vec::new();
    let mut raw = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut found = None;
        for (i, r) in reps.iter().enumerate() {
            let d = r.max_abs_diff(v);
            if d < COLOR_TOL {
                found = Some(i);
                break;
            }
            if d < COLOR_GAP {
                return Err(AtlasError::AmbiguousColors { a: r.to_string(), b: v.to_string() });
            }
        }
        raw.push(match found {
            Some(i) => i,
            None => {
                reps.push(v.clone());
                reps.len() - 1
            }
        });
    }
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| reps[a].components.partial_cmp(&reps[b].components).expect("finite entropies"));
    let mut rank = vec![0; reps.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let palette = order.iter().map(|&o| reps[o].clone()).collect();
    Ok((palette, raw.into_iter().map(|c| rank[c]).collect()))
}

/// Shared data for both quotients of one (group, state) pair.
pub struct OrbitData {
    pub stabilizer: Vec<u32>,
    /// Coset class of each group element.
    pub class_of: Vec<u32>,
    pub classes: Vec<Vec<u32>>,
    /// State of each coset, `U_rep |psi>`.
    pub states: Vec<DenseState>,
    pub vectors: Vec<EntropyVector>,
}

pub fn orbit_data(g: &SubgroupTable, state: &DenseState) -> Result<OrbitData, AtlasError> {
    let orbit = orbit_states(g, state)?;
    let stabilizer = stabilizer_from_orbit(g, state, &orbit, DEFAULT_TOLERANCE)?;
    let cs = left_cosets(g, &stabilizer)?;
    let mut orbit: Vec<Option<DenseState>> = orbit.into_iter().map(Some).collect();
    let states: Vec<DenseState> = cs.classes.iter().map(|c| orbit[c[0] as usize].take().unwrap()).collect();
    let vectors = states.par_iter().map(entropy_vector).collect::<Result<Vec<_>, _>>()?;
    Ok(OrbitData { stabilizer, class_of: cs.class_of, classes: cs.classes, states, vectors })
}

/// Left cosets of the state's stabilizer, with `g Stab -> s g Stab` edges.
pub fn reachability_graph(g: &SubgroupTable, state: &DenseState, label: &str) -> Result<QuotientGraph, AtlasError> {
    let data = orbit_data(g, state)?;
    reachability_from(g, &data, label)
}

pub fn reachability_from(g: &SubgroupTable, data: &OrbitData, label: &str) -> Result<QuotientGraph, AtlasError> {
    let succ: Vec<Vec<u32>> = (0..g.generators.len())
        .map(|s| {
            let t = g.left_table(s);
            data.classes.iter().map(|c| data.class_of[t[c[0] as usize] as usize]).collect()
        })
        .collect();
    let (palette, colors) = assign_colors(&data.vectors)?;
    Ok(QuotientGraph {
        kind: GraphKind::Reachability,
        group: group_label(g),
        state: label.into(),
        generators: generator_names(g),
        stabilizer_order: data.stabilizer.len(),
        vertices: data
            .classes
            .iter()
            .zip(colors)
            .map(|(c, col)| Vertex { representative: c[0], class_size: c.len(), color: Some(col) })
            .collect(),
        edges: permutation_edges(&succ),
        succ,
        palette,
    })
}

/// Double cosets `L \ G / Stab` with `L` the local subgroup. Every class must
/// carry a single entropy vector.
pub fn contracted_graph(g: &SubgroupTable, state: &DenseState, label: &str) -> Result<QuotientGraph, AtlasError> {
    let data = orbit_data(g, state)?;
    contracted_from(g, &data, label)
}

pub fn contracted_from(g: &SubgroupTable, data: &OrbitData, label: &str) -> Result<QuotientGraph, AtlasError> {
    let local = local_subgroup(g)?;
    let dc = double_cosets(g, &local, &data.stabilizer)?;
    // every coset lies inside one double coset
    let coset_class: Vec<usize> = data.classes.iter().map(|c| dc.class_of[c[0] as usize] as usize).collect();
    let (palette, colors) = assign_colors(&data.vectors)?;
    let mut class_color: Vec<Option<usize>> = vec![None; dc.len()];
    for (coset, &d) in coset_class.iter().enumerate() {
        match class_color[d] {
            None => class_color[d] = Some(colors[coset]),
            Some(c) if c != colors[coset] => {
                return Err(AtlasError::MixedClass { class: d, a: palette[c].to_string(), b: palette[colors[coset]].to_string() })
            }
            _ => {}
        }
    }
    let mut labels: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for s in 0..g.generators.len() {
        let t = g.left_table(s);
        for (coset, c) in data.classes.iter().enumerate() {
            let (a, b) = (coset_class[coset], dc.class_of[t[c[0] as usize] as usize] as usize);
            if a != b {
                let e = labels.entry((a.min(b), a.max(b))).or_default();
                if !e.contains(&s) {
                    e.push(s);
                }
            }
        }
    }
    let edges = labels
        .into_iter()
        .map(|((from, to), mut l)| {
            l.sort_unstable();
            Edge { from, to, labels: l }
        })
        .collect();
    Ok(QuotientGraph {
        kind: GraphKind::Contracted,
        group: group_label(g),
        state: label.into(),
        generators: generator_names(g),
        stabilizer_order: data.stabilizer.len(),
        vertices: dc
            .classes
            .iter()
            .zip(class_color)
            .map(|(c, col)| Vertex { representative: c[0], class_size: c.len(), color: col })
            .collect(),
        edges,
        succ: Vec::new(),
        palette,
    })
}
