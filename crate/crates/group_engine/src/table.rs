use crate::GroupError;
use clifford_core::{format_word, ExactMatrix, Gen};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::OnceLock;

pub const DEFAULT_CAP: usize = 200_000;
const NO_GEN: u8 = u8::MAX;

/// Closure of a generator subset, with shortest words and index tables.
///
/// Elements are sorted by canonical encoding. `left[s][g]` is the index of
/// `s * g`. Words are products in written order; the BFS multiplies on the
/// left, so distances measure the directed word length over the generators.
#[derive(Debug)]
pub struct SubgroupTable {
    pub generators: Vec<Gen>,
    pub mod_phase: bool,
    elements: Vec<ExactMatrix>,
    index: HashMap<ExactMatrix, u32>,
    dist: Vec<u32>,
    parent: Vec<(u32, u8)>,
    left: Vec<Vec<u32>>,
    identity: u32,
    diameter: u32,
    right: OnceLock<Vec<Vec<u32>>>,
}

pub type ElementSet = Vec<u32>;

fn normalize(m: ExactMatrix, mod_phase: bool) -> ExactMatrix {
    if mod_phase {
        m.canonical_mod_phase()
    } else {
        m
    }
}

impl SubgroupTable {
    pub fn close(generators: &[Gen], mod_phase: bool) -> Result<Self, GroupError> {
        Self::close_with_cap(generators, mod_phase, DEFAULT_CAP)
    }

    pub fn close_with_cap(generators: &[Gen], mod_phase: bool, cap: usize) -> Result<Self, GroupError> {
        let mut gens: Vec<Gen> = Vec::new();
        for g in generators {
            if !gens.contains(g) {
                gens.push(*g);
            }
        }
        let gmats: Vec<ExactMatrix> = gens.iter().map(|g| g.matrix(2)).collect::<Result<_, _>>()?;
        let id = normalize(ExactMatrix::identity(4), mod_phase);
        let mut elements = vec![id.clone()];
        let mut index: HashMap<ExactMatrix, u32> = HashMap::from([(id, 0)]);
        let mut dist = vec![0u32];
        let mut parent = vec![(0u32, NO_GEN)];
        let mut left_bfs: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut frontier: Vec<u32> = vec![0];
        let mut depth = 0;
        while !frontier.is_empty() {
            // products of this level in parallel, merged in frontier order
            let products: Vec<Vec<ExactMatrix>> = frontier
                .par_iter()
                .map(|&g| gmats.iter().map(|s| normalize(s.multiply(&elements[g as usize]).unwrap(), mod_phase)).collect())
                .collect();
            depth += 1;
            let mut next = Vec::new();
            for (&g, prods) in frontier.iter().zip(products) {
                for (si, p) in prods.into_iter().enumerate() {
                    let idx = match index.get(&p) {
                        Some(&i) => i,
                        None => {
                            let i = elements.len() as u32;
                            if elements.len() >= cap {
                                return Err(GroupError::CapExceeded(cap));
                            }
                            index.insert(p.clone(), i);
                            elements.push(p);
                            dist.push(depth);
                            parent.push((g, si as u8));
                            next.push(i);
                            i
                        }
                    };
                    let tbl = &mut left_bfs[si];
                    if tbl.len() <= g as usize {
                        tbl.resize(g as usize + 1, u32::MAX);
                    }
                    tbl[g as usize] = idx;
                }
            }
            frontier = next;
        }
        let diameter = dist.iter().copied().max().unwrap_or(0);

        // relabel in canonical-encoding order
        let mut order: Vec<u32> = (0..elements.len() as u32).collect();
        order.sort_by(|&a, &b| elements[a as usize].cmp(&elements[b as usize]));
        let mut new_of = vec![0u32; elements.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of[old as usize] = new as u32;
        }
        let mut sorted: Vec<Option<ExactMatrix>> = elements.into_iter().map(Some).collect();
        let elements: Vec<ExactMatrix> = order.iter().map(|&o| sorted[o as usize].take().unwrap()).collect();
        let index = elements.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let dist = order.iter().map(|&o| dist[o as usize]).collect();
        let parent = order
            .iter()
            .map(|&o| {
                let (p, s) = parent[o as usize];
                (new_of[p as usize], s)
            })
            .collect();
        let left = left_bfs
            .iter()
            .map(|t| order.iter().map(|&o| new_of[t[o as usize] as usize]).collect())
            .collect();
        Ok(SubgroupTable {
            generators: gens,
            mod_phase,
            elements,
            index,
            dist,
            parent,
            left,
            identity: new_of[0],
            diameter,
            right: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn element(&self, i: u32) -> &ExactMatrix {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[ExactMatrix] {
        &self.elements
    }

    pub fn distance(&self, i: u32) -> u32 {
        self.dist[i as usize]
    }

    pub fn index_of(&self, m: &ExactMatrix) -> Option<u32> {
        self.index.get(&normalize(m.clone(), self.mod_phase)).copied()
    }

    pub fn left_table(&self, gen: usize) -> &[u32] {
        &self.left[gen]
    }

    /// `right[s][g]` is the index of `g * s`.
    pub fn right_table(&self, gen: usize) -> &[u32] {
        &self.right.get_or_init(|| {
            (0..self.generators.len())
                .map(|s| {
                    let sidx = self.index_of(&self.generators[s].matrix(2).unwrap()).unwrap();
                    (0..self.order() as u32).map(|g| self.mul(g, sidx)).collect()
                })
                .collect()
        })[gen]
    }

    /// `(p, s)` with `x = generators[s] * p` and `p` one step closer to the identity.
    pub fn parent(&self, x: u32) -> Option<(u32, usize)> {
        (x != self.identity).then(|| {
            let (p, s) = self.parent[x as usize];
            (p, s as usize)
        })
    }

    /// Generator indices of a shortest word, in written order.
    pub fn word_indices(&self, mut g: u32) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.dist[g as usize] as usize);
        while g != self.identity {
            let (p, s) = self.parent[g as usize];
            w.push(s);
            g = p;
        }
        w
    }

    pub fn word(&self, g: u32) -> Vec<Gen> {
        self.word_indices(g).into_iter().map(|s| self.generators[s as usize]).collect()
    }

    pub fn word_string(&self, g: u32) -> String {
        format_word(&self.word(g))
    }

    /// Index of `a * b`.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.word_indices(a).iter().rev().fold(b, |acc, &s| self.left[s as usize][acc as usize])
    }

    pub fn inverse(&self, a: u32) -> u32 {
        let inv = self.elements[a as usize].adjoint();
        self.index_of(&inv).expect("closed group contains inverses")
    }

    /// The permutation `g -> a * g`.
    pub fn left_permutation(&self, a: u32) -> Vec<u32> {
        let w = self.word_indices(a);
        (0..self.order() as u32)
            .map(|g| w.iter().rev().fold(g, |acc, &s| self.left[s as usize][acc as usize]))
            .collect()
    }

    /// True when the set is closed under products (hence a subgroup).
    pub fn is_subgroup(&self, set: &[u32]) -> bool {
        if !set.contains(&self.identity) {
            return false;
        }
        let member: std::collections::HashSet<u32> = set.iter().copied().collect();
        set.iter().all(|&a| set.iter().all(|&b| member.contains(&self.mul(a, b))))
    }

    /// Subgroup generated by the given elements, as sorted indices.
    pub fn generated_by(&self, gens: &[u32]) -> ElementSet {
        let mut seen = vec![false; self.order()];
        seen[self.identity as usize] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let p = self.mul(g, out[i]);
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    out.push(p);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// A small generating set for a subgroup, chosen greedily in index order.
    pub fn generating_set(&self, subgroup: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut closure: std::collections::HashSet<u32> = [self.identity].into();
        for &h in subgroup {
            if !closure.contains(&h) {
                gens.push(h);
                closure = self.generated_by(&gens).into_iter().collect();
            }
        }
        gens
    }

    /// Converts table elements to floating matrices, in index order.
    pub fn float_matrices(&self) -> Vec<Vec<num_complex::Complex64>> {
        self.elements.par_iter().map(|m| m.to_complex()).collect()
    }

    pub fn key(&self) -> String {
        crate::cache::group_key(&self.generators, self.mod_phase)
    }

    pub(crate) fn parts(&self) -> (&[ExactMatrix], &[u32], &[(u32, u8)]) {
        (&self.elements, &self.dist, &self.parent)
    }

    pub(crate) fn from_parts(
        generators: Vec<Gen>,
        mod_phase: bool,
        elements: Vec<ExactMatrix>,
        dist: Vec<u32>,
        parent: Vec<(u32, u8)>,
    ) -> Result<Self, GroupError> {
        let n = elements.len();
        if dist.len() != n || parent.len() != n || n == 0 {
            return Err(GroupError::Cache("inconsistent lengths".into()));
        }
        let index: HashMap<ExactMatrix, u32> = elements.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        if index.len() != n {
            return Err(GroupError::Cache("duplicate elements".into()));
        }
        let id = normalize(ExactMatrix::identity(4), mod_phase);
        let identity = *index.get(&id).ok_or_else(|| GroupError::Cache("identity missing".into()))?;
        // validate the parent structure while rebuilding the left tables
        for (i, &(p, s)) in parent.iter().enumerate() {
            if i as u32 == identity {
                continue;
            }
            let s = s as usize;
            if s >= generators.len() || p as usize >= n || dist[p as usize] + 1 != dist[i] {
                return Err(GroupError::Cache("bad parent entry".into()));
            }
        }
        let left: Vec<Vec<u32>> = generators
            .iter()
            .map(|g| {
                let gm = g.matrix(2).unwrap();
                elements
                    .par_iter()
                    .map(|e| index.get(&normalize(gm.multiply(e).unwrap(), mod_phase)).copied())
                    .collect::<Option<Vec<u32>>>()
            })
            .collect::<Option<_>>()
            .ok_or_else(|| GroupError::Cache("element set not closed".into()))?;
        for (i, &(p, s)) in parent.iter().enumerate() {
            if i as u32 != identity && left[s as usize][p as usize] != i as u32 {
                return Err(GroupError::Cache("parent word mismatch".into()));
            }
        }
        let diameter = dist.iter().copied().max().unwrap_or(0);
        Ok(SubgroupTable {
            generators,
            mod_phase,
            elements,
            index,
            dist,
            parent,
            left,
            identity,
            diameter,
            right: OnceLock::new(),
        })
    }
}
