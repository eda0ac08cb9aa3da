use crate::AtlasError;
use group_engine::{hc_generators, GroupError};
use rayon::prelude::*;
use serde::Serialize;
use stab_census::enumerate_stabilizer_states;
use state_space::DenseState;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub n: usize,
    pub states: usize,
    /// orbit size -> number of orbits of that size
    pub orbits_by_size: BTreeMap<usize, usize>,
}

/// Partitions every `n`-qubit stabilizer state into orbits of
/// `<H1, H2, C12, C21>` acting on qubits 1 and 2.
pub fn orbit_partition_census(n: usize) -> Result<OrbitCensus, AtlasError> {
    if !(2..=4).contains(&n) {
        return Err(AtlasError::Unsupported(format!("orbit census needs 2..=4 qubits, got {n}")));
    }
    let states: Vec<DenseState> = enumerate_stabilizer_states(n)?
        .collect::<Vec<_>>()
        .par_iter()
        .map(|t| t.to_dense())
        .collect();
    let index: HashMap<Vec<i64>, usize> = states.iter().enumerate().map(|(i, s)| (s.key(), i)).collect();
    assert_eq!(index.len(), states.len(), "stabilizer states have distinct keys");
    let gens: Vec<Vec<_>> =
        hc_generators().iter().map(|g| g.matrix(2).map(|m| m.to_complex())).collect::<Result<_, _>>().map_err(GroupError::from)?;
    let images: Vec<Vec<usize>> = states
        .par_iter()
        .map(|s| {
            gens.iter()
                .map(|m| {
                    let t = s.apply_matrix(&[1, 2], m).expect("two qubits present");
                    *index.get(&t.key()).expect("Clifford images of stabilizer states are stabilizer states")
                })
                .collect()
        })
        .collect();
    let mut parent: Vec<usize> = (0..states.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, img) in images.iter().enumerate() {
        for &j in img {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..states.len() {
        let r = find(&mut parent, i);
        *sizes.entry(r).or_default() += 1;
    }
    let mut orbits_by_size = BTreeMap::new();
    for (_, size) in sizes {
        *orbits_by_size.entry(size).or_default() += 1;
    }
    Ok(OrbitCensus { n, states: states.len(), orbits_by_size })
}
