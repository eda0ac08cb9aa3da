use crate::table::{ElementSet, SubgroupTable};
use crate::GroupError;
use rayon::prelude::*;
use state_space::DenseState;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `U_g |psi>` for every element, in index order. Elements act on qubits 1, 2.
pub fn orbit_states(g: &SubgroupTable, state: &DenseState) -> Result<Vec<DenseState>, GroupError> {
    if state.n_qubits() < 2 {
        return Err(GroupError::StateTooSmall(state.n_qubits()));
    }
    let gens: Vec<Vec<num_complex::Complex64>> =
        g.generators.iter().map(|s| s.matrix(2).map(|m| m.to_complex())).collect::<Result<_, _>>()?;
    let mut by_depth: Vec<u32> = (0..g.order() as u32).collect();
    by_depth.sort_by_key(|&x| (g.distance(x), x));
    let mut out: Vec<Option<DenseState>> = vec![None; g.order()];
    // identity may be a phase multiple of 1 in the mod-phase table; that is harmless for states
    out[g.identity() as usize] = Some(state.clone());
    let depth_max = g.diameter();
    let mut start = 1;
    for d in 1..=depth_max {
        let end = start + by_depth[start..].iter().take_while(|&&x| g.distance(x) == d).count();
        let layer: Vec<(u32, DenseState)> = by_depth[start..end]
            .par_iter()
            .map(|&x| {
                let (p, s) = g.parent(x).expect("not the identity");
                let ps = out[p as usize].as_ref().expect("parent computed at previous depth");
                (x, ps.apply_matrix(&[1, 2], &gens[s]).expect("support 1,2"))
            })
            .collect();
        for (x, s) in layer {
            out[x as usize] = Some(s);
        }
        start = end;
    }
    Ok(out.into_iter().map(|s| s.expect("every element reached")).collect())
}

/// Projective stabilizer `{g : |<psi|U_g|psi>| >= 1 - tol}`, verified closed.
pub fn stabilizer_subgroup(g: &SubgroupTable, state: &DenseState, tol: f64) -> Result<ElementSet, GroupError> {
    let orbit = orbit_states(g, state)?;
    stabilizer_from_orbit(g, state, &orbit, tol)
}

pub fn stabilizer_from_orbit(
    g: &SubgroupTable,
    state: &DenseState,
    orbit: &[DenseState],
    tol: f64,
) -> Result<ElementSet, GroupError> {
    let mut out = Vec::new();
    for (i, s) in orbit.iter().enumerate() {
        let ov = state.inner(s).norm();
        if ov >= 1.0 - tol {
            out.push(i as u32);
        } else if ov >= 1.0 - 10.0 * tol {
            return Err(GroupError::AmbiguousOverlap { element: g.word_string(i as u32), overlap: ov, tol });
        }
    }
    if !g.is_subgroup(&out) {
        return Err(GroupError::NotSubgroup("stabilizer"));
    }
    Ok(out)
}

/// Elements that factor as `A (x) B`.
pub fn local_subgroup(g: &SubgroupTable) -> Result<ElementSet, GroupError> {
    let flags: Vec<bool> =
        g.elements().par_iter().map(|m| m.is_local_tensor()).collect::<Result<_, _>>()?;
    let out: ElementSet = flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i as u32).collect();
    if !g.is_subgroup(&out) {
        return Err(GroupError::NotSubgroup("local elements"));
    }
    Ok(out)
}
