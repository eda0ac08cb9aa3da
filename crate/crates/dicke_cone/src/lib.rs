//! Closed-form entanglement entropies of Dicke states |D^N_k>, their
//! symmetrized entropy vectors and cone checks, a weighted star-graph min-cut
//! realization, and Pauli / two-qubit Clifford stabilizer checks.
//!
//! Closed forms work in nats; entropy vectors handed to `entropy_lab` are in
//! bits.

pub mod stabilizers;
pub mod star;

pub use stabilizers::{orbit_entropy_values, 
    clifford_stabilizers, entanglement_cardinality, pauli_stabilizers, CliffordReport, PauliOp, PauliReport,
};
pub use star::{star_realization, Side, StarGraph, StarRealization};

use entropy_lab::{check_inequalities, EntropyTable, EntropyVector, InequalityReport};
use serde::Serialize;
use std::f64::consts::LN_2;

/// Largest N for which binomials are computed exactly in `u128`.
pub const MAX_N: usize = 120;

#[derive(Debug, thiserror::Error)]
pub enum DickeError {
    #[error("need 0 < k <= N <= {max}, got N={n}, k={k}", max = MAX_N)]
    Spec { n: usize, k: usize },
    #[error("subsystem size {ell} out of range for N={n}")]
    Ell { n: usize, ell: usize },
    #[error("star term {term} needs cut value {value}, above both caps")]
    Unrealizable { term: usize, value: f64 },
    #[error("claimed stabilizer fails: {0}")]
    ClaimFailed(String),
    #[error("{0} is too large for a dense check")]
    TooLarge(String),
    #[error(transparent)]
    State(#[from] state_space::StateError),
    #[error(transparent)]
    Group(#[from] group_engine::GroupError),
    #[error(transparent)]
    Core(#[from] clifford_core::CoreError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DickeSpec {
    pub n: usize,
    pub k: usize,
}

impl DickeSpec {
    pub fn new(n: usize, k: usize) -> Result<Self, DickeError> {
        if k == 0 || k > n || n > MAX_N {
            return Err(DickeError::Spec { n, k });
        }
        Ok(DickeSpec { n, k })
    }

    fn check_ell(&self, ell: usize, lo: usize, hi: usize) -> Result<(), DickeError> {
        if ell < lo || ell > hi {
            return Err(DickeError::Ell { n: self.n, ell });
        }
        Ok(())
    }

    /// Weights `C(l,i) C(N-l,k-i)` for `i = 0..=min(l,k)`; zero where `k-i > N-l`.
    pub fn counts(&self, ell: usize) -> Vec<u128> {
        (0..=ell.min(self.k)).map(|i| binom(ell, i) * binom(self.n - ell, self.k - i)).collect()
    }
}

pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    // exact: each partial product is itself a binomial
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn xlnx_sum(counts: &[u128]) -> f64 {
    counts.iter().filter(|&&c| c > 0).map(|&c| c as f64 * (c as f64).ln()).sum()
}

/// `S_l` in nats, straight from the diagonal of the reduced density matrix.
pub fn dicke_entropy(spec: DickeSpec, ell: usize) -> Result<f64, DickeError> {
    spec.check_ell(ell, 0, spec.n)?;
    let total = binom(spec.n, spec.k) as f64;
    // `0.0 - x` rather than `-x`, so a pure reduced state reports +0
    Ok(0.0 - spec
        .counts(ell)
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            p * p.ln()
        })
        .sum::<f64>())
}

/// `ln C(N,k) - C(N,k)^-1 sum c_i ln c_i`. Vandermonde makes the first
/// coefficient exactly one for every `l`, not only `l >= k`.
pub fn dicke_entropy_decoupled(spec: DickeSpec, ell: usize) -> Result<f64, DickeError> {
    spec.check_ell(ell, 0, spec.n)?;
    let total = binom(spec.n, spec.k) as f64;
    Ok(total.ln() - xlnx_sum(&spec.counts(ell)) / total)
}

/// `[C(N-1,l) S_l + C(N-1,N-l) S_{N-l}] / C(N,l)`; equals `S_l` by symmetry.
pub fn symmetrized_entropy(spec: DickeSpec, ell: usize) -> Result<f64, DickeError> {
    spec.check_ell(ell, 1, spec.n - 1)?;
    let n = spec.n;
    let a = binom(n - 1, ell) as f64 * dicke_entropy(spec, ell)?;
    let b = binom(n - 1, n - ell) as f64 * dicke_entropy(spec, n - ell)?;
    Ok((a + b) / binom(n, ell) as f64)
}

/// `S_0..=S_N` in nats.
pub fn entropy_profile(spec: DickeSpec) -> Vec<f64> {
    (0..=spec.n).map(|l| dicke_entropy(spec, l).expect("l in range")).collect()
}

/// `-S_{l-1} + 2 S_l - S_{l+1}` for `1 <= l <= ceil(N/2)` (capped at `N-1`).
pub fn sqec_slacks(spec: DickeSpec) -> Vec<f64> {
    let s = entropy_profile(spec);
    (1..=spec.n.div_ceil(2))
        .filter(|&l| l < spec.n)
        .map(|l| -s[l - 1] + 2.0 * s[l] - s[l + 1])
        .collect()
}

/// `-l(l+1) S_{l-1} + 2(l-1)(l+1) S_l - l(l-1) S_{l+1}` for `2 <= l <= N/2`.
pub fn shec_slacks(spec: DickeSpec) -> Vec<f64> {
    let s = entropy_profile(spec);
    (2..=spec.n / 2)
        .map(|l| {
            let l_ = l as f64;
            -l_ * (l_ + 1.0) * s[l - 1] + 2.0 * (l_ - 1.0) * (l_ + 1.0) * s[l] - l_ * (l_ - 1.0) * s[l + 1]
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DickeVector {
    pub spec: DickeSpec,
    /// `S_1..=S_{N-1}` in nats.
    pub entropies: Vec<f64>,
    /// Entropy vector in bits, one component per representative subsystem.
    pub vector: EntropyVector,
    pub sqec: bool,
    /// `None` when there is no `l` in range (N < 4).
    pub shec: Option<bool>,
    pub inequalities: Option<InequalityReport>,
}

/// Tolerance for cone inequalities on closed-form values.
pub const CONE_TOL: f64 = 1e-12;

/// The symmetrized entropy vector. The SA/AL/SSA/MMI battery runs for
/// `N <= 10`, where enumerating all instances is cheap.
pub fn dicke_entropy_vector(spec: DickeSpec) -> Result<DickeVector, DickeError> {
    if spec.n < 2 || spec.n > state_space::MAX_QUBITS {
        return Err(DickeError::Spec { n: spec.n, k: spec.k });
    }
    let s = entropy_profile(spec);
    let table = EntropyTable::from_fn(spec.n, |m| s[m.count_ones() as usize] / LN_2);
    let shec = shec_slacks(spec);
    Ok(DickeVector {
        spec,
        entropies: s[1..spec.n].to_vec(),
        vector: table.vector(),
        sqec: sqec_slacks(spec).iter().all(|&x| x >= -CONE_TOL),
        shec: (!shec.is_empty()).then(|| shec.iter().all(|&x| x >= -CONE_TOL)),
        inequalities: (spec.n <= 10).then(|| check_inequalities(&table)),
    })
}
