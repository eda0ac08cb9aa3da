//! Closure, cosets and stabilizers for subgroups of the two-qubit Clifford group.

pub mod cache;
pub mod cosets;
pub mod formulas;
pub mod stabilizer;
pub mod table;

pub use cache::{group_key, CacheOutcome, GroupCache};
pub use cosets::{double_coset_count, double_cosets, left_cosets, right_cosets, CosetKind, CosetSpace};
pub use formulas::{clifford_order_formula, OrderFormula};
pub use stabilizer::{local_subgroup, orbit_states, stabilizer_from_orbit, stabilizer_subgroup, DEFAULT_TOLERANCE};
pub use table::{ElementSet, SubgroupTable, DEFAULT_CAP};

use clifford_core::Gen;

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error(transparent)]
    Core(#[from] clifford_core::CoreError),
    #[error(transparent)]
    State(#[from] state_space::StateError),
    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("{0} is not a subgroup")]
    NotSubgroup(&'static str),
    #[error("double coset partition has {partition} classes but the fixed-pair count gives {formula}")]
    CountMismatch { partition: usize, formula: usize },
    #[error("overlap {overlap} of element {element} is too close to the cutoff 1 - {tol}; use a smaller tolerance")]
    AmbiguousOverlap { element: String, overlap: f64, tol: f64 },
    #[error("group elements act on qubits 1 and 2 but the state has {0} qubit(s)")]
    StateTooSmall(usize),
    #[error("cache: {0}")]
    Cache(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// The named groups used throughout: (HC)_{1,2} and the full two-qubit group.
pub fn hc_generators() -> Vec<Gen> {
    vec![Gen::H(1), Gen::H(2), Gen::C(1, 2), Gen::C(2, 1)]
}

pub fn c2_generators() -> Vec<Gen> {
    clifford_core::ALPHABET.to_vec()
}
