//! Stabilizer states from reduced check matrices, with integer entropies and
//! an entropy-vector census.

pub mod census;
pub mod tableau;

pub use census::{entropy_census, group_entropy_vector, Census, CensusEntry};
pub use tableau::{
    enumerate_groups, enumerate_stabilizer_states, f2_rank, lagrangian_count, stabilizer_state_count, PauliRow,
    StabTableau, MAX_ENUM_QUBITS,
};

#[derive(Debug, thiserror::Error)]
pub enum CensusError {
    #[error("enumeration supports 1..={max} qubits, got {0}", max = MAX_ENUM_QUBITS)]
    TooLarge(usize),
    #[error("a tableau on {n} qubits needs {n} rows of width {n}, got {rows} rows")]
    Shape { n: usize, rows: usize },
    #[error("generators do not commute")]
    NotCommuting,
    #[error("generators are dependent")]
    Dependent,
    #[error("generator product is not Hermitian")]
    NotHermitian,
    #[error("census counted {got} states, expected {expected}")]
    CountMismatch { got: u64, expected: u64 },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
