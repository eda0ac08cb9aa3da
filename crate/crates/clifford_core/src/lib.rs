//! Exact Clifford arithmetic over `Z[i, 1/sqrt2]`.
//!
//! Every one- and two-qubit Clifford matrix is stored as a Gaussian-integer
//! numerator over a power of `sqrt2`. Canonical forms make equality exact and
//! hashing cheap; [`ExactMatrix::canonical_mod_phase`] picks a representative
//! of the class under the global phase `omega = e^{i pi/4}`.
//!
//! Two-qubit matrices use `|a1 a2> = |a1> (x) |a2>`, so qubit 1 is the high bit
//! of the row index.

pub mod gates;
pub mod matrix;
pub mod relations;
pub mod ring;

pub use gates::{format_word, gate, parse_gens, word_matrix, CliffordElement, Gen, ALPHABET};
pub use matrix::ExactMatrix;
pub use relations::{eval_expr, verify_relations, Equality, Relation, RelationCatalog, RelationCheck};
pub use ring::GaussInt;

#[derive(Debug, thiserror::Error)]
pub enum CoreError {
    #[error("matrix of dimension {dim} cannot hold {len} entries")]
    Shape { dim: usize, len: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator {0} does not fit on {1} qubit(s)")]
    IndexOutOfRange(String, usize),
    #[error("only one- and two-qubit generators are supported, got {0}")]
    QubitCount(usize),
    #[error("expected a 4x4 matrix, got {0}x{0}")]
    NotTwoQubit(usize),
    #[error("word parse error: {0}")]
    Parse(String),
    #[error("decode error: {0}")]
    Decode(&'static str),
}
