use crate::matrix::ExactMatrix;
use crate::CoreError;
use std::fmt;
use std::str::FromStr;

/// One letter of the generator alphabet `{H1, H2, P1, P2, C12, C21}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    H(u8),
    P(u8),
    /// CNOT with (control, target).
    C(u8, u8),
}

pub const ALPHABET: [Gen; 6] = [Gen::H(1), Gen::H(2), Gen::P(1), Gen::P(2), Gen::C(1, 2), Gen::C(2, 1)];

impl Gen {
    pub fn qubits(&self) -> Vec<u8> {
        match *self {
            Gen::H(q) | Gen::P(q) => vec![q],
            Gen::C(c, t) => vec![c, t],
        }
    }

    /// Matrix on `n_qubits` (1 or 2) in the ordering `|a1 a2> = |a1> (x) |a2>`.
    pub fn matrix(&self, n_qubits: usize) -> Result<ExactMatrix, CoreError> {
        if !(1..=2).contains(&n_qubits) {
            return Err(CoreError::QubitCount(n_qubits));
        }
        if self.qubits().iter().any(|&q| q == 0 || q as usize > n_qubits) {
            return Err(CoreError::IndexOutOfRange(self.to_string(), n_qubits));
        }
        let local = match *self {
            Gen::H(_) => ExactMatrix::from_ints(2, &[(1, 0), (1, 0), (1, 0), (-1, 0)], 1)?,
            Gen::P(_) => ExactMatrix::from_ints(2, &[(1, 0), (0, 0), (0, 0), (0, 1)], 0)?,
            Gen::C(c, t) => {
                if c == t {
                    return Err(CoreError::UnknownGenerator(self.to_string()));
                }
                return Ok(cnot(c));
            }
        };
        if n_qubits == 1 {
            return Ok(local);
        }
        let id = ExactMatrix::identity(2);
        Ok(match self.qubits()[0] {
            1 => local.kron(&id),
            _ => id.kron(&local),
        })
    }
}

fn cnot(control: u8) -> ExactMatrix {
    // basis index = 2*a1 + a2
    let perm: [usize; 4] = if control == 1 { [0, 1, 3, 2] } else { [0, 3, 2, 1] };
    let mut e = vec![(0i64, 0i64); 16];
    for (src, &dst) in perm.iter().enumerate() {
        e[dst * 4 + src] = (1, 0);
    }
    ExactMatrix::from_ints(4, &e, 0).expect("4x4")
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::H(q) => write!(f, "H{q}"),
            Gen::P(q) => write!(f, "P{q}"),
            Gen::C(c, t) => write!(f, "C{c}{t}"),
        }
    }
}

impl FromStr for Gen {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || CoreError::UnknownGenerator(s.to_string());
        let (head, rest) = s.split_at(s.chars().next().map(char::len_utf8).ok_or_else(bad)?);
        let digits: Vec<u8> = rest
            .chars()
            .filter(|c| *c != '_' && *c != ',')
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        match (head.to_ascii_uppercase().as_str(), digits.as_slice()) {
            ("H", [q]) => Ok(Gen::H(*q)),
            ("P" | "S", [q]) => Ok(Gen::P(*q)),
            ("C", [c, t]) if c != t => Ok(Gen::C(*c, *t)),
            _ => Err(bad()),
        }
    }
}

pub fn parse_gens(list: &str) -> Result<Vec<Gen>, CoreError> {
    let mut out = Vec::new();
    for tok in list.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        if tok.eq_ignore_ascii_case("all") {
            out.extend(ALPHABET);
            continue;
        }
        let g: Gen = tok.parse()?;
        if !out.contains(&g) {
            out.push(g);
        }
    }
    Ok(out)
}

/// A Clifford element with its local support. Composite elements of the
/// two-qubit group live on support `[1, 2]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    pub matrix: ExactMatrix,
    pub support: Vec<usize>,
}

impl CliffordElement {
    pub fn new(matrix: ExactMatrix, support: Vec<usize>) -> Result<Self, CoreError> {
        if matrix.dim() != 1 << support.len() {
            return Err(CoreError::Shape { dim: matrix.dim(), len: support.len() });
        }
        Ok(CliffordElement { matrix, support })
    }

    pub fn two_qubit(matrix: ExactMatrix) -> Self {
        CliffordElement { matrix, support: vec![1, 2] }
    }

    pub fn eq_mod_phase(&self, other: &CliffordElement) -> bool {
        self.support == other.support
            && self.matrix.canonical_mod_phase() == other.matrix.canonical_mod_phase()
    }
}

/// `gate(name, n_qubits)`: the exact matrix of a named generator.
pub fn gate(name: &str, n_qubits: usize) -> Result<CliffordElement, CoreError> {
    let g: Gen = name.parse()?;
    let m = g.matrix(n_qubits)?;
    Ok(CliffordElement { matrix: m, support: (1..=n_qubits).collect() })
}

/// Evaluates a product of generators in written order.
pub fn word_matrix(word: &[Gen], n_qubits: usize) -> Result<ExactMatrix, CoreError> {
    let mut acc = ExactMatrix::identity(1 << n_qubits);
    for g in word {
        acc = acc.mul_unchecked(&g.matrix(n_qubits)?);
    }
    Ok(acc)
}

pub fn format_word(word: &[Gen]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(Gen::to_string).collect::<Vec<_>>().join(" ")
}
