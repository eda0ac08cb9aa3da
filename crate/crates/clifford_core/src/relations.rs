//! Word expressions over the generator alphabet and the relation catalog.

use crate::gates::Gen;
use crate::matrix::ExactMatrix;
use crate::CoreError;

/// Parses and evaluates an expression like `(H1 P1)^3`, `P1^-1 P2 P1`, `w^6`.
///
/// Atoms: generators, `w` (omega), `1` (identity), parenthesized groups.
/// `^n` takes integer powers; negative powers use the adjoint.
pub fn eval_expr(src: &str, n_qubits: usize) -> Result<ExactMatrix, CoreError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks: &toks, pos: 0, n_qubits };
    let m = p.expr()?;
    if p.pos != toks.len() {
        return Err(CoreError::Parse(format!("trailing input in `{src}`")));
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Gen(Gen),
    Omega,
    One,
    Open,
    Close,
    Pow(i64),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, CoreError> {
    let cs: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '*' | '·' => i += 1,
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            'w' | 'ω' => {
                out.push(Tok::Omega);
                i += 1;
            }
            '1' => {
                out.push(Tok::One);
                i += 1;
            }
            '^' => {
                let mut j = i + 1;
                if j < cs.len() && cs[j] == '-' {
                    j += 1;
                }
                while j < cs.len() && cs[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = cs[i + 1..j].iter().collect();
                let e = s.parse().map_err(|_| CoreError::Parse(format!("bad exponent `{s}`")))?;
                out.push(Tok::Pow(e));
                i = j;
            }
            'H' | 'P' | 'C' => {
                let width = if c == 'C' { 2 } else { 1 };
                let s: String = cs[i..(i + 1 + width).min(cs.len())].iter().collect();
                out.push(Tok::Gen(s.parse()?));
                i += 1 + width;
            }
            _ => return Err(CoreError::Parse(format!("unexpected `{c}` in `{src}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    n_qubits: usize,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<ExactMatrix, CoreError> {
        let mut acc = ExactMatrix::identity(1 << self.n_qubits);
        while let Some(t) = self.toks.get(self.pos) {
            if *t == Tok::Close {
                break;
            }
            let f = self.factor()?;
            acc = acc.mul_unchecked(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ExactMatrix, CoreError> {
        let d = 1 << self.n_qubits;
        let base = match self.toks.get(self.pos).cloned() {
            Some(Tok::Gen(g)) => {
                self.pos += 1;
                g.matrix(self.n_qubits)?
            }
            Some(Tok::Omega) => {
                self.pos += 1;
                ExactMatrix::omega(d)
            }
            Some(Tok::One) => {
                self.pos += 1;
                ExactMatrix::identity(d)
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let m = self.expr()?;
                if self.toks.get(self.pos) != Some(&Tok::Close) {
                    return Err(CoreError::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                m
            }
            other => return Err(CoreError::Parse(format!("unexpected token {other:?}"))),
        };
        if let Some(Tok::Pow(e)) = self.toks.get(self.pos).cloned() {
            self.pos += 1;
            let m = if e < 0 { base.adjoint() } else { base };
            return Ok(m.pow(e.unsigned_abs() as u32));
        }
        Ok(base)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Indices {
    /// Fixed indices, evaluated once as written.
    Fixed,
    /// `{i}` over 1, 2.
    Single,
    /// `({i}, {j})` over (1, 2) and (2, 1).
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equality {
    /// Exact matrix identity including global phase.
    Exact,
    /// Identity after quotienting by omega.
    ModPhase,
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub indices: Indices,
    pub equality: Equality,
}

impl Relation {
    const fn new(name: &'static str, lhs: &'static str, rhs: &'static str, indices: Indices) -> Self {
        Relation { name, lhs, rhs, indices, equality: Equality::Exact }
    }

    pub fn instances(&self) -> Vec<(String, String)> {
        let subst = |s: &str, i: u8, j: u8| s.replace("{i}", &i.to_string()).replace("{j}", &j.to_string());
        match self.indices {
            Indices::Fixed => vec![(self.lhs.to_string(), self.rhs.to_string())],
            Indices::Single => (1..=2).map(|i| (subst(self.lhs, i, 0), subst(self.rhs, i, 0))).collect(),
            Indices::Pair => [(1, 2), (2, 1)]
                .iter()
                .map(|&(i, j)| (subst(self.lhs, i, j), subst(self.rhs, i, j)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelationCatalog {
    pub relations: Vec<Relation>,
}

use Indices::*;

impl RelationCatalog {
    /// The thirteen presentation relations of the two-qubit Clifford group
    /// plus three derived identities.
    pub fn core() -> Self {
        let relations = vec![
            Relation::new("HSquared", "H{i}^2", "1", Single),
            Relation::new("PFourth", "P{i}^4", "1", Single),
            Relation::new("HPComm", "(H{i} P{i})^3", "w", Single),
            Relation::new("CSquared", "C{i}{j}^2", "1", Pair),
            Relation::new("PpComm", "P{i}^-1 P{j} P{i}", "P{j}", Pair),
            Relation::new("HhComm", "H{i}^-1 H{j} H{i}", "H{j}", Pair),
            Relation::new("HpComm", "P{i}^-1 H{j} P{i}", "H{j}", Pair),
            Relation::new("FourGenRelation", "C{i}{j} H{j} C{i}{j} P{j} C{i}{j} P{j}^3 H{j}", "P{i}", Pair),
            Relation::new("CNOTTransform", "H{i} H{j} C{j}{i} H{i} H{j}", "C{i}{j}", Pair),
            Relation::new("CpFourth", "(C{i}{j} P{j})^4", "P{i}^2", Pair),
            Relation::new("CcComm", "C{i}{j}^-1 C{j}{i} C{i}{j}", "C{j}{i}^-1 C{i}{j} C{j}{i}", Pair),
            Relation::new("PCComm", "P{i}^3 C{i}{j} P{i}", "C{i}{j}", Pair),
            Relation::new("ChFourth", "(C{i}{j} H{j})^4", "P{i}^2", Pair),
            Relation::new("CpCpRelation", "C{i}{j} P{j} C{i}{j} P{j}", "P{j} C{i}{j} P{j} C{i}{j}", Pair),
            Relation::new("CHpSquared", "(C{i}{j} H{i} P{j}^2)^2", "(P{j}^2 H{i} C{i}{j})^2", Pair),
            Relation::new(
                "HadamardTransform",
                "C{j}{i} C{i}{j} C{j}{i} H{i} C{j}{i} C{i}{j} C{j}{i}",
                "H{j}",
                Pair,
            ),
        ];
        RelationCatalog { relations }
    }

    /// Further identities: the omega relations quoted alongside the
    /// presentation and the one-qubit phase relation in its other order.
    pub fn supplementary() -> Self {
        let relations = vec![
            Relation::new("HPCSixth", "(H{i} P{j} C{i}{j})^6", "w^6", Pair),
            Relation::new("HCPSixth", "(H{i} C{i}{j} P{j})^6", "w^6", Pair),
            Relation::new("PHComm", "(P{i} H{i})^3", "w", Single),
            Relation::new("OmegaEighth", "w^8", "1", Fixed),
            Relation::new("CPCommute", "C{i}{j} P{i}", "P{i} C{i}{j}", Pair),
        ];
        RelationCatalog { relations }
    }

    pub fn all() -> Self {
        let mut r = Self::core();
        r.relations.extend(Self::supplementary().relations);
        r
    }
}

#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub equality: Equality,
    pub holds_exact: bool,
    pub holds_mod_phase: bool,
}

impl RelationCheck {
    pub fn pass(&self) -> bool {
        match self.equality {
            Equality::Exact => self.holds_exact,
            Equality::ModPhase => self.holds_mod_phase,
        }
    }
}

/// Evaluates every instance of every relation on two qubits.
pub fn verify_relations(catalog: &RelationCatalog) -> Result<Vec<RelationCheck>, CoreError> {
    let mut out = Vec::new();
    for r in &catalog.relations {
        for (lhs, rhs) in r.instances() {
            let a = eval_expr(&lhs, 2)?;
            let b = eval_expr(&rhs, 2)?;
            out.push(RelationCheck {
                name: r.name,
                holds_exact: a == b,
                holds_mod_phase: a.canonical_mod_phase() == b.canonical_mod_phase(),
                lhs,
                rhs,
                equality: r.equality,
            });
        }
    }
    Ok(out)
}
