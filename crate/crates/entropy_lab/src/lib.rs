//! Entropy vectors of pure states and the SA / AL / SSA / MMI battery.
//!
//! Subsystems are bitmasks with bit `q - 1` for qubit `q`. A pure state on
//! `n` qubits has `2^(n-1) - 1` independent entropies; each complementary pair
//! is represented by the smaller set, or by the one holding qubit 1 on a tie,
//! and components are ordered by size then lexicographically.

use serde::Serialize;
use state_space::{DenseState, StateError};
use std::fmt;

pub const SATURATION_TOL: f64 = 1e-9;

pub type Mask = u32;

pub fn qubits_of(mask: Mask) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b as usize + 1).collect()
}

pub fn mask_of(qubits: &[usize]) -> Mask {
    qubits.iter().fold(0, |m, &q| m | 1 << (q - 1))
}

/// Representative subsystems in component order.
pub fn representatives(n: usize) -> Vec<Mask> {
    let full: Mask = (1 << n) - 1;
    let mut reps: Vec<Mask> = (1..full)
        .filter(|&m| {
            let c = m.count_ones() as usize;
            2 * c < n || (2 * c == n && m & 1 == 1)
        })
        .collect();
    reps.sort_by(|&a, &b| a.count_ones().cmp(&b.count_ones()).then_with(|| qubits_of(a).cmp(&qubits_of(b))));
    reps
}

/// Letters used in printed labels: A, B, C, ... with the last party O.
pub fn subsystem_label(mask: Mask, n: usize) -> String {
    qubits_of(mask)
        .into_iter()
        .map(|q| if q == n { 'O' } else { (b'A' + (q - 1) as u8) as char })
        .collect()
}

/// Entropies of every subsystem, indexed by mask. Pure-state symmetry is
/// built in: only representatives are computed.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyTable {
    pub n: usize,
    pub values: Vec<f64>,
}

impl EntropyTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(Mask) -> f64) -> Self {
        let full: Mask = (1 << n) - 1;
        let mut values = vec![0.0; 1 << n];
        for m in representatives(n) {
            let v = f(m);
            values[m as usize] = v;
            values[(full ^ m) as usize] = v;
        }
        EntropyTable { n, values }
    }

    pub fn from_state(state: &DenseState) -> Result<Self, StateError> {
        let n = state.n_qubits();
        let mut err = None;
        let t = Self::from_fn(n, |m| match state.entropy_bits(&qubits_of(m)) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(t),
        }
    }

    pub fn get(&self, m: Mask) -> f64 {
        self.values[m as usize]
    }

    pub fn vector(&self) -> EntropyVector {
        let reps = representatives(self.n);
        EntropyVector { n: self.n, components: reps.iter().map(|&m| self.get(m)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyVector {
    pub n: usize,
    pub components: Vec<f64>,
}

impl EntropyVector {
    pub fn table(&self) -> EntropyTable {
        let reps = representatives(self.n);
        let mut it = reps.iter().zip(&self.components);
        let map: std::collections::HashMap<Mask, f64> = it.by_ref().map(|(&m, &v)| (m, v)).collect();
        EntropyTable::from_fn(self.n, |m| map[&m])
    }

    /// Integer rendering when every component is within `tol` of an integer.
    pub fn as_integers(&self, tol: f64) -> Option<Vec<i64>> {
        self.components
            .iter()
            .map(|&v| if (v - v.round()).abs() < tol { Some(v.round() as i64) } else { None })
            .collect()
    }

    /// Key for grouping equal vectors under a tolerance grid.
    pub fn key(&self, tol: f64) -> Vec<i64> {
        self.components.iter().map(|&v| (v / tol).round() as i64).collect()
    }

    pub fn max_abs_diff(&self, other: &EntropyVector) -> f64 {
        self.components.iter().zip(&other.components).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

impl fmt::Display for EntropyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reps = representatives(self.n);
        write!(f, "(")?;
        for (i, (&m, v)) in reps.iter().zip(&self.components).enumerate() {
            if i > 0 {
                let sep = if reps[i - 1].count_ones() != m.count_ones() { ";" } else { "," };
                write!(f, "{sep}")?;
            }
            if (v - v.round()).abs() < 1e-12 {
                write!(f, "{}", v.round() as i64)?;
            } else {
                write!(f, "{v:.6}")?;
            }
        }
        write!(f, ")")
    }
}

pub fn entropy_vector(state: &DenseState) -> Result<EntropyVector, StateError> {
    Ok(EntropyTable::from_state(state)?.vector())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Satisfied,
    Saturated,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyResult {
    pub status: Status,
    /// Subsystem masks of one violating (or else one saturating) instance.
    pub witness: Option<Vec<Mask>>,
    pub worst_slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub sa: FamilyResult,
    pub al: FamilyResult,
    pub ssa: FamilyResult,
    pub mmi: FamilyResult,
    pub holographic: bool,
}

impl InequalityReport {
    pub fn violated(&self) -> Vec<&'static str> {
        [("SA", &self.sa), ("AL", &self.al), ("SSA", &self.ssa), ("MMI", &self.mmi)]
            .into_iter()
            .filter(|(_, r)| r.status == Status::Violated)
            .map(|(n, _)| n)
            .collect()
    }
}

struct Acc {
    status: Status,
    witness: Option<Vec<Mask>>,
    worst: f64,
    tol: f64,
}

impl Acc {
    fn new(tol: f64) -> Self {
        Acc { status: Status::Satisfied, witness: None, worst: f64::INFINITY, tol }
    }

    fn push(&mut self, slack: f64, sets: &[Mask]) {
        if slack < self.worst {
            self.worst = slack;
        }
        if slack < -self.tol {
            if self.status != Status::Violated {
                self.status = Status::Violated;
                self.witness = Some(sets.to_vec());
            }
        } else if slack <= self.tol && self.status == Status::Satisfied {
            self.status = Status::Saturated;
            self.witness = Some(sets.to_vec());
        }
    }

    fn finish(self) -> FamilyResult {
        let worst_slack = if self.worst.is_finite() { self.worst } else { 0.0 };
        FamilyResult { status: self.status, witness: self.witness, worst_slack }
    }
}

/// Runs the battery over every instance, using entropies of all subsets.
pub fn check_inequalities(t: &EntropyTable) -> InequalityReport {
    check_inequalities_tol(t, SATURATION_TOL)
}

pub fn check_inequalities_tol(t: &EntropyTable, tol: f64) -> InequalityReport {
    let n = t.n;
    let s = |m: Mask| t.get(m);
    let (mut sa, mut al, mut ssa, mut mmi) = (Acc::new(tol), Acc::new(tol), Acc::new(tol), Acc::new(tol));
    // assign each qubit to none / I / J / K
    let total = 4usize.pow(n as u32);
    for code in 0..total {
        let (mut i, mut j, mut k) = (0 as Mask, 0 as Mask, 0 as Mask);
        let mut c = code;
        for q in 0..n {
            match c % 4 {
                1 => i |= 1 << q,
                2 => j |= 1 << q,
                3 => k |= 1 << q,
                _ => {}
            }
            c /= 4;
        }
        if i == 0 || j == 0 {
            continue;
        }
        if k == 0 {
            if i < j {
                sa.push(s(i) + s(j) - s(i | j), &[i, j]);
                al.push(s(i | j) - (s(i) - s(j)).abs(), &[i, j]);
            }
            continue;
        }
        // SSA with J in the middle: S_IJ + S_JK >= S_J + S_IJK
        if i < k {
            ssa.push(s(i | j) + s(j | k) - s(j) - s(i | j | k), &[i, j, k]);
        }
        if i < j && j < k {
            let lhs = s(i | j) + s(i | k) + s(j | k);
            let rhs = s(i) + s(j) + s(k) + s(i | j | k);
            mmi.push(lhs - rhs, &[i, j, k]);
        }
    }
    let (sa, al, ssa, mmi) = (sa.finish(), al.finish(), ssa.finish(), mmi.finish());
    let holographic = [&sa, &al, &mmi].iter().all(|r| r.status != Status::Violated);
    InequalityReport { sa, al, ssa, mmi, holographic }
}
