//! Dense pure states on `n` qubits.
//!
//! Basis index bit `j` is qubit `j + 1`: written as a binary address the
//! rightmost digit is qubit 1. Kets written as strings (`basis:0110`) list
//! qubit 1 first.

use clifford_core::{CliffordElement, ExactMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

pub type C64 = Complex64;

pub const NORM_TOL: f64 = 1e-12;
pub const PHASE_THRESHOLD: f64 = 1e-10;
pub const SCHMIDT_THRESHOLD: f64 = 1e-12;
pub const MAX_QUBITS: usize = 16;

#[derive(Debug, thiserror::Error)]
pub enum StateError {
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("expected {expected} amplitudes, got {got}")]
    Length { expected: usize, got: usize },
    #[error("qubit {0} outside 1..={1}")]
    QubitOutOfRange(usize, usize),
    #[error("support {0:?} repeats a qubit")]
    RepeatedQubit(Vec<usize>),
    #[error("subsystem must be a proper nonempty subset of the qubits")]
    BadSubsystem,
    #[error("invalid Hamming weight {k} for {n} qubits")]
    HammingWeight { n: usize, k: usize },
    #[error("invalid state spec `{0}`")]
    Spec(String),
    #[error("too many qubits: {0}")]
    TooLarge(usize),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtData {
    pub subsystem: Vec<usize>,
    pub values: Vec<f64>,
    pub rank: usize,
}

impl DenseState {
    /// Normalizes the given amplitudes.
    pub fn from_amplitudes(n: usize, amps: Vec<C64>) -> Result<Self, StateError> {
        if n > MAX_QUBITS {
            return Err(StateError::TooLarge(n));
        }
        if amps.len() != 1 << n {
            return Err(StateError::Length { expected: 1 << n, got: amps.len() });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 1e-300) || !norm.is_finite() {
            return Err(StateError::ZeroNorm);
        }
        Ok(DenseState { n, amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    pub fn zeros(n: usize) -> Self {
        Self::basis_index(n, 0)
    }

    pub fn basis_index(n: usize, index: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[index] = C64::new(1.0, 0.0);
        DenseState { n, amps }
    }

    /// `bits` is a ket label with qubit 1 first.
    pub fn basis(bits: &str) -> Result<Self, StateError> {
        let mut index = 0;
        for (q, c) in bits.chars().enumerate() {
            match c {
                '0' => {}
                '1' => index |= 1 << q,
                _ => return Err(StateError::Spec(bits.into())),
            }
        }
        if bits.is_empty() || bits.len() > MAX_QUBITS {
            return Err(StateError::Spec(bits.into()));
        }
        Ok(Self::basis_index(bits.len(), index))
    }

    pub fn ghz(n: usize) -> Result<Self, StateError> {
        if n == 0 || n > MAX_QUBITS {
            return Err(StateError::Spec(format!("ghz:{n}")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[0] = C64::new(1.0, 0.0);
        amps[(1 << n) - 1] = C64::new(1.0, 0.0);
        Self::from_amplitudes(n, amps)
    }

    /// Equal superposition of all basis states of Hamming weight `k`.
    pub fn dicke(n: usize, k: usize) -> Result<Self, StateError> {
        if n == 0 || k > n {
            return Err(StateError::HammingWeight { n, k });
        }
        if n > MAX_QUBITS {
            return Err(StateError::TooLarge(n));
        }
        let amps = (0..1usize << n)
            .map(|i| if i.count_ones() as usize == k { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
            .collect();
        Self::from_amplitudes(n, amps)
    }

    pub fn w(n: usize) -> Result<Self, StateError> {
        Self::dicke(n, 1)
    }

    /// Parses `zeros:N`, `ghz:N`, `w:N`, `dicke:N,k`, `basis:0101`, `file:path`.
    pub fn parse_spec(spec: &str) -> Result<Self, StateError> {
        let bad = || StateError::Spec(spec.to_string());
        let (kind, arg) = spec.split_once(':').ok_or_else(bad)?;
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        match kind.trim().to_ascii_lowercase().as_str() {
            "zeros" | "zero" => {
                let n = num(arg)?;
                if n == 0 || n > MAX_QUBITS {
                    return Err(bad());
                }
                Ok(Self::zeros(n))
            }
            "ghz" => Self::ghz(num(arg)?),
            "w" => Self::w(num(arg)?),
            "dicke" => {
                let (a, b) = arg.split_once(',').ok_or_else(bad)?;
                Self::dicke(num(a)?, num(b)?)
            }
            "basis" => Self::basis(arg.trim()),
            "file" => Self::read_json(Path::new(arg.trim())),
            _ => Err(bad()),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &DenseState) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Global phase fixed so the first amplitude above threshold is real positive.
    pub fn canonical(&self) -> DenseState {
        let mut out = self.clone();
        if let Some(a) = self.amps.iter().find(|a| a.norm() > PHASE_THRESHOLD) {
            let ph = a.conj() / a.norm();
            for x in out.amps.iter_mut() {
                *x *= ph;
            }
        }
        out
    }

    /// Quantized canonical amplitudes, usable as a hash key for states mod phase.
    pub fn key(&self) -> Vec<i64> {
        const SCALE: f64 = (1u64 << 26) as f64;
        let c = self.canonical();
        let mut out = Vec::with_capacity(2 * c.amps.len());
        for a in &c.amps {
            out.push((a.re * SCALE).round() as i64);
            out.push((a.im * SCALE).round() as i64);
        }
        out
    }

    pub fn eq_mod_phase(&self, other: &DenseState, tol: f64) -> bool {
        self.n == other.n && (1.0 - self.inner(other).norm()).abs() < tol
    }

    fn check_support(&self, support: &[usize]) -> Result<(), StateError> {
        for (i, &q) in support.iter().enumerate() {
            if q == 0 || q > self.n {
                return Err(StateError::QubitOutOfRange(q, self.n));
            }
            if support[..i].contains(&q) {
                return Err(StateError::RepeatedQubit(support.to_vec()));
            }
        }
        Ok(())
    }

    /// Applies a row-major `2^m x 2^m` matrix on `support`; the first support
    /// qubit is the most significant bit of the local index.
    pub fn apply_matrix(&self, support: &[usize], m: &[C64]) -> Result<DenseState, StateError> {
        self.check_support(support)?;
        let d = 1usize << support.len();
        if m.len() != d * d {
            return Err(StateError::Length { expected: d * d, got: m.len() });
        }
        let masks: Vec<usize> = support.iter().map(|&q| 1usize << (q - 1)).collect();
        let all: usize = masks.iter().sum();
        let mut out = vec![C64::new(0.0, 0.0); self.amps.len()];
        let mut local = vec![C64::new(0.0, 0.0); d];
        let embed = |base: usize, l: usize| {
            let mut idx = base;
            for (b, &mask) in masks.iter().enumerate() {
                if l >> (masks.len() - 1 - b) & 1 == 1 {
                    idx |= mask;
                }
            }
            idx
        };
        for base in 0..self.amps.len() {
            if base & all != 0 {
                continue;
            }
            for (l, slot) in local.iter_mut().enumerate() {
                *slot = self.amps[embed(base, l)];
            }
            for r in 0..d {
                let mut acc = C64::new(0.0, 0.0);
                for c in 0..d {
                    acc += m[r * d + c] * local[c];
                }
                out[embed(base, r)] = acc;
            }
        }
        Ok(DenseState { n: self.n, amps: out })
    }

    pub fn apply(&self, element: &CliffordElement) -> Result<DenseState, StateError> {
        self.apply_matrix(&element.support, &element.matrix.to_complex())
    }

    /// Applies a two-qubit exact matrix on qubits 1, 2.
    pub fn apply_exact(&self, m: &ExactMatrix) -> Result<DenseState, StateError> {
        let support: Vec<usize> = (1..=m.dim().trailing_zeros() as usize).collect();
        self.apply_matrix(&support, &m.to_complex())
    }

    fn check_subsystem(&self, subsystem: &[usize]) -> Result<(), StateError> {
        self.check_support(subsystem)?;
        if subsystem.is_empty() || subsystem.len() >= self.n {
            return Err(StateError::BadSubsystem);
        }
        Ok(())
    }

    /// Amplitudes reshaped into a `2^|I| x 2^|rest|` matrix.
    pub fn reshape(&self, subsystem: &[usize]) -> Result<DMatrix<C64>, StateError> {
        self.check_subsystem(subsystem)?;
        let mut sub: Vec<usize> = subsystem.to_vec();
        sub.sort_unstable();
        let rest: Vec<usize> = (1..=self.n).filter(|q| !sub.contains(q)).collect();
        let rows = 1usize << sub.len();
        let cols = 1usize << rest.len();
        let mut m = DMatrix::from_element(rows, cols, C64::new(0.0, 0.0));
        for (idx, a) in self.amps.iter().enumerate() {
            let r = gather(idx, &sub);
            let c = gather(idx, &rest);
            m[(r, c)] = *a;
        }
        Ok(m)
    }

    /// Squared Schmidt coefficients across `subsystem | rest`, descending.
    pub fn schmidt(&self, subsystem: &[usize]) -> Result<SchmidtData, StateError> {
        let m = self.reshape(subsystem)?;
        let sv = m.svd(false, false).singular_values;
        let mut values: Vec<f64> = sv.iter().map(|s| s * s).collect();
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let rank = values.iter().filter(|&&v| v > SCHMIDT_THRESHOLD).count();
        let mut sub = subsystem.to_vec();
        sub.sort_unstable();
        Ok(SchmidtData { subsystem: sub, values, rank })
    }

    /// Von Neumann entropy of the subsystem in bits. Empty and full
    /// subsystems give 0.
    pub fn entropy_bits(&self, subsystem: &[usize]) -> Result<f64, StateError> {
        if subsystem.is_empty() || subsystem.len() == self.n {
            self.check_support(subsystem)?;
            return Ok(0.0);
        }
        Ok(shannon(&self.schmidt(subsystem)?.values) / std::f64::consts::LN_2)
    }

    pub fn to_json(&self) -> StateJson {
        StateJson { n: self.n, amplitudes: self.amps.iter().map(|a| [a.re, a.im]).collect() }
    }

    pub fn from_json(j: &StateJson) -> Result<Self, StateError> {
        Self::from_amplitudes(j.n, j.amplitudes.iter().map(|&[re, im]| C64::new(re, im)).collect())
    }

    pub fn read_json(path: &Path) -> Result<Self, StateError> {
        let j: StateJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        Self::from_json(&j)
    }
}

/// Natural-log Shannon entropy; zero entries contribute nothing.
pub fn shannon(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum()
}

fn gather(idx: usize, qubits: &[usize]) -> usize {
    qubits.iter().enumerate().fold(0, |acc, (b, &q)| acc | ((idx >> (q - 1) & 1) << b))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StateJson {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}
