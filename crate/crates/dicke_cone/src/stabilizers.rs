use crate::{DickeError, DickeSpec};
use clifford_core::eval_expr;
use entropy_lab::entropy_vector;
use group_engine::{orbit_states, stabilizer_from_orbit, SubgroupTable, DEFAULT_TOLERANCE};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;
use state_space::DenseState;

/// Largest N for the dense Pauli and Clifford checks.
pub const MAX_DENSE_N: usize = 10;

/// Hermitian Pauli string `sign * i^{x.z} X^x Z^z`; bit `q-1` is qubit `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PauliOp {
    pub x: u32,
    pub z: u32,
    pub negative: bool,
}

impl PauliOp {
    pub fn z_all(n: usize, negative: bool) -> Self {
        PauliOp { x: 0, z: (1 << n) - 1, negative }
    }

    pub fn apply(&self, psi: &DenseState) -> DenseState {
        let amps = psi.amplitudes();
        let y_count = (self.x & self.z).count_ones();
        let mut phase = [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)]
            [(y_count % 4) as usize];
        if self.negative {
            phase = -phase;
        }
        let mut out = vec![C64::new(0.0, 0.0); amps.len()];
        for (b, &a) in amps.iter().enumerate() {
            let s = if (self.z & b as u32).count_ones() % 2 == 1 { -phase } else { phase };
            out[b ^ self.x as usize] = s * a;
        }
        DenseState::from_amplitudes(psi.n_qubits(), out).expect("Paulis are unitary")
    }

    pub fn label(&self, n: usize) -> String {
        let body: String = (0..n)
            .map(|q| match (self.x >> q & 1, self.z >> q & 1) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (0, 1) => 'Z',
                _ => 'Y',
            })
            .collect();
        format!("{}{body}", if self.negative { "-" } else { "+" })
    }
}

/// `<psi| P |psi>` for a Hermitian Pauli.
fn expectation(p: &PauliOp, psi: &DenseState) -> f64 {
    psi.inner(&p.apply(psi)).re
}

#[derive(Clone, Debug, Serialize)]
pub struct PauliReport {
    pub spec: DickeSpec,
    /// Signed Paulis with eigenvalue +1 (identity included).
    pub stabilizers: Vec<PauliOp>,
    /// Orbit under the Pauli group mod phase: `4^N / |Stab|`.
    pub orbit: usize,
    /// Claimed stabilizers that were checked.
    pub claims: Vec<String>,
}

fn claimed_paulis(spec: DickeSpec) -> Vec<PauliOp> {
    let n = spec.n;
    let full = (1u32 << n) - 1;
    let mut v = vec![PauliOp::z_all(n, spec.k % 2 == 1)];
    if spec.k == n {
        for i in 0..n {
            v.push(PauliOp { x: 0, z: 1 << i, negative: true });
            for j in i + 1..n {
                v.push(PauliOp { x: 0, z: 1 << i | 1 << j, negative: false });
            }
        }
    }
    if n == 2 * spec.k {
        v.push(PauliOp { x: full, z: 0, negative: false });
        v.push(PauliOp { x: full, z: full, negative: false });
    }
    v
}

/// Every signed Pauli string fixing `|D^N_k>`, by brute force, after checking
/// the claimed families (Z on every qubit with sign (-1)^k; single -Z and ZZ
/// pairs for k = N; all-X and all-Y for N = 2k).
pub fn pauli_stabilizers(spec: DickeSpec) -> Result<PauliReport, DickeError> {
    if spec.n > MAX_DENSE_N {
        return Err(DickeError::TooLarge(format!("N={}", spec.n)));
    }
    let n = spec.n;
    let psi = DenseState::dicke(n, spec.k)?;
    let mut claims = Vec::new();
    for p in claimed_paulis(spec) {
        let e = expectation(&p, &psi);
        if (e - 1.0).abs() > 1e-10 {
            return Err(DickeError::ClaimFailed(format!("{} on D^{n}_{} has <P> = {e}", p.label(n), spec.k)));
        }
        claims.push(p.label(n));
    }
    let dim = 1u32 << n;
    let mut stabilizers: Vec<PauliOp> = (0..dim * dim)
        .into_par_iter()
        .filter_map(|code| {
            let p = PauliOp { x: code / dim, z: code % dim, negative: false };
            let e = expectation(&p, &psi);
            if (e.abs() - 1.0).abs() < 1e-9 {
                Some(PauliOp { negative: e < 0.0, ..p })
            } else {
                None
            }
        })
        .collect();
    stabilizers.sort();
    let orbit = (dim as usize * dim as usize) / stabilizers.len();
    Ok(PauliReport { spec, stabilizers, orbit, claims })
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordReport {
    pub spec: DickeSpec,
    pub hc_stabilizer: usize,
    pub hc_orbit: usize,
    pub c2_stabilizer: usize,
    pub c2_orbit: usize,
    /// Which claimed class was verified.
    pub claim: String,
}

const W_CLASS: [&str; 4] = ["1", "H2 C12 H2", "C12 C21 C12", "H2 C12 H2 C12 C21 C12"];
const MIDDLE_CLASS: [&str; 2] = ["1", "C12 C21 C12"];
/// X on qubits 1 and 2, as `H P^2 H` on each.
const X12: &str = "H1 P1 P1 H1 H2 P2 P2 H2";

fn words_to_set(g: &SubgroupTable, words: &[&str]) -> Result<Vec<u32>, DickeError> {
    let mut v = Vec::new();
    for w in words {
        let m = eval_expr(w, 2)?;
        v.push(g.index_of(&m).ok_or_else(|| DickeError::ClaimFailed(format!("{w} is not in the group")))?);
    }
    v.sort_unstable();
    Ok(v)
}

/// Stabilizers of `|D^N_k>` in `(HC)_{1,2}` and `C_2` (both mod phase), with
/// the claimed class checked: stabilizer states (`k = N` or `N <= 2`) have a
/// 192-element `C_2` stabilizer, `k = 1` the four-element W class, `k = N-1`
/// the W class conjugated by `X1 X2` (`|D^N_{N-1}>` is `X` on every qubit
/// applied to `|D^N_1>`), and every other `k` the two-element class
/// `{1, C12 C21 C12}`.
pub fn clifford_stabilizers(spec: DickeSpec, hc: &SubgroupTable, c2: &SubgroupTable) -> Result<CliffordReport, DickeError> {
    if spec.n > MAX_DENSE_N || spec.n < 2 {
        return Err(DickeError::TooLarge(format!("N={}", spec.n)));
    }
    let psi = DenseState::dicke(spec.n, spec.k)?;
    let stab = |g: &SubgroupTable| -> Result<Vec<u32>, DickeError> {
        let orbit = orbit_states(g, &psi)?;
        Ok(stabilizer_from_orbit(g, &psi, &orbit, DEFAULT_TOLERANCE)?)
    };
    let (hs, cs) = (stab(hc)?, stab(c2)?);
    let (n, k) = (spec.n, spec.k);
    let claim = if k == n || n <= 2 {
        if cs.len() != 192 {
            return Err(DickeError::ClaimFailed(format!("D^{n}_{k}: C2 stabilizer has {} elements, not 192", cs.len())));
        }
        "stabilizer-state".to_string()
    } else {
        let conjugated: Vec<String> = W_CLASS.iter().map(|w| format!("{X12} ({w}) {X12}")).collect();
        let conjugated: Vec<&str> = conjugated.iter().map(String::as_str).collect();
        let (name, words): (&str, &[&str]) = if k == 1 {
            ("w-class", &W_CLASS)
        } else if k == n - 1 {
            ("w-class-conjugate", &conjugated)
        } else {
            ("middle", &MIDDLE_CLASS)
        };
        if words_to_set(c2, words)? != cs {
            return Err(DickeError::ClaimFailed(format!("D^{n}_{k}: C2 stabilizer differs from the {name} set")));
        }
        name.to_string()
    };
    Ok(CliffordReport {
        spec,
        hc_stabilizer: hs.len(),
        hc_orbit: hc.order() / hs.len(),
        c2_stabilizer: cs.len(),
        c2_orbit: c2.order() / cs.len(),
        claim,
    })
}

/// Distinct entanglement entropies (bits, rounded to 1e-9) over every
/// entropy vector in the `(HC)_{1,2}` orbit, zero excluded.
pub fn orbit_entropy_values(spec: DickeSpec, hc: &SubgroupTable) -> Result<Vec<f64>, DickeError> {
    if spec.n > MAX_DENSE_N || spec.n < 2 {
        return Err(DickeError::TooLarge(format!("N={}", spec.n)));
    }
    let psi = DenseState::dicke(spec.n, spec.k)?;
    let orbit = orbit_states(hc, &psi)?;
    let mut keys: Vec<i64> = orbit
        .par_iter()
        .map(|s| entropy_vector(s).map(|v| v.components.iter().map(|&c| (c * 1e9).round() as i64).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .filter(|&k| k != 0)
        .collect();
    keys.sort_unstable();
    keys.dedup();
    Ok(keys.into_iter().map(|k| k as f64 * 1e-9).collect())
}

pub fn entanglement_cardinality(spec: DickeSpec, hc: &SubgroupTable) -> Result<usize, DickeError> {
    Ok(orbit_entropy_values(spec, hc)?.len())
}
