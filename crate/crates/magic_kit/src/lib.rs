//! Magic and anti-flatness measures built from entanglement spectra, plus
//! the transverse-field Ising pipeline. Natural logarithms throughout.

pub mod ising;
pub mod m2;

pub use ising::{ground_state, ising_magic_scan, ising_point, GroundState, IsingConfig, IsingPoint, Solver};
pub use m2::{
    m2_averaged, m2_bounds, m2_bruteforce, m2_spectrum_estimate, schmidt_state, two_level_m2, xor_pattern_counts, xor_sum,
    M2Bounds, MAX_BRUTE_QUBITS, MAX_XOR_RANK,
};

use serde::Serialize;
use state_space::DenseState;

#[derive(Debug, thiserror::Error)]
pub enum MagicError {
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("capacity forms disagree: pair {pair} vs variance {variance}")]
    CapacityMismatch { pair: f64, variance: f64 },
    #[error("ground space is degenerate (gap {gap:e}); add a bias field b > 0")]
    Degenerate { gap: f64 },
    #[error("eigensolver did not converge (residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error(transparent)]
    State(#[from] state_space::StateError),
}

/// Values below this are treated as zero eigenvalues.
pub const ZERO_CUTOFF: f64 = 1e-14;

/// A probability spectrum, stored in descending order.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
}

impl Spectrum {
    /// Sorts descending and checks `sum = 1 +- 1e-10`. Negative round-off
    /// down to `-1e-12` is clamped to zero.
    pub fn new(mut values: Vec<f64>) -> Result<Self, MagicError> {
        if values.is_empty() {
            return Err(MagicError::InvalidSpectrum("empty".into()));
        }
        for v in values.iter_mut() {
            if !v.is_finite() || *v < -1e-12 {
                return Err(MagicError::InvalidSpectrum(format!("entry {v}")));
            }
            if *v < ZERO_CUTOFF {
                *v = 0.0;
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(MagicError::InvalidSpectrum(format!("sum {sum}")));
        }
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(Spectrum { values })
    }

    /// Rescales positive weights to sum to one.
    pub fn normalized(values: Vec<f64>) -> Result<Self, MagicError> {
        let sum: f64 = values.iter().sum();
        if !(sum > 0.0) {
            return Err(MagicError::InvalidSpectrum(format!("sum {sum}")));
        }
        Self::new(values.into_iter().map(|v| v / sum).collect())
    }

    pub fn flat(rank: usize) -> Self {
        Spectrum { values: vec![1.0 / rank as f64; rank] }
    }

    pub fn two_level(lambda: f64) -> Result<Self, MagicError> {
        Self::new(vec![lambda, 1.0 - lambda])
    }

    /// Squared Schmidt coefficients of `psi` across `subsystem | rest`.
    pub fn from_state(psi: &DenseState, subsystem: &[usize]) -> Result<Self, MagicError> {
        let s = psi.schmidt(subsystem)?;
        Self::normalized(s.values.into_iter().map(|v| v.max(0.0)).collect())
    }

    pub fn rank(&self) -> usize {
        self.values.iter().filter(|&&v| v > 0.0).count()
    }

    fn nonzero(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().copied().filter(|&v| v > 0.0)
    }

    /// Number of stored values rounded up to a power of two: the Hilbert
    /// space dimension the spectrum lives in.
    pub fn dim(&self) -> usize {
        self.values.len().next_power_of_two()
    }

    /// Values zero-filled to `dim()`.
    pub fn padded(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.resize(self.dim(), 0.0);
        v
    }

    pub fn purity(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn is_flat(&self, tol: f64) -> bool {
        let top = self.values[0];
        self.nonzero().all(|v| (v - top).abs() <= tol)
    }
}

/// `S_alpha = ln(sum lambda^alpha) / (1 - alpha)`, with the `alpha -> 1`,
/// `alpha = 0` and `alpha = inf` limits.
pub fn renyi(spec: &Spectrum, alpha: f64) -> f64 {
    assert!(alpha >= 0.0, "Renyi index must be non-negative");
    if alpha == 0.0 {
        (spec.rank() as f64).ln()
    } else if alpha == 1.0 {
        spec.nonzero().map(|v| -v * v.ln()).sum()
    } else if alpha.is_infinite() {
        -spec.values[0].ln()
    } else {
        spec.nonzero().map(|v| v.powf(alpha)).sum::<f64>().ln() / (1.0 - alpha)
    }
}

/// `F = sum lambda^3 - (sum lambda^2)^2`, the variance of the spectrum
/// under itself.
pub fn anti_flatness(spec: &Spectrum) -> f64 {
    let p3: f64 = spec.values.iter().map(|v| v * v * v).sum();
    p3 - spec.purity().powi(2)
}

/// `Var_rho(ln rho)`.
pub fn log_variance(spec: &Spectrum) -> f64 {
    let m1: f64 = spec.nonzero().map(|v| v * v.ln()).sum();
    let m2: f64 = spec.nonzero().map(|v| v * v.ln().powi(2)).sum();
    m2 - m1 * m1
}

/// Flatness relative entropy `S_max - S_1`, with `S_max = ln rank`.
pub fn flatness_relative_entropy(spec: &Spectrum) -> f64 {
    renyi(spec, 0.0) - renyi(spec, 1.0)
}

/// `S~_n = ln sum lambda^n - n sum lambda^n ln lambda / sum lambda^n`.
pub fn modified_renyi(spec: &Spectrum, n: f64) -> f64 {
    let z: f64 = spec.nonzero().map(|v| v.powf(n)).sum();
    let e: f64 = spec.nonzero().map(|v| v.powf(n) * v.ln()).sum();
    z.ln() - n * e / z
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Capacity {
    /// `-n sum_{k != l} lambda_k^n lambda_l^n ln^2(lambda_k/lambda_l) / (sum lambda^n)^2`
    /// (each unordered pair counted once).
    pub pair: f64,
    /// `-n beta^2 Var(H)` at inverse temperature `n beta`, with `lambda = exp(-beta E)`.
    pub variance: f64,
}

pub fn capacity_pair(spec: &Spectrum, n: f64) -> f64 {
    let nz: Vec<f64> = spec.nonzero().collect();
    let z: f64 = nz.iter().map(|v| v.powf(n)).sum();
    let mut acc = 0.0;
    for (k, &a) in nz.iter().enumerate() {
        for &b in &nz[k + 1..] {
            acc += a.powf(n) * b.powf(n) * (a / b).ln().powi(2);
        }
    }
    -n * acc / (z * z)
}

/// Variance form with effective inverse temperature `beta`; the result does
/// not depend on `beta`.
pub fn capacity_variance(spec: &Spectrum, n: f64, beta: f64) -> f64 {
    let energies: Vec<(f64, f64)> = spec.nonzero().map(|v| (v, -v.ln() / beta)).collect();
    let z: f64 = energies.iter().map(|(_, e)| (-n * beta * e).exp()).sum();
    let (mut h1, mut h2) = (0.0, 0.0);
    for &(_, e) in &energies {
        let w = (-n * beta * e).exp() / z;
        h1 += w * e;
        h2 += w * e * e;
    }
    -n * beta * beta * (h2 - h1 * h1)
}

/// `d/dn S~_n`, computed both ways; the two must agree to 1e-8.
pub fn capacity(spec: &Spectrum, n: f64) -> Result<Capacity, MagicError> {
    if !(n > 0.0) {
        return Err(MagicError::Parameter(format!("n = {n}")));
    }
    let c = Capacity { pair: capacity_pair(spec, n), variance: capacity_variance(spec, n, 1.0) };
    if (c.pair - c.variance).abs() > 1e-8 * c.pair.abs().max(1.0) {
        return Err(MagicError::CapacityMismatch { pair: c.pair, variance: c.variance });
    }
    Ok(c)
}

/// `(1/2)|d S~/dn|_{n=2}` and `|d S~/dn|_{n=1}`, the pair of anti-flatness
/// values that sandwich `M_2` for a single entangled qubit pair.
pub fn pair_bounds(spec: &Spectrum) -> (f64, f64) {
    (0.5 * capacity_pair(spec, 2.0).abs(), capacity_pair(spec, 1.0).abs())
}

/// `ln r` for the smallest `r` whose discarded tail `sum_{i > r} lambda_i`
/// is at most `epsilon`.
pub fn smoothed_smax(spec: &Spectrum, epsilon: f64) -> Result<f64, MagicError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(MagicError::Parameter(format!("epsilon = {epsilon}")));
    }
    let mut tail: f64 = spec.values.iter().sum();
    for (i, v) in spec.values.iter().enumerate() {
        tail -= v;
        // guard against round-off in the running tail
        if tail <= epsilon + 1e-15 {
            return Ok(((i + 1) as f64).ln());
        }
    }
    Ok((spec.values.len() as f64).ln())
}
