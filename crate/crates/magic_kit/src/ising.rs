//! Periodic transverse-field Ising chain
//! `H = -cos(theta) sum Z_i Z_{i+1} - sin(theta) sum X_i + b sum Z_i`.

use crate::{anti_flatness, capacity_pair, m2_spectrum_estimate, renyi, MagicError, Spectrum};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;
use state_space::DenseState;
use std::f64::consts::FRAC_PI_4;

pub const MAX_ISING_QUBITS: usize = 14;
/// `Solver::Auto` diagonalizes densely up to this many sites.
pub const DENSE_MAX_QUBITS: usize = 8;
/// Ground states closer than this to the next level are rejected.
pub const DEGENERACY_TOL: f64 = 1e-10;
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Solver {
    Auto,
    Dense,
    Lanczos,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IsingConfig {
    pub n: usize,
    pub theta: f64,
    pub bias: f64,
    pub solver: Solver,
}

impl IsingConfig {
    pub fn new(n: usize, theta: f64, bias: f64) -> Result<Self, MagicError> {
        if !(2..=MAX_ISING_QUBITS).contains(&n) {
            return Err(MagicError::TooLarge(format!("{n} sites (need 2..={MAX_ISING_QUBITS})")));
        }
        if !(bias >= 0.0) || !theta.is_finite() {
            return Err(MagicError::Parameter(format!("theta {theta}, bias {bias}")));
        }
        Ok(IsingConfig { n, theta, bias, solver: Solver::Auto })
    }

    /// `theta = pi/4 + g`.
    pub fn from_g(n: usize, g: f64, bias: f64) -> Result<Self, MagicError> {
        Self::new(n, FRAC_PI_4 + g, bias)
    }

    pub fn with_solver(mut self, solver: Solver) -> Self {
        self.solver = solver;
        self
    }

    pub fn g(&self) -> f64 {
        self.theta - FRAC_PI_4
    }

    fn dim(&self) -> usize {
        1 << self.n
    }

    /// Diagonal (Z-basis) part of `H`.
    fn diagonal(&self) -> Vec<f64> {
        let (c, n) = (self.theta.cos(), self.n);
        (0..self.dim())
            .map(|b| {
                let z = |i: usize| if b >> (i % n) & 1 == 0 { 1.0 } else { -1.0 };
                let bond: f64 = (0..n).map(|i| z(i) * z(i + 1)).sum();
                let field: f64 = (0..n).map(z).sum();
                -c * bond + self.bias * field
            })
            .collect()
    }
}

struct Hamiltonian {
    n: usize,
    diag: Vec<f64>,
    hop: f64,
}

impl Hamiltonian {
    fn new(cfg: &IsingConfig) -> Self {
        Hamiltonian { n: cfg.n, diag: cfg.diagonal(), hop: -cfg.theta.sin() }
    }

    fn apply(&self, v: &[f64], out: &mut [f64]) {
        out.par_iter_mut().enumerate().with_min_len(1024).for_each(|(b, o)| {
            let flips: f64 = (0..self.n).map(|i| v[b ^ (1 << i)]).sum();
            *o = self.diag[b] * v[b] + self.hop * flips;
        });
    }

    fn dense(&self) -> DMatrix<f64> {
        let d = self.diag.len();
        let mut m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.diag.clone()));
        for b in 0..d {
            for i in 0..self.n {
                m[(b, b ^ (1 << i))] += self.hop;
            }
        }
        m
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    v.iter_mut().for_each(|x| *x /= n);
    n
}

/// Restarted Lanczos with full reorthogonalization for the lowest
/// eigenpair of `op`. Restarts from the current Ritz vector until the
/// residual `|H y - theta y|` is below `tol`.
fn lanczos(op: &dyn Fn(&[f64], &mut [f64]), start: Vec<f64>, tol: f64) -> Result<(f64, Vec<f64>, f64), MagicError> {
    let dim = start.len();
    let steps = dim.min(80);
    let mut y = start;
    normalize(&mut y);
    let mut residual = f64::INFINITY;
    let mut w = vec![0.0; dim];
    for _restart in 0..200 {
        let mut basis: Vec<Vec<f64>> = vec![y.clone()];
        let (mut alpha, mut beta) = (Vec::new(), Vec::new());
        for j in 0..steps {
            op(&basis[j], &mut w);
            alpha.push(dot(&basis[j], &w));
            for _ in 0..2 {
                for v in &basis {
                    let c = dot(v, &w);
                    w.iter_mut().zip(v).for_each(|(x, vi)| *x -= c * vi);
                }
            }
            let b = dot(&w, &w).sqrt();
            if b < 1e-13 || j + 1 == steps {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }
        let m = alpha.len();
        let t = DMatrix::from_fn(m, m, |i, j| {
            if i == j {
                alpha[i]
            } else if i + 1 == j {
                beta[i]
            } else if j + 1 == i {
                beta[j]
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(t);
        let k = (0..m).min_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap()).unwrap();
        y = vec![0.0; dim];
        for (i, v) in basis.iter().enumerate() {
            let c = eig.eigenvectors[(i, k)];
            y.iter_mut().zip(v).for_each(|(x, vi)| *x += c * vi);
        }
        normalize(&mut y);
        op(&y, &mut w);
        let rayleigh = dot(&y, &w);
        residual = w.iter().zip(&y).map(|(hy, yi)| (hy - rayleigh * yi).powi(2)).sum::<f64>().sqrt();
        if residual < tol {
            return Ok((rayleigh, y, residual));
        }
    }
    Err(MagicError::NoConvergence { residual })
}

/// Deterministic start vector with positive entries, which overlaps the
/// (Perron-Frobenius positive) ground state of the stoquastic chain.
fn start_vector(dim: usize) -> Vec<f64> {
    (0..dim).map(|i| 1.0 + 0.25 * (((i as u64).wrapping_mul(2654435761) % 1000) as f64 / 1000.0)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GroundState {
    pub config: IsingConfig,
    pub energy: f64,
    /// Distance to the next eigenvalue.
    pub gap: f64,
    pub residual: f64,
    #[serde(skip)]
    pub state: DenseState,
}

/// Lowest eigenvector, sign-fixed so its largest-magnitude amplitude is
/// positive. A gap below `DEGENERACY_TOL` is an error.
pub fn ground_state(cfg: &IsingConfig) -> Result<GroundState, MagicError> {
    let h = Hamiltonian::new(cfg);
    let dense = match cfg.solver {
        Solver::Auto => cfg.n <= DENSE_MAX_QUBITS,
        Solver::Dense => true,
        Solver::Lanczos => false,
    };
    let (energy, mut vec, gap, residual) = if dense {
        let eig = SymmetricEigen::new(h.dense());
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
        let e0 = eig.eigenvalues[order[0]];
        let v: Vec<f64> = eig.eigenvectors.column(order[0]).iter().copied().collect();
        let mut hv = vec![0.0; v.len()];
        h.apply(&v, &mut hv);
        let res = hv.iter().zip(&v).map(|(a, b)| (a - e0 * b).powi(2)).sum::<f64>().sqrt();
        (e0, v, eig.eigenvalues[order[1]] - e0, res)
    } else {
        let apply = |v: &[f64], out: &mut [f64]| h.apply(v, out);
        let (e0, v, res) = lanczos(&apply, start_vector(cfg.dim()), RESIDUAL_TOL)?;
        // next level: lowest eigenvalue with the ground state shifted away
        let shift = 4.0 * (cfg.n as f64) * (1.0 + cfg.bias) + 1.0;
        let deflated = |x: &[f64], out: &mut [f64]| {
            h.apply(x, out);
            let c = shift * dot(&v, x);
            out.iter_mut().zip(&v).for_each(|(o, vi)| *o += c * vi);
        };
        let mut s = start_vector(cfg.dim());
        s.iter_mut().enumerate().for_each(|(i, x)| *x *= if i.count_ones() % 2 == 0 { 1.0 } else { -0.5 });
        let c = dot(&v, &s);
        s.iter_mut().zip(&v).for_each(|(x, vi)| *x -= c * vi);
        let (e1, _, _) = lanczos(&deflated, s, 1e-8)?;
        (e0, v, e1 - e0, res)
    };
    if residual > RESIDUAL_TOL.max(1e-9) {
        return Err(MagicError::NoConvergence { residual });
    }
    if gap < DEGENERACY_TOL {
        return Err(MagicError::Degenerate { gap });
    }
    let big = (0..vec.len()).max_by(|&a, &b| vec[a].abs().partial_cmp(&vec[b].abs()).unwrap().then(b.cmp(&a))).unwrap();
    if vec[big] < 0.0 {
        vec.iter_mut().for_each(|x| *x = -*x);
    }
    let state = DenseState::from_amplitudes(cfg.n, vec.into_iter().map(|x| C64::new(x, 0.0)).collect())?;
    Ok(GroundState { config: *cfg, energy, gap, residual, state })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsingPoint {
    pub n: usize,
    pub g: f64,
    pub bias: f64,
    pub cut: usize,
    pub energy: f64,
    pub gap: f64,
    pub entropy: f64,
    pub s2: f64,
    pub anti_flatness: f64,
    /// `d S~_n / dn` at `n = 1`
    pub capacity: f64,
    pub m2_estimate: f64,
}

/// All spectrum quantities for the contiguous block of sites `1..=cut`.
pub fn ising_point(gs: &GroundState, cut: usize) -> Result<IsingPoint, MagicError> {
    if cut == 0 || cut >= gs.config.n {
        return Err(MagicError::Parameter(format!("cut {cut} of {} sites", gs.config.n)));
    }
    let sites: Vec<usize> = (1..=cut).collect();
    let spec = Spectrum::from_state(&gs.state, &sites)?;
    Ok(IsingPoint {
        n: gs.config.n,
        g: gs.config.g(),
        bias: gs.config.bias,
        cut,
        energy: gs.energy,
        gap: gs.gap,
        entropy: renyi(&spec, 1.0),
        s2: renyi(&spec, 2.0),
        anti_flatness: anti_flatness(&spec),
        capacity: capacity_pair(&spec, 1.0),
        m2_estimate: m2_spectrum_estimate(&spec)?,
    })
}

/// One ground state per `g`, every cut of it; rows ordered by `g` then cut.
pub fn ising_magic_scan(
    n: usize,
    gs: &[f64],
    cuts: &[usize],
    bias: f64,
    solver: Solver,
) -> Result<Vec<IsingPoint>, MagicError> {
    let rows: Vec<Vec<IsingPoint>> = gs
        .par_iter()
        .map(|&g| {
            let ground = ground_state(&IsingConfig::from_g(n, g, bias)?.with_solver(solver))?;
            cuts.iter().map(|&c| ising_point(&ground, c)).collect()
        })
        .collect::<Result<_, MagicError>>()?;
    Ok(rows.into_iter().flatten().collect())
}
