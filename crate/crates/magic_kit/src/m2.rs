use crate::{renyi, MagicError, Spectrum};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;
use state_space::DenseState;
use std::collections::BTreeMap;

/// Largest state handled by the `4^n` Pauli sum.
pub const MAX_BRUTE_QUBITS: usize = 8;
/// Largest padded rank for the `O(r^4)` XOR sum.
pub const MAX_XOR_RANK: usize = 256;

/// In-place Walsh-Hadamard transform (unnormalized).
fn walsh_hadamard(v: &mut [C64]) {
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (a, b) = block.split_at_mut(h);
            for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                let (s, t) = (*x + *y, *x - *y);
                *x = s;
                *y = t;
            }
        }
        h *= 2;
    }
}

/// Stabilizer 2-Renyi entropy `-ln sum_a p_a^2 - ln d` with
/// `p_a = <psi|P_a|psi>^2 / d` over all `4^n` Pauli strings.
pub fn m2_bruteforce(psi: &DenseState) -> Result<f64, MagicError> {
    let n = psi.n_qubits();
    if n > MAX_BRUTE_QUBITS {
        return Err(MagicError::TooLarge(format!("{n} qubits for the Pauli sum")));
    }
    let amps = psi.amplitudes();
    let d = amps.len();
    // for fixed X part x, <X^x Z^z> = sum_b conj(psi[b^x]) psi[b] (-1)^{z.b},
    // up to a phase that drops out of |.|^2
    let partial: Vec<f64> = (0..d)
        .into_par_iter()
        .map(|x| {
            let mut f: Vec<C64> = (0..d).map(|b| amps[b ^ x].conj() * amps[b]).collect();
            walsh_hadamard(&mut f);
            f.iter().map(|e| e.norm_sqr().powi(2)).sum::<f64>()
        })
        .collect();
    let df = d as f64;
    let sum_p2: f64 = partial.iter().sum::<f64>() / (df * df);
    Ok(-sum_p2.ln() - df.ln())
}

/// `sum_i sqrt(lambda_i) |s_i>_A |s_i>_B` on `2m` qubits, `2^m` the padded
/// dimension (at least one qubit per side). Qubits `1..=m` hold `A`.
pub fn schmidt_state(spec: &Spectrum) -> Result<DenseState, MagicError> {
    let r = spec.dim().max(2);
    let m = r.trailing_zeros() as usize;
    let mut amps = vec![C64::new(0.0, 0.0); 1 << (2 * m)];
    for (i, v) in spec.values.iter().enumerate() {
        amps[i | i << m] = C64::new(v.sqrt(), 0.0);
    }
    Ok(DenseState::from_amplitudes(2 * m, amps)?)
}

/// The XOR-sum estimate of non-local `M_2` from a descending spectrum
/// zero-filled to a power of two.
pub fn m2_spectrum_estimate(spec: &Spectrum) -> Result<f64, MagicError> {
    Ok(-xor_sum(&spec.padded())?.ln())
}

/// `sum_{i1..i4} sqrt(l1 l2 l3 l4 l[i3^i2^i1] l[i4^i2^i1] l[i1^i3^i4] l[i2^i3^i4])`
/// in the given order (not re-sorted).
pub fn xor_sum(values: &[f64]) -> Result<f64, MagicError> {
    let r = values.len();
    if !r.is_power_of_two() || r > MAX_XOR_RANK {
        return Err(MagicError::TooLarge(format!("rank {r} for the XOR sum")));
    }
    let s: Vec<f64> = values.iter().map(|v| v.max(0.0).sqrt()).collect();
    // per-i1 partial sums, added in index order so the result does not
    // depend on the thread count
    let partial: Vec<f64> = (0..r)
        .into_par_iter()
        .map(|a| {
            if s[a] == 0.0 {
                return 0.0;
            }
            let mut acc = 0.0;
            for b in 0..r {
                if s[b] == 0.0 {
                    continue;
                }
                let ab = a ^ b;
                for c in 0..r {
                    if s[c] == 0.0 {
                        continue;
                    }
                    let head = s[a] * s[b] * s[c] * s[c ^ ab];
                    if head == 0.0 {
                        continue;
                    }
                    let ac = a ^ c;
                    let bc = b ^ c;
                    for d in 0..r {
                        acc += head * s[d] * s[d ^ ab] * s[ac ^ d] * s[bc ^ d];
                    }
                }
            }
            acc
        })
        .collect();
    Ok(partial.iter().sum())
}

/// For each multiplicity pattern of the eight indices
/// `(i1, i2, i3, i4, i1^i2^i3, i1^i2^i4, i1^i3^i4, i2^i3^i4)`, the number of
/// index tuples in `0..r` realizing it. Direct `O(r^4)` enumeration.
pub fn xor_pattern_counts(r: usize) -> BTreeMap<Vec<usize>, u64> {
    let mut out = BTreeMap::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    let mut idx = [a, b, c, d, c ^ b ^ a, d ^ b ^ a, a ^ c ^ d, b ^ c ^ d];
                    idx.sort_unstable();
                    let mut mult = Vec::new();
                    let mut run = 1;
                    for w in idx.windows(2) {
                        if w[0] == w[1] {
                            run += 1;
                        } else {
                            mult.push(run);
                            run = 1;
                        }
                    }
                    mult.push(run);
                    mult.sort_unstable_by(|x, y| y.cmp(x));
                    *out.entry(mult).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

/// Elementary symmetric polynomial `e_k` of `x`.
fn elementary(x: &[f64], k: usize) -> f64 {
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &v in x {
        for j in (1..=k).rev() {
            e[j] += v * e[j - 1];
        }
    }
    e[k]
}

fn falling(r: usize, m: usize) -> f64 {
    (0..m).map(|i| (r - i) as f64).product()
}

/// `-ln` of the XOR sum averaged over all orderings of the padded spectrum.
/// Only four index patterns occur, with `r`, `7r(r-1)`, `7r(r-1)(r-2)` and
/// `r(r-1)(r-2)(r-4)` tuples (all indices equal; two values four times each;
/// four values twice each; eight distinct values).
pub fn m2_averaged(spec: &Spectrum) -> Result<f64, MagicError> {
    let l = spec.padded();
    let r = l.len();
    if r > MAX_XOR_RANK {
        return Err(MagicError::TooLarge(format!("rank {r}")));
    }
    let rf = r as f64;
    let sq: Vec<f64> = l.iter().map(|v| v * v).collect();
    let rt: Vec<f64> = l.iter().map(|v| v.sqrt()).collect();
    let mut total = l.iter().map(|v| v.powi(4)).sum::<f64>();
    if r >= 2 {
        total += 7.0 * rf * (rf - 1.0) * 2.0 * elementary(&sq, 2) / falling(r, 2);
    }
    if r >= 4 {
        total += 7.0 * rf * (rf - 1.0) * (rf - 2.0) * 24.0 * elementary(&l, 4) / falling(r, 4);
    }
    if r >= 8 {
        total += rf * (rf - 1.0) * (rf - 2.0) * (rf - 4.0) * 40320.0 * elementary(&rt, 8) / falling(r, 8);
    }
    Ok(-total.ln())
}

/// `-ln(1 - 4l + 20l^2 - 32l^3 + 16l^4)`: the estimate for spectrum `{l, 1-l}`.
pub fn two_level_m2(lambda: f64) -> f64 {
    let l = lambda;
    -(1.0 - 4.0 * l + 20.0 * l * l - 32.0 * l.powi(3) + 16.0 * l.powi(4)).ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct M2Bounds {
    pub estimate: f64,
    pub averaged: f64,
    /// `2 S_2`
    pub two_s2: f64,
    /// `4 (S_max - S_{1/2})` with `S_max = ln dim`
    pub antiflat: f64,
    pub bound: f64,
    /// `S_max - S_1` with `S_max = ln rank`
    pub flatness_relative: f64,
}

/// The estimate, its permutation average and the entropy bounds; the chain
/// `estimate <= averaged <= min{2 S_2, 4 (S_max - S_{1/2})}` is checked.
pub fn m2_bounds(spec: &Spectrum) -> Result<M2Bounds, MagicError> {
    let estimate = m2_spectrum_estimate(spec)?;
    let averaged = m2_averaged(spec)?;
    let two_s2 = 2.0 * renyi(spec, 2.0);
    let antiflat = 4.0 * ((spec.dim() as f64).ln() - renyi(spec, 0.5));
    let bound = two_s2.min(antiflat);
    let b = M2Bounds { estimate, averaged, two_s2, antiflat, bound, flatness_relative: crate::flatness_relative_entropy(spec) };
    let tol = 1e-12;
    if estimate > averaged + tol || averaged > bound + tol {
        return Err(MagicError::BoundViolated(format!("{b:?}")));
    }
    Ok(b)
}
