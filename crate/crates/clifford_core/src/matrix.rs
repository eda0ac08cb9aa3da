//! Square matrices of the form `N / sqrt(2)^k` with `N` a Gaussian-integer matrix.

use crate::ring::GaussInt;
use crate::CoreError;
use num_bigint::BigInt;
use num_complex::Complex64;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    dim: usize,
    num: Vec<GaussInt>,
    k: u32,
}

impl ExactMatrix {
    /// Builds and canonicalizes. `num` is row-major.
    pub fn new(dim: usize, num: Vec<GaussInt>, k: u32) -> Result<Self, CoreError> {
        if dim == 0 || num.len() != dim * dim {
            return Err(CoreError::Shape { dim, len: num.len() });
        }
        Ok(ExactMatrix { dim, num, k }.canonical())
    }

    pub fn from_ints(dim: usize, entries: &[(i64, i64)], k: u32) -> Result<Self, CoreError> {
        let num = entries.iter().map(|&(re, im)| GaussInt::new(re, im)).collect();
        Self::new(dim, num, k)
    }

    pub fn identity(dim: usize) -> Self {
        let mut num = vec![GaussInt::zero(); dim * dim];
        for i in 0..dim {
            num[i * dim + i] = GaussInt::one();
        }
        ExactMatrix { dim, num, k: 0 }
    }

    /// The global phase `omega = (1 + i)/sqrt2` times the identity.
    pub fn omega(dim: usize) -> Self {
        let mut num = vec![GaussInt::zero(); dim * dim];
        for i in 0..dim {
            num[i * dim + i] = GaussInt::new(1, 1);
        }
        ExactMatrix { dim, num, k: 1 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_pow(&self) -> u32 {
        self.k
    }

    pub fn numerator(&self) -> &[GaussInt] {
        &self.num
    }

    pub fn entry(&self, r: usize, c: usize) -> &GaussInt {
        &self.num[r * self.dim + c]
    }

    pub fn is_canonical(&self) -> bool {
        !(self.k >= 2 && self.num.iter().all(GaussInt::is_even))
    }

    pub fn canonical(mut self) -> Self {
        while self.k >= 2 && self.num.iter().all(GaussInt::is_even) {
            if self.num.iter().all(GaussInt::is_zero) {
                self.k = self.k % 2;
                break;
            }
            for e in self.num.iter_mut() {
                *e = e.half();
            }
            self.k -= 2;
        }
        self
    }

    pub fn multiply(&self, other: &ExactMatrix) -> Result<ExactMatrix, CoreError> {
        if self.dim != other.dim {
            return Err(CoreError::DimMismatch(self.dim, other.dim));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &ExactMatrix) -> ExactMatrix {
        let d = self.dim;
        let mut num = vec![GaussInt::zero(); d * d];
        for i in 0..d {
            for l in 0..d {
                let a = &self.num[i * d + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other.num[l * d + j];
                    if b.is_zero() {
                        continue;
                    }
                    num[i * d + j].add_assign(&a.mul(b));
                }
            }
        }
        ExactMatrix { dim: d, num, k: self.k + other.k }.canonical()
    }

    pub fn adjoint(&self) -> ExactMatrix {
        let d = self.dim;
        let mut num = vec![GaussInt::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                num[j * d + i] = self.num[i * d + j].conj();
            }
        }
        ExactMatrix { dim: d, num, k: self.k }
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0
            && (0..self.dim).all(|i| {
                (0..self.dim).all(|j| {
                    let e = &self.num[i * self.dim + j];
                    if i == j {
                        *e == GaussInt::one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_unitary(&self) -> bool {
        self.mul_unchecked(&self.adjoint()).is_identity()
    }

    pub fn pow(&self, e: u32) -> ExactMatrix {
        let mut acc = ExactMatrix::identity(self.dim);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// `omega * self`.
    pub fn times_omega(&self) -> ExactMatrix {
        let num = self.num.iter().map(GaussInt::mul_one_plus_i).collect();
        ExactMatrix { dim: self.dim, num, k: self.k + 1 }.canonical()
    }

    /// Smallest encoding among `omega^j * self`, j = 0..7.
    pub fn canonical_mod_phase(&self) -> ExactMatrix {
        let mut best = self.clone();
        let mut cur = self.clone();
        for _ in 1..8 {
            cur = cur.times_omega();
            if cur < best {
                best = cur.clone();
            }
        }
        best
    }

    /// Returns `j` with `self = omega^j * other`, if any.
    pub fn phase_relative_to(&self, other: &ExactMatrix) -> Option<u8> {
        let mut cur = other.clone();
        for j in 0..8u8 {
            if &cur == self {
                return Some(j);
            }
            cur = cur.times_omega();
        }
        None
    }

    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut num = vec![GaussInt::zero(); d * d];
        for i in 0..da {
            for j in 0..da {
                let a = &self.num[i * da + j];
                for p in 0..db {
                    for q in 0..db {
                        num[(i * db + p) * d + j * db + q] = a.mul(&other.num[p * db + q]);
                    }
                }
            }
        }
        ExactMatrix { dim: d, num, k: self.k + other.k }.canonical()
    }

    /// True iff this 4x4 matrix is a tensor product `A (x) B` of 2x2 factors.
    ///
    /// Realignment `R[(a,a'),(b,b')] = M[(a,b),(a',b')]` has rank one exactly
    /// when `M` factorizes; rank one is checked through all 2x2 minors.
    pub fn is_local_tensor(&self) -> Result<bool, CoreError> {
        if self.dim != 4 {
            return Err(CoreError::NotTwoQubit(self.dim));
        }
        let mut r: Vec<&GaussInt> = Vec::with_capacity(16);
        for a in 0..2 {
            for ap in 0..2 {
                for b in 0..2 {
                    for bp in 0..2 {
                        r.push(&self.num[(a * 2 + b) * 4 + ap * 2 + bp]);
                    }
                }
            }
        }
        if r.iter().all(|e| e.is_zero()) {
            return Ok(false);
        }
        for i in 0..4 {
            for k in (i + 1)..4 {
                for j in 0..4 {
                    for l in (j + 1)..4 {
                        let lhs = r[i * 4 + j].mul(r[k * 4 + l]);
                        let rhs = r[i * 4 + l].mul(r[k * 4 + j]);
                        if lhs != rhs {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        let scale = std::f64::consts::SQRT_2.powi(-(self.k as i32));
        self.num
            .iter()
            .map(|e| {
                let (re, im) = e.to_f64();
                Complex64::new(re * scale, im * scale)
            })
            .collect()
    }

    pub fn max_bits(&self) -> u64 {
        self.num.iter().map(GaussInt::bits).max().unwrap_or(0)
    }

    /// dim, k, then row-major (re, im), all as zigzag LEB128 varints.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 + self.num.len() * 2);
        write_uvarint(&mut out, self.dim as u64);
        write_uvarint(&mut out, self.k as u64);
        for e in &self.num {
            write_svarint(&mut out, &e.re);
            write_svarint(&mut out, &e.im);
        }
        out
    }

    /// Reads one matrix and returns the number of bytes consumed.
    pub fn from_bytes(bytes: &[u8]) -> Result<(ExactMatrix, usize), CoreError> {
        let mut pos = 0;
        let dim = read_uvarint(bytes, &mut pos)? as usize;
        let k = read_uvarint(bytes, &mut pos)? as u32;
        if dim == 0 || dim > 64 {
            return Err(CoreError::Decode("bad dimension"));
        }
        let mut num = Vec::with_capacity(dim * dim);
        for _ in 0..dim * dim {
            let re = read_svarint(bytes, &mut pos)?;
            let im = read_svarint(bytes, &mut pos)?;
            num.push(GaussInt { re, im });
        }
        let m = ExactMatrix { dim, num, k };
        if !m.is_canonical() {
            return Err(CoreError::Decode("non-canonical matrix"));
        }
        Ok((m, pos))
    }
}

impl Ord for ExactMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.num.cmp(&other.num))
            .then_with(|| self.k.cmp(&other.k))
    }
}

impl PartialOrd for ExactMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/sqrt2^{} [", self.k)?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.num[i * self.dim + j])?;
            }
        }
        write!(f, "]")
    }
}

fn write_uvarint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let b = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(b);
            return;
        }
        out.push(b | 0x80);
    }
}

fn read_uvarint(bytes: &[u8], pos: &mut usize) -> Result<u64, CoreError> {
    let mut v = 0u64;
    let mut shift = 0;
    loop {
        let b = *bytes.get(*pos).ok_or(CoreError::Decode("truncated varint"))?;
        *pos += 1;
        if shift >= 64 {
            return Err(CoreError::Decode("varint overflow"));
        }
        v |= ((b & 0x7f) as u64) << shift;
        if b & 0x80 == 0 {
            return Ok(v);
        }
        shift += 7;
    }
}

// Zigzag over arbitrary precision: 2|x| for x >= 0, 2|x| - 1 otherwise.
fn write_svarint(out: &mut Vec<u8>, x: &BigInt) {
    let mag = x.magnitude();
    let z = if x.sign() == num_bigint::Sign::Minus { (mag << 1u32) - 1u32 } else { mag << 1u32 };
    let digits = z.to_radix_le(128);
    let last = digits.len() - 1;
    for (i, d) in digits.iter().enumerate() {
        out.push(if i < last { d | 0x80 } else { *d });
    }
}

fn read_svarint(bytes: &[u8], pos: &mut usize) -> Result<BigInt, CoreError> {
    let mut digits = Vec::new();
    loop {
        let b = *bytes.get(*pos).ok_or(CoreError::Decode("truncated varint"))?;
        *pos += 1;
        digits.push(b & 0x7f);
        if b & 0x80 == 0 {
            break;
        }
    }
    let z = num_bigint::BigUint::from_radix_le(&digits, 128).ok_or(CoreError::Decode("bad digit"))?;
    let odd = z.bit(0);
    let mag = BigInt::from((z + u32::from(odd)) >> 1u32);
    Ok(if odd { -mag } else { mag })
}
