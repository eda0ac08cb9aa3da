use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Gaussian integer `re + i*im` with arbitrary-precision parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        GaussInt::default()
    }

    pub fn one() -> Self {
        GaussInt { re: BigInt::one(), im: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_even(&self) -> bool {
        // two's complement bit 0 has the same parity for negatives
        !self.re.bit(0) && !self.im.bit(0)
    }

    pub fn conj(&self) -> Self {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }

    pub fn neg(&self) -> Self {
        GaussInt { re: -&self.re, im: -&self.im }
    }

    pub fn add(&self, o: &GaussInt) -> Self {
        GaussInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn add_assign(&mut self, o: &GaussInt) {
        self.re += &o.re;
        self.im += &o.im;
    }

    pub fn mul(&self, o: &GaussInt) -> Self {
        if self.is_zero() || o.is_zero() {
            return GaussInt::zero();
        }
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    /// Multiply by `1 + i`.
    pub fn mul_one_plus_i(&self) -> Self {
        GaussInt { re: &self.re - &self.im, im: &self.re + &self.im }
    }

    /// Multiply by `i`.
    pub fn mul_i(&self) -> Self {
        GaussInt { re: -&self.im, im: self.re.clone() }
    }

    pub fn shl(&self, bits: u32) -> Self {
        GaussInt { re: &self.re << bits, im: &self.im << bits }
    }

    pub fn half(&self) -> Self {
        GaussInt { re: &self.re >> 1u32, im: &self.im >> 1u32 }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    pub fn bits(&self) -> u64 {
        self.re.abs().bits().max(self.im.abs().bits())
    }
}

impl Ord for GaussInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for GaussInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -&self.im),
            _ => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}
