//! Exact rational exponents and integer-exact real powers.
//!
//! Lattice bounds such as `n^(1-a)` are never evaluated in floating point.
//! An exponent `p/q` is applied as `floor((n^p)^(1/q))` with big-integer roots.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-negative rational `num/den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exponent {
    num: u32,
    den: u32,
}

impl Exponent {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("exponent denominator is zero".into()));
        }
        // den > 0, so g > 0
        let g = num.gcd(&den);
        Ok(Exponent {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u32 {
        self.num
    }

    pub fn den(self) -> u32 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `1 - self`; requires `self <= 1`.
    pub fn complement(self) -> Self {
        debug_assert!(self.num <= self.den);
        Exponent::new(self.den - self.num, self.den).expect("nonzero denominator")
    }

    /// `2 * self`.
    pub fn doubled(self) -> Self {
        Exponent::new(2 * self.num, self.den).expect("nonzero denominator")
    }

    /// Strictly between 0 and 1/2.
    pub fn is_below_half(self) -> bool {
        self.num > 0 && 2 * u64::from(self.num) < u64::from(self.den)
    }

    /// `floor(base^self)`.
    pub fn floor_pow(self, base: u64) -> u64 {
        self.floor_scaled_pow(base, 1)
    }

    /// `floor(scale * base^self)`.
    pub fn floor_scaled_pow(self, base: u64, scale: u64) -> u64 {
        let radicand = self.scaled_radicand(base, scale);
        let root = radicand.nth_root(self.den);
        to_u64(root)
    }

    /// `ceil(scale * base^self)`.
    pub fn ceil_scaled_pow(self, base: u64, scale: u64) -> u64 {
        let radicand = self.scaled_radicand(base, scale);
        let root = radicand.nth_root(self.den);
        if root.pow(self.den) == radicand {
            to_u64(root)
        } else {
            to_u64(root) + 1
        }
    }

    /// Exact test of `value < base^self`.
    pub fn lt_pow(self, value: u64, base: u64) -> bool {
        BigUint::from(value).pow(self.den) < BigUint::from(base).pow(self.num)
    }

    /// Exact test of `value <= scale * base^self`.
    pub fn le_scaled_pow(self, value: u64, base: u64, scale: u64) -> bool {
        BigUint::from(value).pow(self.den) <= self.scaled_radicand(base, scale)
    }

    // (scale^den) * base^num, whose den-th root is scale * base^(num/den).
    fn scaled_radicand(self, base: u64, scale: u64) -> BigUint {
        BigUint::from(scale).pow(self.den) * BigUint::from(base).pow(self.num)
    }
}

fn to_u64(v: BigUint) -> u64 {
    u64::try_from(v).expect("root of a u64 power with exponent <= 1 fits in u64")
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts only `p/q` with decimal integers; decimals such as `0.4` are
    /// rejected so every bound stays exact.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("expected an exact rational p/q, got {s:?}"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !digits(p) || !digits(q) {
            return Err(bad());
        }
        let p: u32 = p.parse().map_err(|_| bad())?;
        let q: u32 = q.parse().map_err(|_| bad())?;
        Exponent::new(p, q)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
