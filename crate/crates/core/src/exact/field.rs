//! Arithmetic in a prime field `F_p` with `2^31 - 1 <= p < 2^32`.
//!
//! Residues are stored as `u32`. The upper bound keeps `a + b * c` inside a
//! `u64` for any three residues, which the elimination kernel relies on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `2^31 - 1`, the default modulus.
pub const MERSENNE_31: u64 = (1 << 31) - 1;

/// Smallest admissible modulus.
pub const MIN_PRIME: u64 = MERSENNE_31;

/// A validated prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: MERSENNE_31 }
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(MIN_PRIME..(1 << 32)).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "modulus {p} outside [2^31 - 1, 2^32)"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("modulus {p} is not prime")));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn is_mersenne(&self) -> bool {
        self.p == MERSENNE_31
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u32 {
        (x % self.p) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (if s >= self.p { s - self.p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let (a, b) = (a as u64, b as u64);
        (if a >= b { a - b } else { a + self.p - b }) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            (self.p - a as u64) as u32
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// Embed a signed integer.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn element(&self, residue: u64) -> FieldElement {
        FieldElement {
            residue: self.reduce(residue),
            modulus: self.p,
        }
    }

    /// `t! / prod(e_i!) mod p`.
    ///
    /// Built as a product of binomials `C(e_1 + .. + e_i, e_i)` so every
    /// intermediate stays a residue.
    pub fn multinomial(&self, t: u64, exponents: &[i64]) -> Result<u32> {
        if exponents.iter().any(|&e| e < 0) {
            return Err(Error::InvalidArgument("negative exponent in multinomial".into()));
        }
        let sum: i64 = exponents.iter().sum();
        if sum as u64 != t {
            return Err(Error::InvalidArgument(format!(
                "multinomial exponents sum to {sum}, expected {t}"
            )));
        }
        if t >= self.p {
            return Err(Error::InvalidArgument(format!(
                "multinomial degree {t} not below the modulus"
            )));
        }
        let mut acc = 1u32;
        let mut running = 0u64;
        for &e in exponents {
            for i in 1..=e as u64 {
                running += 1;
                acc = self.mul(acc, running as u32);
                acc = self.mul(acc, self.inv(i as u32).expect("i < p is invertible"));
            }
        }
        Ok(acc)
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    pub residue: u32,
    pub modulus: u64,
}

/// `t! / prod(e_i!) mod p` as a [`FieldElement`].
pub fn multinomial_mod_p(field: &PrimeField, t: u64, exponents: &[i64]) -> Result<FieldElement> {
    field.multinomial(t, exponents).map(|residue| FieldElement {
        residue,
        modulus: field.modulus(),
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
