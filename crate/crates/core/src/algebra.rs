//! The object under study: `K[x_1..x_r] / (l_1^{u_1}, .., l_n^{u_n})`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Shape of the algebra relative to the number of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `n = r`: complete intersection.
    C,
    /// `n = r + 1`: almost complete intersection.
    A,
    /// `n = r + 2`.
    B,
    General,
}

impl Family {
    pub fn of(r: u32, n: usize) -> Self {
        match n as i64 - i64::from(r) {
            0 => Family::C,
            1 => Family::A,
            2 => Family::B,
            _ => Family::General,
        }
    }
}

/// Number of variables plus the exponent of each generic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub r: u32,
    pub exponents: Vec<u32>,
    pub family: Family,
}

impl AlgebraSpec {
    pub fn new(r: u32, exponents: Vec<u32>) -> Result<Self> {
        if r == 0 {
            return invalid("need at least one variable");
        }
        if exponents.is_empty() {
            return invalid("need at least one form");
        }
        if exponents.contains(&0) {
            return invalid("exponents must be positive");
        }
        let family = Family::of(r, exponents.len());
        Ok(Self {
            r,
            exponents,
            family,
        })
    }

    /// `n` forms, each raised to the power `t`.
    pub fn uniform(r: u32, n: usize, t: u32) -> Result<Self> {
        Self::new(r, vec![t; n])
    }

    /// `A_{r,t}`: `r + 1` forms.
    pub fn a(r: u32, t: u32) -> Result<Self> {
        Self::uniform(r, r as usize + 1, t)
    }

    /// `B_{r,t}`: `r + 2` forms.
    pub fn b(r: u32, t: u32) -> Result<Self> {
        Self::uniform(r, r as usize + 2, t)
    }

    /// `C_{r,t}`: `r` forms.
    pub fn c(r: u32, t: u32) -> Result<Self> {
        Self::uniform(r, r as usize, t)
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    /// The common exponent, if all forms share one.
    pub fn uniform_exponent(&self) -> Option<u32> {
        let t = self.exponents[0];
        self.exponents.iter().all(|&u| u == t).then_some(t)
    }

    /// Degree past which generic forms leave nothing: the socle degree of
    /// the complete intersection on the `r` smallest exponents.
    ///
    /// `None` when `n < r` (the quotient is not Artinian).
    pub fn degree_bound(&self) -> Option<u64> {
        if self.n() < self.r as usize {
            return None;
        }
        let mut u = self.exponents.clone();
        u.sort_unstable();
        Some(u[..self.r as usize].iter().map(|&e| u64::from(e - 1)).sum())
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.uniform_exponent() {
            Some(t) => write!(f, "r={} n={} t={}", self.r, self.n(), t),
            None => write!(f, "r={} u={:?}", self.r, self.exponents),
        }
    }
}
