//! Closed-form Hilbert functions, socle degrees and failure margins for
//! uniform exponents.

mod verlinde;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use verlinde::verlinde_dim;

use crate::algebra::AlgebraSpec;
use crate::error::{invalid, Error, Result};
use crate::exact::{binom_signed, eulerian, BigCount};

/// Where a Hilbert function came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Formula,
    Oracle,
}

/// `dim A_j` for `j = 0, 1, ..`; trailing zeros are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFunction {
    pub values: Vec<u64>,
    pub provenance: Provenance,
    pub spec: Option<AlgebraSpec>,
}

impl HilbertFunction {
    pub fn new(mut values: Vec<u64>, provenance: Provenance, spec: Option<AlgebraSpec>) -> Self {
        while values.last() == Some(&0) {
            values.pop();
        }
        Self {
            values,
            provenance,
            spec,
        }
    }

    /// Value in degree `j`, zero outside the support.
    pub fn get(&self, j: i64) -> u64 {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.values.get(j).copied())
            .unwrap_or(0)
    }

    pub fn total_dimension(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn socle_degree(&self) -> i64 {
        socle_degree(&self.values)
    }

    pub fn is_palindromic(&self) -> bool {
        self.values.iter().eq(self.values.iter().rev())
    }
}

/// `dim (A_{r,t})_i`: `r + 1` generic `t`-th powers in `r` variables.
///
/// Panics if `r == 0` or `t == 0`.
pub fn stanley_hf(r: u32, t: u32, i: i64) -> BigCount {
    assert!(r >= 1 && t >= 1, "stanley_hf needs r, t >= 1");
    if i < 0 {
        return BigCount::zero();
    }
    let (r, t) = (i64::from(r), i64::from(t));
    let mut acc = binom_signed(r - 1 + i, r - 1);
    for j in 1..=(i / t).min(r) {
        let term = binom_signed(r - 1 + i - t * j, r - 1) * binom_signed(r + 1, j);
        if j % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    if acc.is_negative() {
        BigCount::zero()
    } else {
        acc.to_biguint().expect("nonnegative")
    }
}

/// [`stanley_hf`] as a machine integer.
pub fn stanley_hf_u64(r: u32, t: u32, i: i64) -> Result<u64> {
    let v = stanley_hf(r, t, i);
    v.to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("dimension {v} does not fit in 64 bits")))
}

/// Hilbert function of `r` generic `t`-th powers: the coefficients of
/// `(1 + z + .. + z^{t-1})^r`.
pub fn ci_hf(r: u32, t: u32) -> Result<HilbertFunction> {
    if r == 0 || t == 0 {
        return invalid("ci_hf needs r, t >= 1");
    }
    let mut coeffs = vec![1u64];
    for _ in 0..r {
        let mut next = vec![0u64; coeffs.len() + t as usize - 1];
        // running window sum of the previous row
        let mut window = 0u64;
        for (k, slot) in next.iter_mut().enumerate() {
            if k < coeffs.len() {
                window = window
                    .checked_add(coeffs[k])
                    .ok_or_else(|| Error::InvalidArgument("ci_hf overflow".into()))?;
            }
            if k >= t as usize {
                window -= coeffs[k - t as usize];
            }
            *slot = window;
        }
        coeffs = next;
    }
    let spec = AlgebraSpec::c(r, t).ok();
    Ok(HilbertFunction::new(coeffs, Provenance::Formula, spec))
}

/// `C(m+3, 3) - 5 C(m-t+3, 3)`, valid for `t <= m <= 2t - 2`.
pub fn dvl_hf(t: u32, m: u32) -> Result<u64> {
    if t < 2 || m < t || m > 2 * t - 2 {
        return invalid(format!("dvl_hf needs t <= m <= 2t-2, got t={t} m={m}"));
    }
    let (t, m) = (i64::from(t), i64::from(m));
    let v = binom_signed(m + 3, 3) - BigInt::from(5) * binom_signed(m - t + 3, 3);
    v.to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("dvl_hf value {v} out of range")))
}

/// Middle-degree dimension of `s + 2` generic quadrics in `s` variables:
/// `2^{s/2}` for even `s`, `1` for odd `s`.
pub fn decruz_closed_form(s: u32) -> u64 {
    if s % 2 == 0 {
        1u64 << (s / 2)
    } else {
        1
    }
}

/// Largest index with a positive value; `-1` when all are zero.
pub fn socle_degree(values: &[u64]) -> i64 {
    values.iter().rposition(|&v| v > 0).map_or(-1, |i| i as i64)
}

/// Socle degree of `B_{s,t}` for odd `s`: `(t-1)(s+1)/2`.
pub fn socle_b_odd(s: u32, t: u32) -> Result<u64> {
    if s % 2 == 0 {
        return invalid(format!("socle_b_odd needs odd s, got {s}"));
    }
    if t == 0 {
        return invalid("t must be positive");
    }
    Ok(u64::from(t - 1) * u64::from(s + 1) / 2)
}

/// Bounds `((t-1)k, (t-1)(k+1))` on the socle degree of `B_{2k,t}`.
pub fn dci_socle_bounds(k: u32, t: u32) -> (u64, u64) {
    let base = u64::from(t.saturating_sub(1));
    (base * u64::from(k), base * (u64::from(k) + 1))
}

/// `dim (A_{2k,t})_c - dim (A_{2k,t})_{c+1}` at `c = k(t-1) - 1`.
///
/// A nonnegative margin rules out injectivity in degree `c`.
pub fn failr1_margin(k: u32, t: u32) -> Result<BigInt> {
    if k < 2 || t < 2 {
        return invalid(format!("failr1_margin needs k >= 2 and t >= 2, got k={k} t={t}"));
    }
    let c = i64::from(k) * i64::from(t - 1) - 1;
    Ok(BigInt::from(stanley_hf(2 * k, t, c)) - BigInt::from(stanley_hf(2 * k, t, c + 1)))
}

/// Difference of the two central Eulerian numbers of order `2k - 2`.
pub fn eulerian_alpha(k: u32) -> Result<BigInt> {
    if k < 2 {
        return invalid(format!("eulerian_alpha needs k >= 2, got {k}"));
    }
    let n = 2 * k - 2;
    let k = i64::from(k);
    Ok(BigInt::from(eulerian(n, k - 2)) - BigInt::from(eulerian(n, k - 3)))
}

/// `dim (A_{2k+1,t})_c - dim (A_{2k+1,t})_{c+1}` at `c = (t-1)(k+1) - 1`,
/// for `t > 2k + 2`.
pub fn gtodd_margin(k: u32, t: u32) -> Result<BigInt> {
    if k < 1 || t <= 2 * k + 2 {
        return invalid(format!("gtodd_margin needs k >= 1 and t > 2k+2, got k={k} t={t}"));
    }
    let c = i64::from(t - 1) * (i64::from(k) + 1) - 1;
    let r = 2 * k + 1;
    Ok(BigInt::from(stanley_hf(r, t, c)) - BigInt::from(stanley_hf(r, t, c + 1)))
}

/// Closed-form Hilbert function of `A_{r,t}` over all degrees.
pub fn stanley_series(r: u32, t: u32) -> Result<HilbertFunction> {
    if r == 0 || t == 0 {
        return invalid("stanley_series needs r, t >= 1");
    }
    let top = i64::from(r) * i64::from(t - 1);
    let values = (0..=top)
        .map(|i| stanley_hf_u64(r, t, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertFunction::new(values, Provenance::Formula, AlgebraSpec::a(r, t).ok()))
}
