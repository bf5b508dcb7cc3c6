//! Divisor classes on the blowup of the plane at `n <= 8` general points.
//!
//! A class `d E_0 - b_1 E_1 - .. - b_n E_n` is stored as `(d; b)`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exact::binom_signed;

pub const MAX_POINTS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub d: i64,
    pub b: Vec<i64>,
}

impl DivisorClass {
    pub fn new(d: i64, b: Vec<i64>) -> Result<Self> {
        if b.is_empty() || b.len() > MAX_POINTS {
            return invalid(format!("point count {} outside 1..=8", b.len()));
        }
        Ok(Self { d, b })
    }

    /// `d E_0 - m (E_1 + .. + E_n)`.
    pub fn uniform(n: usize, d: i64, m: i64) -> Result<Self> {
        Self::new(d, vec![m; n])
    }

    /// `K = -3 E_0 + E_1 + .. + E_n`.
    pub fn canonical(n: usize) -> Result<Self> {
        Self::new(-3, vec![-1; n])
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn self_intersection(&self) -> i64 {
        intersect_unchecked(self, self)
    }
}

impl std::fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({};", self.d)?;
        for (i, b) in self.b.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { " " } else { "," }, b)?;
        }
        write!(f, ")")
    }
}

fn intersect_unchecked(x: &DivisorClass, y: &DivisorClass) -> i64 {
    x.d * y.d - x.b.iter().zip(&y.b).map(|(p, q)| p * q).sum::<i64>()
}

/// Intersection pairing `d d' - sum b_i b'_i`.
pub fn intersect(x: &DivisorClass, y: &DivisorClass) -> Result<i64> {
    if x.n() != y.n() {
        return invalid(format!("point counts differ: {} vs {}", x.n(), y.n()));
    }
    Ok(intersect_unchecked(x, y))
}

// (d; b) templates for the seven families, padded with zeros to 8 points.
const FAMILIES: [(i64, [i64; 8]); 7] = [
    (0, [-1, 0, 0, 0, 0, 0, 0, 0]),
    (1, [1, 1, 0, 0, 0, 0, 0, 0]),
    (2, [1, 1, 1, 1, 1, 0, 0, 0]),
    (3, [2, 1, 1, 1, 1, 1, 1, 0]),
    (4, [2, 2, 2, 1, 1, 1, 1, 1]),
    (5, [2, 2, 2, 2, 2, 2, 1, 1]),
    (6, [3, 2, 2, 2, 2, 2, 2, 2]),
];

/// Every `(-1)`-curve class on the blowup at `n` general points.
///
/// Ordered by degree, then lexicographically decreasing multiplicities.
pub fn minus_one_curves(n: usize) -> Result<Vec<DivisorClass>> {
    if n == 0 || n > MAX_POINTS {
        return invalid(format!("point count {n} outside 1..=8"));
    }
    let mut out = Vec::new();
    for (d, template) in FAMILIES {
        let support = template.iter().filter(|&&b| b != 0).count();
        if support > n {
            continue;
        }
        let mut b: Vec<i64> = template[..n].to_vec();
        // template entries are nonincreasing except the lone -1
        b.sort_unstable_by(|x, y| y.cmp(x));
        loop {
            out.push(DivisorClass { d, b: b.clone() });
            if !prev_permutation(&mut b) {
                break;
            }
        }
    }
    Ok(out)
}

// Step to the previous permutation in lexicographic order.
fn prev_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] > v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] < v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn check_nm(n: usize, d: i64, m: i64) -> Result<()> {
    if n == 0 || n > MAX_POINTS {
        return invalid(format!("point count {n} outside 1..=8"));
    }
    if d < 0 || m < 0 {
        return invalid(format!("need d, m >= 0, got d={d} m={m}"));
    }
    Ok(())
}

/// Whether `d E_0 - m (E_1 + .. + E_n)` is effective.
///
/// Four points are not covered by a single linear threshold.
pub fn uniform_effective(n: usize, d: i64, m: i64) -> Result<bool> {
    check_nm(n, d, m)?;
    Ok(match n {
        1 | 2 => d >= m,
        3 => 2 * d >= 3 * m,
        5 => d >= 2 * m,
        6 => 5 * d >= 12 * m,
        7 => 8 * d >= 21 * m,
        8 => 17 * d >= 48 * m,
        _ => {
            return Err(Error::Unsupported(
                "effectivity at four points has no uniform threshold".into(),
            ))
        }
    })
}

/// Whether `d E_0 - m (E_1 + .. + E_n)` has `h^1 > 0`: some `(-1)`-curve
/// meets it in at most `-2`.
pub fn uniform_irregular(n: usize, d: i64, m: i64) -> Result<bool> {
    check_nm(n, d, m)?;
    if n == 1 || n == 4 {
        return Err(Error::Unsupported(format!(
            "irregularity criterion does not apply at {n} points"
        )));
    }
    let f = DivisorClass::uniform(n, d, m)?;
    Ok(minus_one_curves(n)?
        .iter()
        .any(|e| intersect_unchecked(e, &f) <= -2))
}

fn ceil_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// First `m` at which injectivity of `A_{m-1} -> A_m` is no longer
/// guaranteed, for `r = 4` and `n` forms of degree `t`.
pub fn injectivity_bound(n: usize, t: i64) -> Result<i64> {
    if t < 1 {
        return invalid("t must be positive");
    }
    Ok(match n {
        8 => ceil_div(17 * (t - 1) + 2, 11),
        7 => ceil_div(8 * (t - 1) + 2, 5),
        5 | 6 => ceil_div(5 * (t - 1) + 2, 3),
        _ => return invalid(format!("injectivity bound needs n in 5..=8, got {n}")),
    })
}

/// `min E . D'_m` over `(-1)`-curves, where `D'_m = m E_0 - (m-t+1) sum E_i`.
pub fn worst_curve_value(n: usize, t: i64, m: i64) -> Result<i64> {
    let f = DivisorClass::uniform(n, m, m - t + 1)?;
    Ok(minus_one_curves(n)?
        .iter()
        .map(|e| intersect_unchecked(e, &f))
        .min()
        .expect("at least one curve"))
}

/// `C(r-1+j, r-1) - sum C(r-2+m_i, r-1)`: the expected number of degree-`j`
/// forms in `r` variables vanishing to order `m_i` at general points.
pub fn expected_h0(r: u32, j: i64, mults: &[i64]) -> BigInt {
    let r = i64::from(r);
    let mut v = binom_signed(r - 1 + j, r - 1);
    for &m in mults {
        v -= binom_signed(r - 2 + m, r - 1);
    }
    v
}
