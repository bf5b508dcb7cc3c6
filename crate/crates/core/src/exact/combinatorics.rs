//! Exact counting: binomial coefficients with the zero-extension convention
//! and Eulerian numbers.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// `C(a, b)`, extended by zero outside `0 <= b <= a`.
///
/// The alternating sums used for Hilbert functions routinely evaluate
/// binomials with negative or too-small tops, and those terms must vanish.
pub fn binom(a: i64, b: i64) -> BigCount {
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    // running product stays integral: acc = C(a - b + i, i) after step i
    for i in 1..=b {
        acc *= a - b + i;
        acc /= i;
    }
    acc
}

/// Signed version of [`binom`], convenient inside alternating sums.
pub fn binom_signed(a: i64, b: i64) -> BigInt {
    BigInt::from(binom(a, b))
}

/// `C(a, b)` as a machine integer; `None` on overflow.
pub fn binom_u64(a: i64, b: i64) -> Option<u64> {
    u64::try_from(binom(a, b)).ok()
}

/// Number of permutations of `n` letters with exactly `j` descents.
///
/// Zero for `j < 0` or `j >= n`, except `eulerian(0, 0) = 1`.
pub fn eulerian(n: u32, j: i64) -> BigCount {
    if n == 0 {
        return if j == 0 { BigUint::one() } else { BigUint::zero() };
    }
    if j < 0 || j >= i64::from(n) {
        return BigUint::zero();
    }
    // row-by-row recurrence A(m, k) = (k + 1) A(m-1, k) + (m - k) A(m-1, k-1)
    let mut row = vec![BigUint::one()];
    for m in 2..=n as usize {
        let mut next = vec![BigUint::zero(); m];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                *slot += &row[k] * (k as u64 + 1);
            }
            if k >= 1 {
                *slot += &row[k - 1] * (m - k) as u64;
            }
        }
        row = next;
    }
    row[j as usize].clone()
}
