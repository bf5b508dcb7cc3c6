//! Exponent vectors in graded lexicographic order and their lookup.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Monomials of one degree, ordered with the first exponent descending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBasis {
    pub degree: u32,
    pub monomials: Vec<Vec<u32>>,
}

/// All exponent vectors of total degree `j` in `r` variables.
pub fn graded_basis(r: usize, j: u32) -> GradedBasis {
    GradedBasis {
        degree: j,
        monomials: bounded_monomials(&vec![j; r], j),
    }
}

/// Exponent vectors of total degree `j` with `e_i <= bounds[i]`, in the same
/// order as [`graded_basis`].
pub fn bounded_monomials(bounds: &[u32], j: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; bounds.len()];
    // capacity left in the tail, to prune hopeless branches
    let mut tail = vec![0u64; bounds.len() + 1];
    for i in (0..bounds.len()).rev() {
        tail[i] = tail[i + 1] + u64::from(bounds[i]);
    }
    fill(bounds, &tail, 0, j, &mut cur, &mut out);
    out
}

/// Number of vectors [`bounded_monomials`] would return, without building them.
pub(crate) fn count_bounded(bounds: &[u32], j: u32) -> u128 {
    // ways[s] = number of prefixes with total s
    let mut ways = vec![0u128; j as usize + 1];
    ways[0] = 1;
    for &b in bounds {
        let mut next = vec![0u128; ways.len()];
        let mut window = 0u128;
        for s in 0..ways.len() {
            window += ways[s];
            if s > b as usize {
                window -= ways[s - b as usize - 1];
            }
            next[s] = window;
        }
        ways = next;
    }
    ways[j as usize]
}

fn fill(bounds: &[u32], tail: &[u64], i: usize, left: u32, cur: &mut [u32], out: &mut Vec<Vec<u32>>) {
    if i == bounds.len() {
        if left == 0 {
            out.push(cur.to_vec());
        }
        return;
    }
    if u64::from(left) > tail[i] {
        return;
    }
    let hi = left.min(bounds[i]);
    let lo = u64::from(left).saturating_sub(tail[i + 1]) as u32;
    for e in (lo..=hi).rev() {
        cur[i] = e;
        fill(bounds, tail, i + 1, left - e, cur, out);
    }
    cur[i] = 0;
}

/// Position lookup for a list of exponent vectors with per-variable bounds.
pub(crate) struct MonomialIndex {
    strides: Vec<u128>,
    table: Table,
}

enum Table {
    Dense(Vec<u32>),
    Sparse(HashMap<u128, u32>),
}

const DENSE_LIMIT: u128 = 1 << 24;

impl MonomialIndex {
    pub(crate) fn new(bounds: &[u32], monomials: &[Vec<u32>]) -> Result<Self> {
        let mut strides = Vec::with_capacity(bounds.len());
        let mut size: u128 = 1;
        for &b in bounds {
            strides.push(size);
            size = size
                .checked_mul(u128::from(b) + 1)
                .ok_or_else(|| Error::OutOfDeskScale("monomial key space too large".into()))?;
        }
        let key = |m: &[u32]| -> u128 { m.iter().zip(&strides).map(|(&e, &s)| u128::from(e) * s).sum() };
        let table = if size <= DENSE_LIMIT {
            let mut t = vec![u32::MAX; size as usize];
            for (i, m) in monomials.iter().enumerate() {
                t[key(m) as usize] = i as u32;
            }
            Table::Dense(t)
        } else {
            Table::Sparse(monomials.iter().enumerate().map(|(i, m)| (key(m), i as u32)).collect())
        };
        Ok(Self { strides, table })
    }

    /// Index of `a + b`; the caller guarantees the sum lies in the list.
    #[inline]
    pub(crate) fn index_of_sum(&self, a: &[u32], b: &[u32]) -> usize {
        let mut k: u128 = 0;
        for ((&x, &y), &s) in a.iter().zip(b).zip(&self.strides) {
            k += u128::from(x + y) * s;
        }
        let idx = match &self.table {
            Table::Dense(t) => t[k as usize],
            Table::Sparse(m) => m[&k],
        };
        debug_assert_ne!(idx, u32::MAX);
        idx as usize
    }
}
