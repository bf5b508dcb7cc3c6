//! Dense matrices over `F_p` and their rank.

use rayon::prelude::*;

use super::field::{PrimeField, MERSENNE_31};
use crate::error::{Error, Result};

/// Largest matrix (rows × cols) the oracle agrees to build.
pub const MAX_ENTRIES: usize = 50_000_000;

/// Row-major matrix of residues modulo a fixed prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    /// Like [`zeros`](Self::zeros) but refuses oversized shapes.
    pub fn try_zeros(field: PrimeField, rows: usize, cols: usize) -> Result<Self> {
        match rows.checked_mul(cols) {
            Some(n) if n <= MAX_ENTRIES => Ok(Self::zeros(field, rows, cols)),
            _ => Err(Error::OutOfDeskScale(format!(
                "{rows} x {cols} matrix exceeds {MAX_ENTRIES} entries"
            ))),
        }
    }

    pub fn identity(field: PrimeField, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from row vectors; entries are reduced mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&v| field.reduce(v)).collect();
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!((v as u64) < self.field.modulus());
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.entries[i * self.cols + j];
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// Inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let f = self.field;
        let mut a = self.clone();
        let mut inv = Self::identity(f, n);
        for c in 0..n {
            let piv = (c..n).find(|&i| a.get(i, c) != 0)?;
            a.swap_rows(c, piv);
            inv.swap_rows(c, piv);
            let s = f.inv(a.get(c, c)).expect("nonzero pivot");
            for j in 0..n {
                a.set(c, j, f.mul(a.get(c, j), s));
                inv.set(c, j, f.mul(inv.get(c, j), s));
            }
            for i in 0..n {
                let x = a.get(i, c);
                if i == c || x == 0 {
                    continue;
                }
                for j in 0..n {
                    a.set(i, j, f.sub(a.get(i, j), f.mul(x, a.get(c, j))));
                    inv.set(i, j, f.sub(inv.get(i, j), f.mul(x, inv.get(c, j))));
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        let (lo, hi) = (i.min(k), i.max(k));
        let (head, tail) = self.entries.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }
}

/// Reduction of a `u64` below `p^2` into `[0, p)`.
trait Reducer: Copy + Send + Sync {
    fn reduce(self, x: u64) -> u32;
}

#[derive(Clone, Copy)]
struct Mersenne31;

impl Reducer for Mersenne31 {
    #[inline(always)]
    fn reduce(self, x: u64) -> u32 {
        let x = (x & MERSENNE_31) + (x >> 31);
        let x = (x & MERSENNE_31) + (x >> 31);
        (if x >= MERSENNE_31 { x - MERSENNE_31 } else { x }) as u32
    }
}

#[derive(Clone, Copy)]
struct Barrett {
    p: u64,
    m: u64, // floor(2^64 / p)
}

impl Barrett {
    fn new(p: u64) -> Self {
        Self {
            p,
            m: (u128::from(u64::MAX) + 1).div_euclid(u128::from(p)) as u64,
        }
    }
}

impl Reducer for Barrett {
    #[inline(always)]
    fn reduce(self, x: u64) -> u32 {
        let q = ((u128::from(x) * u128::from(self.m)) >> 64) as u64;
        let mut r = x - q * self.p;
        // q underestimates the quotient by at most 2
        while r >= self.p {
            r -= self.p;
        }
        r as u32
    }
}

/// Rank over `F_p` by row echelon reduction on a private copy.
pub fn rank(m: &DenseMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut work = m.entries.clone();
    let f = m.field;
    if f.is_mersenne() {
        eliminate(&mut work, m.rows, m.cols, f, Mersenne31)
    } else {
        eliminate(&mut work, m.rows, m.cols, f, Barrett::new(f.modulus()))
    }
}

// Work per elimination step above which row updates are spread over rayon.
const PAR_THRESHOLD: usize = 1 << 18;

fn eliminate<R: Reducer>(
    a: &mut [u32],
    rows: usize,
    cols: usize,
    f: PrimeField,
    red: R,
) -> usize {
    let p = f.modulus();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            let (head, tail) = a.split_at_mut(piv * cols);
            head[rank * cols..(rank + 1) * cols].swap_with_slice(&mut tail[..cols]);
        }
        let (top, below) = a.split_at_mut((rank + 1) * cols);
        let prow = &mut top[rank * cols..];
        let s = f.inv(prow[c]).expect("nonzero pivot");
        for x in &mut prow[c..] {
            *x = f.mul(*x, s);
        }
        let prow = &prow[c + 1..];
        let update = |row: &mut [u32]| {
            let lead = row[c];
            if lead == 0 {
                return;
            }
            row[c] = 0;
            let neg = p - u64::from(lead);
            for (x, &y) in row[c + 1..].iter_mut().zip(prow) {
                // x + neg * y < p^2 < 2^64
                *x = red.reduce(u64::from(*x) + neg * u64::from(y));
            }
        };
        let remaining = rows - rank - 1;
        if remaining * (cols - c) >= PAR_THRESHOLD && rayon::current_num_threads() > 1 {
            below.par_chunks_mut(cols).for_each(update);
        } else {
            below.chunks_mut(cols).for_each(update);
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(f: PrimeField, rows: usize, cols: usize, seed: u64) -> DenseMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = DenseMatrix::zeros(f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, rng.gen_range(0..f.modulus()) as u32);
            }
        }
        m
    }

    /// Product of an `rows x k` and a `k x cols` random matrix: rank <= k.
    fn low_rank(f: PrimeField, rows: usize, cols: usize, k: usize, seed: u64) -> DenseMatrix {
        let a = random(f, rows, k, seed);
        let b = random(f, k, cols, seed + 1);
        let mut m = DenseMatrix::zeros(f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let mut acc = 0u32;
                for l in 0..k {
                    acc = f.add(acc, f.mul(a.get(i, l), b.get(l, j)));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    #[test]
    fn basic_ranks() {
        let f = PrimeField::default();
        assert_eq!(DenseMatrix::identity(f, 5).rank(), 5);
        assert_eq!(DenseMatrix::zeros(f, 3, 7).rank(), 0);
        let m = DenseMatrix::from_rows(f, &[vec![1, 2, 3], vec![1, 2, 3]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(DenseMatrix::zeros(f, 0, 4).rank(), 0);
    }

    #[test]
    fn rank_does_not_mutate() {
        let f = PrimeField::default();
        let m = random(f, 6, 9, 3);
        let copy = m.clone();
        m.rank();
        assert_eq!(m, copy);
    }

    #[test]
    fn low_rank_products_both_reducers() {
        for p in [MERSENNE_31, 4_294_967_291, 2_147_483_659] {
            let f = PrimeField::new(p).unwrap();
            for k in [0, 1, 7, 20] {
                let m = low_rank(f, 30, 40, k, 11 + k as u64);
                assert_eq!(m.rank(), k, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn barrett_agrees_with_remainder() {
        let b = Barrett::new(4_294_967_291);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let x: u64 = rng.gen_range(0..4_294_967_291u64 * 4_294_967_291);
            assert_eq!(u64::from(b.reduce(x)), x % 4_294_967_291);
        }
        let m = Mersenne31;
        for x in [0, MERSENNE_31, MERSENNE_31 * MERSENNE_31, u64::MAX >> 2] {
            assert_eq!(u64::from(m.reduce(x)), x % MERSENNE_31);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = PrimeField::default();
        let m = random(f, 6, 6, 9);
        let inv = m.inverse().unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let mut acc = 0;
                for l in 0..6 {
                    acc = f.add(acc, f.mul(m.get(i, l), inv.get(l, j)));
                }
                assert_eq!(acc, u32::from(i == j));
            }
        }
        assert!(DenseMatrix::zeros(f, 3, 3).inverse().is_none());
    }

    #[test]
    fn desk_scale_cap() {
        let f = PrimeField::default();
        assert!(DenseMatrix::try_zeros(f, 10_000, 10_000).is_err());
        assert!(DenseMatrix::try_zeros(f, 100, 100).is_ok());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn transpose_invariance(seed in any::<u64>(), k in 0usize..50) {
                let f = PrimeField::default();
                let m = low_rank(f, 50, 80, k, seed);
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }

            #[test]
            fn row_permutation_and_scaling(seed in any::<u64>(), k in 0usize..12, s in 1u32..u32::MAX) {
                let f = PrimeField::default();
                let m = low_rank(f, 15, 20, k, seed);
                let mut shuffled = DenseMatrix::zeros(f, 15, 20);
                let scale = f.reduce(u64::from(s)).max(1);
                for i in 0..15 {
                    let src = (i * 7) % 15;
                    for j in 0..20 {
                        shuffled.set(i, j, f.mul(m.get(src, j), scale));
                    }
                }
                prop_assert_eq!(m.rank(), shuffled.rank());
            }
        }
    }
}
