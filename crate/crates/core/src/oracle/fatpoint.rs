//! Forms of degree `j` vanishing to prescribed orders at given points.

use super::monomials::graded_basis;
use crate::error::Result;
use crate::exact::{DenseMatrix, PrimeField};

/// Vanishing-conditions matrix: one row per derivative `d^a` of order
/// `min(m_i - 1, j)` at point `p_i`, one column per degree-`j` monomial.
///
/// Lower-order conditions follow from these by Euler's identity.
pub(crate) fn conditions(f: PrimeField, points: &[Vec<u32>], mults: &[u32], j: u32) -> Result<DenseMatrix> {
    let r = points.first().map_or(0, Vec::len);
    let cols = graded_basis(r, j).monomials;
    let orders: Vec<Option<u32>> = mults.iter().map(|&m| (m > 0).then(|| (m - 1).min(j))).collect();
    let rows: usize = orders
        .iter()
        .flatten()
        .map(|&k| graded_basis(r, k).monomials.len())
        .sum();
    let mut m = DenseMatrix::try_zeros(f, rows, cols.len())?;

    // falling[e][a] = e (e-1) .. (e-a+1)
    let n = j as usize + 1;
    let mut falling = vec![vec![0u32; n]; n];
    for (e, row) in falling.iter_mut().enumerate() {
        row[0] = 1;
        for a in 1..=e {
            row[a] = f.mul(row[a - 1], (e - a + 1) as u32);
        }
    }

    let mut next = 0;
    for (p, order) in points.iter().zip(&orders) {
        let Some(k) = *order else { continue };
        let powers: Vec<Vec<u32>> = p
            .iter()
            .map(|&c| {
                let mut v = vec![1u32; n];
                for e in 1..n {
                    v[e] = f.mul(v[e - 1], c);
                }
                v
            })
            .collect();
        for alpha in graded_basis(r, k).monomials {
            let row = m.row_mut(next);
            for (col, e) in cols.iter().enumerate() {
                let mut v = 1u32;
                for i in 0..r {
                    let (ei, ai) = (e[i] as usize, alpha[i] as usize);
                    if ei < ai {
                        v = 0;
                        break;
                    }
                    v = f.mul(v, f.mul(falling[ei][ai], powers[i][ei - ai]));
                }
                row[col] = v;
            }
            next += 1;
        }
    }
    Ok(m)
}
