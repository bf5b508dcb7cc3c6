//! Graded pieces of `K[x_1..x_r] / (g_1^{u_1}, .., g_n^{u_n})` for explicit
//! linear forms `g_k`.
//!
//! A maximal independent subset of the forms is turned into coordinates
//! `y_1..y_s`, so those generators become the monomials `y_i^{u_i}`. The
//! quotient by them has a basis of standard monomials (`e_i < u_i` for
//! `i <= s`), and only the remaining forms contribute matrix rows.

use super::monomials::{bounded_monomials, count_bounded, graded_basis, MonomialIndex};
use crate::error::{Error, Result};
use crate::exact::{DenseMatrix, PrimeField, MAX_ENTRIES};

/// Outcome of one rank computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct PieceDim {
    pub dim: u64,
    /// The matrix reached the largest rank its shape allows, so no other
    /// choice of forms can lower `dim`.
    pub saturated: bool,
}

/// Forms expressed in the adapted coordinates.
pub(crate) struct Adapted {
    field: PrimeField,
    vars: usize,
    /// Exponents of the forms that became coordinates `y_1..y_s`.
    ci: Vec<u32>,
    /// Remaining nonzero forms with their exponents.
    extra: Vec<(Vec<u32>, u32)>,
}

impl Adapted {
    pub(crate) fn new(field: PrimeField, vars: usize, forms: &[Vec<u32>], exps: &[u32]) -> Self {
        let mut order: Vec<usize> = (0..forms.len()).collect();
        order.sort_by_key(|&k| exps[k]);

        // greedy independent subset, tracked through an echelon basis
        let mut echelon: Vec<(usize, Vec<u32>)> = Vec::new();
        let mut chosen = Vec::new();
        let mut rest = Vec::new();
        for &k in &order {
            if forms[k].iter().all(|&c| c == 0) {
                continue;
            }
            if echelon.len() < vars && insert_if_independent(field, &mut echelon, &forms[k]) {
                chosen.push(k);
            } else {
                rest.push(k);
            }
        }

        // complete to a basis with standard vectors
        let mut rows: Vec<Vec<u32>> = chosen.iter().map(|&k| forms[k].clone()).collect();
        for i in 0..vars {
            if rows.len() == vars {
                break;
            }
            let mut e = vec![0u32; vars];
            e[i] = 1;
            if insert_if_independent(field, &mut echelon, &e) {
                rows.push(e);
            }
        }
        let extra = if rest.is_empty() {
            Vec::new()
        } else {
            let mut m = DenseMatrix::zeros(field, vars, vars);
            for (i, row) in rows.iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            let inv = m.inverse().expect("rows form a basis");
            rest.iter()
                .map(|&k| {
                    let c = &forms[k];
                    let coeffs = (0..vars)
                        .map(|i| {
                            (0..vars).fold(0u32, |acc, l| field.add(acc, field.mul(c[l], inv.get(l, i))))
                        })
                        .collect();
                    (coeffs, exps[k])
                })
                .collect()
        };
        Self {
            field,
            vars,
            ci: chosen.iter().map(|&k| exps[k]).collect(),
            extra,
        }
    }

    fn bounds(&self, j: u32) -> Vec<u32> {
        (0..self.vars)
            .map(|i| self.ci.get(i).map_or(j, |&u| u - 1))
            .collect()
    }

    /// `dim` of the degree-`j` piece of the quotient.
    pub(crate) fn piece(&self, j: u32) -> Result<PieceDim> {
        let f = self.field;
        let bounds = self.bounds(j);
        // refuse before enumerating anything
        let cols = count_bounded(&bounds, j);
        let rows: u128 = self
            .extra
            .iter()
            .filter(|(_, u)| *u <= j)
            .map(|(_, u)| count_bounded(&bounds, j - u))
            .sum();
        if rows.saturating_mul(cols) > MAX_ENTRIES as u128 {
            return Err(Error::OutOfDeskScale(format!(
                "degree {j} needs a {rows} x {cols} matrix"
            )));
        }
        let standard = bounded_monomials(&bounds, j);
        let cols = standard.len();
        if cols == 0 {
            return Ok(PieceDim { dim: 0, saturated: true });
        }
        let mut blocks = Vec::new();
        let mut rows = 0usize;
        for (g, u) in &self.extra {
            if *u > j {
                continue;
            }
            let mult = bounded_monomials(&bounds, j - u);
            rows += mult.len();
            blocks.push((expand_power(f, g, *u, &bounds), mult));
        }
        if rows == 0 {
            return Ok(PieceDim {
                dim: cols as u64,
                saturated: true,
            });
        }
        let index = MonomialIndex::new(&bounds, &standard)?;
        let mut m = DenseMatrix::try_zeros(f, rows, cols)?;
        let mut r = 0;
        for (terms, mult) in &blocks {
            for mono in mult {
                let row = m.row_mut(r);
                for (e, c) in terms {
                    if mono.iter().zip(e).zip(&bounds).all(|((a, b), lim)| a + b <= *lim) {
                        let k = index.index_of_sum(mono, e);
                        row[k] = f.add(row[k], *c);
                    }
                }
                r += 1;
            }
        }
        let rank = m.rank();
        Ok(PieceDim {
            dim: (cols - rank) as u64,
            saturated: rank == rows.min(cols),
        })
    }
}

// Add `v` to the echelon basis if it is independent of it.
fn insert_if_independent(f: PrimeField, echelon: &mut Vec<(usize, Vec<u32>)>, v: &[u32]) -> bool {
    let mut w = v.to_vec();
    for (p, row) in echelon.iter() {
        let x = w[*p];
        if x != 0 {
            for (a, &b) in w.iter_mut().zip(row) {
                *a = f.sub(*a, f.mul(x, b));
            }
        }
    }
    let Some(p) = w.iter().position(|&x| x != 0) else {
        return false;
    };
    let s = f.inv(w[p]).expect("nonzero");
    for a in w.iter_mut() {
        *a = f.mul(*a, s);
    }
    // keep earlier rows reduced against the new pivot as well
    for (_, row) in echelon.iter_mut() {
        let x = row[p];
        if x != 0 {
            for (a, &b) in row.iter_mut().zip(&w) {
                *a = f.sub(*a, f.mul(x, b));
            }
        }
    }
    echelon.push((p, w));
    true
}

/// Terms `(e, coefficient)` of `g^u` with `e_i <= bounds[i]`.
fn expand_power(f: PrimeField, g: &[u32], u: u32, bounds: &[u32]) -> Vec<(Vec<u32>, u32)> {
    let (fact, inv_fact) = factorials(f, u);
    let mut powers: Vec<Vec<u32>> = Vec::with_capacity(g.len());
    for &c in g {
        let mut p = vec![1u32; u as usize + 1];
        for k in 1..=u as usize {
            p[k] = f.mul(p[k - 1], c);
        }
        powers.push(p);
    }
    let clipped: Vec<u32> = bounds.iter().map(|&b| b.min(u)).collect();
    bounded_monomials(&clipped, u)
        .into_iter()
        .filter_map(|e| {
            let mut c = fact[u as usize];
            for (i, &ei) in e.iter().enumerate() {
                c = f.mul(c, f.mul(inv_fact[ei as usize], powers[i][ei as usize]));
            }
            (c != 0).then_some((e, c))
        })
        .collect()
}

fn factorials(f: PrimeField, n: u32) -> (Vec<u32>, Vec<u32>) {
    let mut fact = vec![1u32; n as usize + 1];
    for k in 1..=n as usize {
        fact[k] = f.mul(fact[k - 1], k as u32);
    }
    let inv = fact.iter().map(|&x| f.inv(x).expect("n < p")).collect();
    (fact, inv)
}

/// Substitute `x_r = -(l_1 x_1 + .. + l_{r-1} x_{r-1}) / l_r` into each form.
pub(crate) fn restrict(f: PrimeField, forms: &[Vec<u32>], l: &[u32]) -> Vec<Vec<u32>> {
    let r = l.len();
    let lr_inv = f.inv(l[r - 1]).expect("last coefficient of l is nonzero");
    forms
        .iter()
        .map(|c| {
            let s = f.mul(c[r - 1], lr_inv);
            (0..r - 1).map(|i| f.sub(c[i], f.mul(s, l[i]))).collect()
        })
        .collect()
}

/// Rows `m * g_k^{u_k}` over all monomials `m`, as a dense matrix on the
/// degree-`j` monomial basis; `extra` rows are appended (used for `l S_{j-1}`).
fn full_matrix(
    f: PrimeField,
    vars: usize,
    forms: &[Vec<u32>],
    exps: &[u32],
    j: u32,
    extra: Option<&[u32]>,
) -> Result<DenseMatrix> {
    let basis = graded_basis(vars, j).monomials;
    let bounds = vec![j; vars];
    let index = MonomialIndex::new(&bounds, &basis)?;
    let mut blocks: Vec<(Vec<(Vec<u32>, u32)>, Vec<Vec<u32>>)> = forms
        .iter()
        .zip(exps)
        .filter(|(_, &u)| u <= j)
        .map(|(g, &u)| (expand_power(f, g, u, &bounds), graded_basis(vars, j - u).monomials))
        .collect();
    if let (Some(l), true) = (extra, j >= 1) {
        blocks.push((expand_power(f, l, 1, &bounds), graded_basis(vars, j - 1).monomials));
    }
    let rows = blocks.iter().map(|(_, m)| m.len()).sum();
    let mut m = DenseMatrix::try_zeros(f, rows, basis.len())?;
    let mut r = 0;
    for (terms, mult) in &blocks {
        for mono in mult {
            let row = m.row_mut(r);
            for (e, c) in terms {
                let k = index.index_of_sum(mono, e);
                row[k] = f.add(row[k], *c);
            }
            r += 1;
        }
    }
    Ok(m)
}

/// `dim I_j` straight from the spanning set `m * g_k^{u_k}`.
pub(crate) fn ideal_dim_dense(f: PrimeField, forms: &[Vec<u32>], exps: &[u32], j: u32) -> Result<u64> {
    let vars = forms.first().map_or(0, Vec::len);
    Ok(full_matrix(f, vars, forms, exps, j, None)?.rank() as u64)
}

/// Rank of multiplication by `l` from degree `j` to `j + 1`, as
/// `dim (I + l S)_{j+1} - dim I_{j+1}`.
pub(crate) fn mult_rank_dense(
    f: PrimeField,
    forms: &[Vec<u32>],
    exps: &[u32],
    l: &[u32],
    j: u32,
) -> Result<u64> {
    let vars = l.len();
    let with = full_matrix(f, vars, forms, exps, j + 1, Some(l))?.rank();
    let without = full_matrix(f, vars, forms, exps, j + 1, None)?.rank();
    Ok((with - without) as u64)
}
