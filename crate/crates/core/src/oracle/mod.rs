//! Randomized exact computations over `F_p` standing in for generic forms
//! and general points.
//!
//! Every degree and every trial draws its own data from a seed derived from
//! `(cfg.seed, stream, degree, trial)`, so results do not depend on the
//! order in which degrees are evaluated. Dimensions of ideals and ranks are
//! maximized over trials; dimensions of quotients and `h^0` are minimized.

mod fatpoint;
mod monomials;
mod power;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use monomials::{bounded_monomials, graded_basis, GradedBasis};

use crate::algebra::AlgebraSpec;
use crate::error::{invalid, Error, Result};
use crate::exact::{binom_u64, PrimeField};
use crate::hilbert::{HilbertFunction, Provenance};
use crate::surface::expected_h0;
use power::{Adapted, PieceDim};

/// Field, seed and number of random trials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub field: PrimeField,
    pub seed: u64,
    pub trials: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            field: PrimeField::default(),
            seed: 0,
            trials: 3,
        }
    }
}

impl OracleConfig {
    pub fn new(field: PrimeField, seed: u64, trials: u32) -> Result<Self> {
        if trials == 0 {
            return invalid("at least one trial is required");
        }
        Ok(Self { field, seed, trials })
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_trials(self, trials: u32) -> Self {
        Self { trials, ..self }
    }

    fn rng(&self, stream: u64, degree: u64, trial: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(derive_seed(self.seed, stream, degree, trial))
    }
}

// stream tags
const FORMS: u64 = 1;
const IDEAL: u64 = 2;
const MULT: u64 = 3;
const POINTS: u64 = 4;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn derive_seed(seed: u64, stream: u64, degree: u64, trial: u64) -> u64 {
    splitmix(splitmix(splitmix(splitmix(seed) ^ stream) ^ degree) ^ trial)
}

/// A linear form `c_1 x_1 + .. + c_r x_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearForm {
    pub coefficients: Vec<u32>,
}

fn draw_vector(rng: &mut ChaCha8Rng, f: PrimeField, r: usize) -> Vec<u32> {
    loop {
        let v: Vec<u32> = (0..r).map(|_| rng.gen_range(0..f.modulus()) as u32).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

fn draw_forms(rng: &mut ChaCha8Rng, f: PrimeField, r: usize, n: usize) -> Vec<Vec<u32>> {
    (0..n).map(|_| draw_vector(rng, f, r)).collect()
}

// A multiplier whose last coefficient is nonzero, so it can be solved for x_r.
fn draw_multiplier(rng: &mut ChaCha8Rng, f: PrimeField, r: usize) -> Vec<u32> {
    let mut l = draw_vector(rng, f, r);
    while l[r - 1] == 0 {
        l[r - 1] = rng.gen_range(0..f.modulus()) as u32;
    }
    l
}

/// `n` nonzero linear forms in `r` variables drawn from `cfg.seed`.
pub fn random_forms(r: u32, n: usize, cfg: &OracleConfig) -> Vec<LinearForm> {
    let mut rng = cfg.rng(FORMS, 0, 0);
    draw_forms(&mut rng, cfg.field, r as usize, n)
        .into_iter()
        .map(|coefficients| LinearForm { coefficients })
        .collect()
}

fn total_monomials(r: u32, j: u32) -> Result<u64> {
    binom_u64(i64::from(r) - 1 + i64::from(j), i64::from(r) - 1)
        .ok_or_else(|| Error::OutOfDeskScale(format!("C({}, {}) overflows", r - 1 + j, r - 1)))
}

/// `dim_K (g_1^{u_1}, .., g_n^{u_n})_j` for the given forms.
pub fn power_ideal_dim_of(forms: &[LinearForm], exponents: &[u32], j: u32, field: PrimeField) -> Result<u64> {
    let r = check_forms(forms, exponents)?;
    let coeffs: Vec<Vec<u32>> = forms.iter().map(|g| g.coefficients.clone()).collect();
    let piece = Adapted::new(field, r, &coeffs, exponents).piece(j)?;
    Ok(total_monomials(r as u32, j)? - piece.dim)
}

/// Same as [`power_ideal_dim_of`], by elimination on the full spanning set
/// `m g_k^{u_k}` over all monomials `m`.
pub fn power_ideal_dim_dense(forms: &[LinearForm], exponents: &[u32], j: u32, field: PrimeField) -> Result<u64> {
    check_forms(forms, exponents)?;
    let coeffs: Vec<Vec<u32>> = forms.iter().map(|g| g.coefficients.clone()).collect();
    power::ideal_dim_dense(field, &coeffs, exponents, j)
}

fn check_forms(forms: &[LinearForm], exponents: &[u32]) -> Result<usize> {
    let Some(first) = forms.first() else {
        return invalid("no forms given");
    };
    let r = first.coefficients.len();
    if r == 0 || forms.iter().any(|g| g.coefficients.len() != r) {
        return invalid("forms must share a positive number of variables");
    }
    if exponents.len() != forms.len() {
        return invalid("one exponent per form is required");
    }
    Ok(r)
}

// dim A_j for trial data, minimized over trials.
fn quotient_piece(spec: &AlgebraSpec, cfg: &OracleConfig, j: u32) -> Result<u64> {
    let r = spec.r as usize;
    let mut best: Option<u64> = None;
    for trial in 0..cfg.trials {
        let mut rng = cfg.rng(IDEAL, u64::from(j), u64::from(trial));
        let forms = draw_forms(&mut rng, cfg.field, r, spec.n());
        let PieceDim { dim, saturated } = Adapted::new(cfg.field, r, &forms, &spec.exponents).piece(j)?;
        best = Some(best.map_or(dim, |b| b.min(dim)));
        if saturated {
            break;
        }
    }
    Ok(best.expect("at least one trial"))
}

/// `dim_K I_j` for generic forms, maximized over trials.
pub fn power_ideal_dim(spec: &AlgebraSpec, cfg: &OracleConfig, j: u32) -> Result<u64> {
    Ok(total_monomials(spec.r, j)? - quotient_piece(spec, cfg, j)?)
}

/// Hilbert function of the algebra for generic forms.
///
/// Degrees `0..=max_degree` are computed, stopping at the first vanishing
/// degree. Without `max_degree` the computation runs one past the
/// complete-intersection bound, where every Artinian piece is zero. A value
/// that is still positive and growing in the last computed degree is
/// reported as inconclusive.
pub fn algebra_hf(spec: &AlgebraSpec, cfg: &OracleConfig, max_degree: Option<u32>) -> Result<HilbertFunction> {
    let top = match (max_degree, spec.degree_bound()) {
        (Some(d), _) => d,
        (None, Some(b)) => u32::try_from(b + 1).map_err(|_| Error::OutOfDeskScale("degree bound".into()))?,
        (None, None) => {
            return Err(Error::Inconclusive(format!(
                "{spec}: fewer forms than variables, the quotient is not Artinian; pass a maximum degree"
            )))
        }
    };
    let mut values = Vec::new();
    for j in 0..=top {
        let v = quotient_piece(spec, cfg, j)?;
        values.push(v);
        if v == 0 && j >= 1 {
            break;
        }
    }
    if values.len() == top as usize + 1 {
        let last = values[top as usize];
        let prev = if top == 0 { 0 } else { values[top as usize - 1] };
        if last > 0 && last > prev {
            return Err(Error::Inconclusive(format!(
                "{spec}: dimension {last} in degree {top} is still growing"
            )));
        }
    }
    Ok(HilbertFunction::new(values, Provenance::Oracle, Some(spec.clone())))
}

/// Multiplication by a general linear form between consecutive degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeMap {
    pub degree: u32,
    pub dim_source: u64,
    pub dim_target: u64,
    pub rank: u64,
}

impl DegreeMap {
    pub fn injective(&self) -> bool {
        self.rank == self.dim_source
    }

    pub fn surjective(&self) -> bool {
        self.rank == self.dim_target
    }

    pub fn full_rank(&self) -> bool {
        self.rank == self.dim_source.min(self.dim_target)
    }

    pub fn kernel(&self) -> u64 {
        self.dim_source - self.rank
    }

    pub fn cokernel(&self) -> u64 {
        self.dim_target - self.rank
    }
}

/// Rank of `A_j -> A_{j+1}` under multiplication by a random linear form.
///
/// The rank is `dim A_{j+1} - dim (A / l A)_{j+1}`, where `A / l A` is the
/// quotient by the forms restricted to the hyperplane `l = 0`. Among trials
/// the one with the smallest dimensions, then the largest rank, is kept.
pub fn mult_map_rank(spec: &AlgebraSpec, cfg: &OracleConfig, j: u32) -> Result<DegreeMap> {
    let r = spec.r as usize;
    let f = cfg.field;
    let mut best: Option<DegreeMap> = None;
    for trial in 0..cfg.trials {
        let mut rng = cfg.rng(MULT, u64::from(j), u64::from(trial));
        let forms = draw_forms(&mut rng, f, r, spec.n());
        let l = draw_multiplier(&mut rng, f, r);
        let full = Adapted::new(f, r, &forms, &spec.exponents);
        let src = full.piece(j)?;
        let tgt = full.piece(j + 1)?;
        let restricted = Adapted::new(f, r - 1, &power::restrict(f, &forms, &l), &spec.exponents);
        let cut = restricted.piece(j + 1)?;
        let entry = DegreeMap {
            degree: j,
            dim_source: src.dim,
            dim_target: tgt.dim,
            rank: tgt.dim - cut.dim,
        };
        let better = best.map_or(true, |b| {
            (entry.dim_source, entry.dim_target, std::cmp::Reverse(entry.rank))
                < (b.dim_source, b.dim_target, std::cmp::Reverse(b.rank))
        });
        if better {
            best = Some(entry);
        }
        if src.saturated && tgt.saturated && entry.full_rank() {
            break;
        }
    }
    Ok(best.expect("at least one trial"))
}

/// Rank of `A_j -> A_{j+1}` computed from `dim (I + l S)_{j+1} - dim I_{j+1}`
/// for the given forms and multiplier.
pub fn mult_map_rank_dense(
    forms: &[LinearForm],
    exponents: &[u32],
    l: &LinearForm,
    j: u32,
    field: PrimeField,
) -> Result<u64> {
    let r = check_forms(forms, exponents)?;
    if l.coefficients.len() != r {
        return invalid("multiplier has the wrong number of variables");
    }
    let coeffs: Vec<Vec<u32>> = forms.iter().map(|g| g.coefficients.clone()).collect();
    power::mult_rank_dense(field, &coeffs, exponents, &l.coefficients, j)
}

/// Rank via restriction to `l = 0` for the given forms and multiplier.
pub fn mult_map_rank_of(
    forms: &[LinearForm],
    exponents: &[u32],
    l: &LinearForm,
    j: u32,
    field: PrimeField,
) -> Result<u64> {
    let r = check_forms(forms, exponents)?;
    if l.coefficients.len() != r || l.coefficients[r - 1] == 0 {
        return invalid("multiplier needs r coefficients with the last one nonzero");
    }
    let coeffs: Vec<Vec<u32>> = forms.iter().map(|g| g.coefficients.clone()).collect();
    let tgt = Adapted::new(field, r, &coeffs, exponents).piece(j + 1)?;
    let cut = Adapted::new(field, r - 1, &power::restrict(field, &coeffs, &l.coefficients), exponents)
        .piece(j + 1)?;
    Ok(tgt.dim - cut.dim)
}

/// Per-degree multiplication maps and the resulting verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub spec: AlgebraSpec,
    pub hf: HilbertFunction,
    pub maps: Vec<DegreeMap>,
}

impl OracleVerdict {
    pub fn holds(&self) -> bool {
        self.maps.iter().all(DegreeMap::full_rank)
    }

    /// Degrees `j` where `A_j -> A_{j+1}` is not of full rank.
    pub fn failing_degrees(&self) -> Vec<u32> {
        self.maps.iter().filter(|m| !m.full_rank()).map(|m| m.degree).collect()
    }

    pub fn map_at(&self, j: u32) -> Option<&DegreeMap> {
        self.maps.iter().find(|m| m.degree == j)
    }
}

/// Multiplication maps in every degree where source or target is nonzero.
pub fn wlp_verdict(spec: &AlgebraSpec, cfg: &OracleConfig) -> Result<OracleVerdict> {
    let bound = spec.degree_bound().ok_or_else(|| {
        Error::Inconclusive(format!("{spec}: fewer forms than variables, the quotient is not Artinian"))
    })?;
    let mut maps = Vec::new();
    let mut values = Vec::new();
    let mut j = 0u32;
    loop {
        let m = mult_map_rank(spec, cfg, j)?;
        values.push(m.dim_source);
        maps.push(m);
        if m.dim_target == 0 {
            break;
        }
        if u64::from(j) > bound {
            return Err(Error::Inconclusive(format!(
                "{spec}: degree {} is nonzero past the bound {bound}",
                j + 1
            )));
        }
        j += 1;
    }
    Ok(OracleVerdict {
        spec: spec.clone(),
        hf: HilbertFunction::new(values, Provenance::Oracle, Some(spec.clone())),
        maps,
    })
}

/// `h^0` and `h^1` for degree-`j` forms in `r` variables vanishing to order
/// `mults[i]` at random points; `h^0` is minimized over trials.
pub fn fatpoint_h0h1(r: u32, j: u32, mults: &[u32], cfg: &OracleConfig) -> Result<(u64, i64)> {
    if r == 0 {
        return invalid("need at least one variable");
    }
    let mut h0: Option<u64> = None;
    for trial in 0..cfg.trials {
        let mut rng = cfg.rng(POINTS, u64::from(j), u64::from(trial));
        let points = draw_forms(&mut rng, cfg.field, r as usize, mults.len());
        let m = fatpoint::conditions(cfg.field, &points, mults, j)?;
        let rank = m.rank();
        let v = (m.cols() - rank) as u64;
        h0 = Some(h0.map_or(v, |b| b.min(v)));
        if rank == m.rows().min(m.cols()) {
            break;
        }
    }
    let h0 = h0.expect("at least one trial");
    let mults_i: Vec<i64> = mults.iter().map(|&m| i64::from(m)).collect();
    let expected = expected_h0(r, i64::from(j), &mults_i)
        .to_i64()
        .ok_or_else(|| Error::OutOfDeskScale("expected dimension overflows".into()))?;
    Ok((h0, h0 as i64 - expected))
}

/// Last degree in which the algebra is nonzero.
///
/// The algebra is generated in degree one, so once a piece vanishes all
/// later pieces do; the degree is found by bisection below the
/// complete-intersection bound.
pub fn socle_degree_oracle(spec: &AlgebraSpec, cfg: &OracleConfig) -> Result<i64> {
    let bound = spec.degree_bound().ok_or_else(|| {
        Error::Inconclusive(format!("{spec}: fewer forms than variables, the quotient is not Artinian"))
    })?;
    let hi = u32::try_from(bound + 1).map_err(|_| Error::OutOfDeskScale("degree bound".into()))?;
    if quotient_piece(spec, cfg, hi)? > 0 {
        return Err(Error::Inconclusive(format!("{spec}: degree {hi} is nonzero")));
    }
    // invariant: piece(lo) > 0, piece(hi) = 0
    let (mut lo, mut hi) = (0u32, hi);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if quotient_piece(spec, cfg, mid)? > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(i64::from(lo))
}
