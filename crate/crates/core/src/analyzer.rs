//! Symbolic WLP classification from closed formulas and surface geometry,
//! and its comparison with the oracle.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::error::{invalid, Error, Result};
use crate::exact::{binom, binom_signed};
use crate::hilbert::{failr1_margin, socle_b_odd, stanley_hf, verlinde_dim};
use crate::oracle::{self, DegreeMap, OracleConfig};
use crate::surface::injectivity_bound;

/// Identifiers of the results a verdict relies on.
pub mod cite {
    pub const LOW_VARIABLES: &str = "wlp-at-most-three-variables";
    pub const COMPLETE_INTERSECTION: &str = "wlp-complete-intersection";
    pub const PEAK_MAPS: &str = "peak-maps";
    pub const EXCEPTIONAL_PEAKS: &str = "exceptional-peaks";
    pub const FIVE_FORMS: &str = "four-variables-five-forms";
    pub const SIX_FORMS: &str = "four-variables-six-forms";
    pub const FOUR_VARIABLE_MARGIN: &str = "four-variables-margin";
    pub const EVEN_ACI: &str = "even-almost-ci-failure";
    pub const ODD_ACI_VERLINDE: &str = "odd-almost-ci-verlinde";
    pub const ODD_ACI_SOCLE: &str = "odd-almost-ci-socle";
    pub const ORACLE: &str = "oracle";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

/// A WLP verdict with the degree `j` of a failing map `A_j -> A_{j+1}`
/// when one is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriState {
    pub status: Status,
    pub degree: Option<u32>,
    pub cause: String,
    pub citations: Vec<String>,
}

impl TriState {
    pub fn holds(cause: impl Into<String>, citation: &str) -> Self {
        Self::make(Status::Holds, None, cause, citation)
    }

    pub fn fails(degree: Option<u32>, cause: impl Into<String>, citation: &str) -> Self {
        Self::make(Status::Fails, degree, cause, citation)
    }

    pub fn unknown(cause: impl Into<String>, citation: &str) -> Self {
        Self::make(Status::Unknown, None, cause, citation)
    }

    fn make(status: Status, degree: Option<u32>, cause: impl Into<String>, citation: &str) -> Self {
        Self {
            status,
            degree,
            cause: cause.into(),
            citations: vec![citation.to_string()],
        }
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn is_unknown(&self) -> bool {
        self.status == Status::Unknown
    }
}

fn to_u32(v: i64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::OutOfDeskScale(format!("degree {v} out of range")))
}

/// What is known about one multiplication map; `None` means undecided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapStatus {
    /// Source degree `j` of `A_j -> A_{j+1}`.
    pub degree: u32,
    pub injective: Option<bool>,
    pub surjective: Option<bool>,
    pub full_rank: Option<bool>,
}

impl MapStatus {
    fn undecided(degree: u32) -> Self {
        Self {
            degree,
            injective: None,
            surjective: None,
            full_rank: None,
        }
    }
}

/// Status of the two maps around the generator degree `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeakStatus {
    pub r: u32,
    pub t: u32,
    pub n: usize,
    /// `A_{t-1} -> A_t`.
    pub lower: MapStatus,
    /// `A_t -> A_{t+1}`.
    pub upper: MapStatus,
    /// One of the four triples where `A_t -> A_{t+1}` drops rank.
    pub exceptional: bool,
    /// `n = C(r-2+t, r-2)`: `A_{t-1} -> A_t` is an isomorphism.
    pub twin_peaks: bool,
    /// Every map from degree `t - 1` on is surjective.
    pub surjective_from_peak: bool,
}

const EXCEPTIONAL: [(u32, u32, usize); 4] = [(4, 3, 5), (5, 3, 9), (6, 3, 14), (6, 2, 7)];

impl PeakStatus {
    pub fn verdict(&self) -> TriState {
        if self.exceptional {
            return TriState::fails(
                Some(self.t),
                format!("A_{} -> A_{} is neither injective nor surjective", self.t, self.t + 1),
                cite::EXCEPTIONAL_PEAKS,
            );
        }
        if self.surjective_from_peak {
            return TriState::holds(
                "injective below the peak, surjective from degree t - 1 on",
                cite::PEAK_MAPS,
            );
        }
        TriState::unknown("the peak maps have full rank; other degrees are undecided", cite::PEAK_MAPS)
    }
}

/// The maps `A_{t-1} -> A_t` and `A_t -> A_{t+1}` for `n` generic `t`-th
/// powers in `r >= 3` variables.
///
/// With `B = C(r-2+t, r-2)`, the lower map is injective iff `n <= B` and
/// surjective iff `n >= B`. Outside the four exceptional triples the upper
/// map has full rank; it is surjective iff `E <= 0` and injective when
/// `E >= 0`, where `E = C(r-1+t, r-2) - n(r-1)` is the expected dimension of
/// the cokernel. A non-Artinian quotient (`n < r`) leaves everything open.
pub fn classify_peak(r: u32, t: u32, n: usize) -> Result<PeakStatus> {
    if r < 3 || t < 1 {
        return invalid(format!("classify_peak needs r >= 3 and t >= 1, got r={r} t={t}"));
    }
    let mut status = PeakStatus {
        r,
        t,
        n,
        lower: MapStatus::undecided(t - 1),
        upper: MapStatus::undecided(t),
        exceptional: false,
        twin_peaks: false,
        surjective_from_peak: false,
    };
    if n < r as usize {
        return Ok(status);
    }
    let (r_, t_) = (i64::from(r), i64::from(t));
    let b = binom(r_ - 2 + t_, r_ - 2);
    let nb = BigInt::from(n);
    let b = BigInt::from(b);
    status.lower = MapStatus {
        degree: t - 1,
        injective: Some(nb <= b),
        surjective: Some(nb >= b),
        full_rank: Some(true),
    };
    status.twin_peaks = nb == b;
    status.surjective_from_peak = nb >= b;
    status.exceptional = EXCEPTIONAL.contains(&(r, t, n));
    status.upper = if status.exceptional {
        MapStatus {
            degree: t,
            injective: Some(false),
            surjective: Some(false),
            full_rank: Some(false),
        }
    } else {
        let e = binom_signed(r_ - 1 + t_, r_ - 2) - BigInt::from(n) * (r_ - 1);
        MapStatus {
            degree: t,
            injective: (!e.is_negative()).then_some(true),
            surjective: Some(!e.is_positive()),
            full_rank: Some(true),
        }
    };
    Ok(status)
}

/// `dim A_m - dim A_{m-1}` for `n` generic `t`-th powers in four variables
/// at `m = injectivity_bound(n, t)`, assuming both degrees have the
/// expected dimension.
pub fn four_variable_margin(n: usize, t: u32) -> Result<BigInt> {
    let t_ = i64::from(t);
    let m = injectivity_bound(n, t_)?;
    let nn = BigInt::from(n);
    Ok(binom_signed(m + 3, 3) - &nn * binom_signed(m - t_ + 3, 3) - binom_signed(m + 2, 3)
        + &nn * binom_signed(m - t_ + 2, 3))
}

/// Smallest `T` such that [`four_variable_margin`] is nonnegative for every
/// `T <= t <= limit`; `None` if it is negative at `limit`.
pub fn margin_threshold(n: usize, limit: u32) -> Result<Option<u32>> {
    let mut first = None;
    for t in (3..=limit).rev() {
        if four_variable_margin(n, t)?.is_negative() {
            break;
        }
        first = Some(t);
    }
    Ok(first)
}

/// WLP for `n in 5..=8` generic `t`-th powers in four variables.
///
/// Failing degrees are `j = m - 1` where `m` is the injectivity bound.
pub fn r4_threshold(n: usize, t: u32) -> Result<TriState> {
    if !(5..=8).contains(&n) {
        return invalid(format!("r4_threshold needs n in 5..=8, got {n}"));
    }
    if t < 1 {
        return invalid("t must be positive");
    }
    let degree = || -> Result<Option<u32>> { Ok(Some(to_u32(injectivity_bound(n, i64::from(t))? - 1)?)) };
    let fail_from = [3, 27, 140, 704][n - 5];
    Ok(match n {
        5 if t >= 3 => TriState::fails(degree()?, "kernel from a conic, dimensions do not drop", cite::FIVE_FORMS),
        6 if t <= 14 || t == 26 => TriState::holds("every map has full rank", cite::SIX_FORMS),
        6 if t == 15 || t >= 48 => {
            TriState::fails(degree()?, "kernel from a conic, dimensions do not drop", cite::SIX_FORMS)
        }
        6 if t >= 27 => TriState::fails(None, "case analysis; failing degree not recorded", cite::SIX_FORMS),
        7 | 8 if t >= fail_from => TriState::fails(
            degree()?,
            "kernel from a (-1)-curve, dimensions do not drop",
            cite::FOUR_VARIABLE_MARGIN,
        ),
        _ => TriState::unknown(format!("no result for n={n} t={t}"), cite::FOUR_VARIABLE_MARGIN),
    })
}

/// Failure of `(A_{2k,t})_c -> (A_{2k,t})_{c+1}` at `c = k(t-1) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenAciReport {
    pub r: u32,
    pub t: u32,
    pub degree: u32,
    /// `dim A_c - dim A_{c+1}`.
    pub margin: BigInt,
    pub verdict: TriState,
}

/// `r = 2k`, `k >= 2`, `t >= 2`. The map into degree `c + 1` is never
/// surjective (the next algebra `B_{2k-1,t}` is nonzero there), so a
/// nonnegative margin rules out injectivity as well.
pub fn even_aci_failure(r: u32, t: u32) -> Result<EvenAciReport> {
    if r % 2 != 0 || r < 4 {
        return invalid(format!("even_aci_failure needs even r >= 4, got {r}"));
    }
    let k = r / 2;
    let margin = failr1_margin(k, t)?;
    let c = k * (t - 1) - 1;
    // nonzero cokernel needs degree c + 1 inside B_{2k-1,t}
    let obstruction = socle_b_odd(2 * k - 1, t)? >= u64::from(c + 1);
    let verdict = if !margin.is_negative() && obstruction {
        TriState::fails(Some(c), format!("margin {margin} >= 0 with a nonzero cokernel"), cite::EVEN_ACI)
    } else {
        TriState::unknown(format!("margin {margin} < 0"), cite::EVEN_ACI)
    };
    Ok(EvenAciReport {
        r,
        t,
        degree: c,
        margin,
        verdict,
    })
}

/// The two criteria for `A_{2k+1,t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddAciReport {
    pub k: u32,
    pub t: u32,
    /// `c` with `c + 1 = k(t-1)`.
    pub degree_a: u32,
    /// `dim A_c + dim (B_{2k,t})_{c+1} - dim A_{c+1}`; fails when positive.
    pub margin_a: BigInt,
    /// `c` with `c + 1 = (k+1)(t-1)`, when `t > 2k + 2`.
    pub degree_b: Option<u32>,
    /// Oracle socle degree of `B_{2k,t}`, when computed.
    pub socle_b: Option<i64>,
    pub verdict: TriState,
}

/// `r = 2k + 1`, `t >= 2`. The second criterion needs the socle degree of
/// `B_{2k,t}`, which only the oracle supplies; pass `None` to skip it.
pub fn odd_aci_check(k: u32, t: u32, oracle_cfg: Option<&OracleConfig>) -> Result<OddAciReport> {
    if k < 1 || t < 2 {
        return invalid(format!("odd_aci_check needs k >= 1 and t >= 2, got k={k} t={t}"));
    }
    let r = 2 * k + 1;
    let top = i64::from(k) * i64::from(t - 1);
    let middle = BigInt::from(verlinde_dim(2 * k, t)?);
    let margin_a = BigInt::from(stanley_hf(r, t, top - 1)) + middle - BigInt::from(stanley_hf(r, t, top));
    let degree_a = to_u32(top - 1)?;

    let mut degree_b = None;
    let mut socle_b = None;
    if t > 2 * k + 2 {
        let c1 = i64::from(k + 1) * i64::from(t - 1);
        degree_b = Some(to_u32(c1 - 1)?);
        if let Some(cfg) = oracle_cfg {
            let spec = AlgebraSpec::b(2 * k, t)?;
            socle_b = match oracle::socle_degree_oracle(&spec, cfg) {
                Ok(s) => Some(s),
                Err(Error::OutOfDeskScale(_) | Error::Inconclusive(_)) => None,
                Err(e) => return Err(e),
            };
        }
    }
    let verdict = if margin_a.is_positive() {
        TriState::fails(
            Some(degree_a),
            format!("dimension excess {margin_a} with a nonzero cokernel"),
            cite::ODD_ACI_VERLINDE,
        )
    } else if let (Some(d), Some(s)) = (degree_b, socle_b) {
        if s == i64::from(d) + 1 {
            TriState::fails(Some(d), "socle of the next algebra sits in degree c + 1", cite::ODD_ACI_SOCLE)
        } else {
            TriState::unknown(format!("socle degree {s} is not {}", d + 1), cite::ODD_ACI_SOCLE)
        }
    } else {
        TriState::unknown(format!("dimension excess {margin_a} is not positive"), cite::ODD_ACI_VERLINDE)
    };
    Ok(OddAciReport {
        k,
        t,
        degree_a,
        margin_a,
        degree_b,
        socle_b,
        verdict,
    })
}

/// One row of [`squares_scan`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquaresRow {
    pub r: u32,
    pub k: u32,
    /// `dim A_{k-1} - dim A_k` for `A = A_{r,2}`.
    pub margin_a: BigInt,
    /// `margin_a + 2^k`, odd `r` only.
    pub margin_b: Option<BigInt>,
    pub verdict: TriState,
}

/// Almost complete intersections of squares, `A_{r,2}` for `2 <= r <= r_max`.
pub fn squares_scan(r_max: u32) -> Result<Vec<SquaresRow>> {
    if r_max > 64 {
        return invalid(format!("squares_scan supports r_max <= 64, got {r_max}"));
    }
    (2..=r_max)
        .map(|r| {
            let k = r / 2;
            let ki = i64::from(k);
            let margin_a = BigInt::from(stanley_hf(r, 2, ki - 1)) - BigInt::from(stanley_hf(r, 2, ki));
            let margin_b = (r % 2 == 1).then(|| &margin_a + (BigInt::from(1u8) << k));
            let verdict = if r <= 3 {
                TriState::holds("at most three variables", cite::LOW_VARIABLES)
            } else if r % 2 == 0 {
                if !margin_a.is_negative() {
                    TriState::fails(Some(k - 1), format!("margin {margin_a} >= 0"), cite::EVEN_ACI)
                } else {
                    TriState::unknown(format!("margin {margin_a} < 0"), cite::EVEN_ACI)
                }
            } else {
                let mb = margin_b.as_ref().expect("odd r");
                if mb.is_positive() {
                    TriState::fails(Some(k - 1), format!("margin {mb} > 0"), cite::ODD_ACI_VERLINDE)
                } else {
                    TriState::unknown(format!("margin {mb} <= 0"), cite::ODD_ACI_VERLINDE)
                }
            };
            Ok(SquaresRow {
                r,
                k,
                margin_a,
                margin_b,
                verdict,
            })
        })
        .collect()
}

/// Symbolic and oracle verdicts for one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlpReport {
    pub spec: AlgebraSpec,
    /// Oracle maps `A_j -> A_{j+1}`; empty when the oracle did not run.
    pub entries: Vec<DegreeMap>,
    pub symbolic: TriState,
    pub oracle: TriState,
    pub citations: Vec<String>,
    pub agreement: bool,
    pub diagnostics: Vec<String>,
}

impl WlpReport {
    pub fn failing_degrees(&self) -> Vec<u32> {
        self.entries.iter().filter(|m| !m.full_rank()).map(|m| m.degree).collect()
    }
}

/// Every symbolic verdict that applies to `spec`.
pub fn symbolic_verdicts(spec: &AlgebraSpec, cfg: Option<&OracleConfig>) -> Result<Vec<TriState>> {
    let r = spec.r;
    let n = spec.n();
    let mut out = Vec::new();
    if r <= 3 {
        out.push(TriState::holds("at most three variables", cite::LOW_VARIABLES));
    }
    if n == r as usize {
        out.push(TriState::holds("complete intersection", cite::COMPLETE_INTERSECTION));
    }
    let Some(t) = spec.uniform_exponent() else {
        return Ok(out);
    };
    if r >= 3 && n >= r as usize {
        let peak = classify_peak(r, t, n)?;
        let v = peak.verdict();
        if !v.is_unknown() {
            out.push(v);
        }
    }
    if r == 4 && (5..=8).contains(&n) {
        out.push(r4_threshold(n, t)?);
    }
    if n == r as usize + 1 && t >= 2 {
        if r % 2 == 0 && r >= 4 {
            out.push(even_aci_failure(r, t)?.verdict);
        } else if r % 2 == 1 && r >= 5 {
            out.push(odd_aci_check((r - 1) / 2, t, cfg)?.verdict);
        }
    }
    Ok(out)
}

// Fold symbolic verdicts; conflicting decisive verdicts are an internal error.
fn combine(verdicts: &[TriState]) -> Result<TriState> {
    let fails: Vec<&TriState> = verdicts.iter().filter(|v| v.is_fails()).collect();
    let holds: Vec<&TriState> = verdicts.iter().filter(|v| v.is_holds()).collect();
    if !fails.is_empty() && !holds.is_empty() {
        return Err(Error::Inconclusive(format!(
            "symbolic results disagree: {:?} vs {:?}",
            fails[0].citations, holds[0].citations
        )));
    }
    let chosen: Vec<&TriState> = if !fails.is_empty() { fails } else { holds };
    let Some(first) = chosen.first() else {
        let mut v = TriState::unknown("no symbolic result applies", cite::PEAK_MAPS);
        v.citations = verdicts.iter().flat_map(|v| v.citations.clone()).collect();
        return Ok(v);
    };
    let mut v = (*first).clone();
    if v.degree.is_none() {
        v.degree = chosen.iter().find_map(|c| c.degree);
    }
    v.citations = chosen.iter().flat_map(|c| c.citations.clone()).collect();
    v.citations.dedup();
    Ok(v)
}

/// Run the symbolic classifiers and the oracle on `spec` and compare.
///
/// A symbolic `Fails` agrees with the oracle only if the oracle finds the
/// map in the claimed degree (when given) not of full rank. Oracle size
/// limits leave the oracle verdict unknown.
pub fn cross_check(spec: &AlgebraSpec, cfg: &OracleConfig) -> Result<WlpReport> {
    let verdicts = symbolic_verdicts(spec, Some(cfg))?;
    let symbolic = combine(&verdicts)?;
    let (entries, oracle_verdict) = match oracle::wlp_verdict(spec, cfg) {
        Ok(v) => {
            let tri = match v.failing_degrees().first() {
                Some(&d) => TriState::fails(Some(d), "map not of full rank", cite::ORACLE),
                None => TriState::holds("every map has full rank", cite::ORACLE),
            };
            (v.maps, tri)
        }
        Err(e @ (Error::OutOfDeskScale(_) | Error::Inconclusive(_))) => {
            (Vec::new(), TriState::unknown(e.to_string(), cite::ORACLE))
        }
        Err(e) => return Err(e),
    };

    let mut diagnostics = Vec::new();
    match (symbolic.status, oracle_verdict.status) {
        (Status::Holds, Status::Fails) | (Status::Fails, Status::Holds) => diagnostics.push(format!(
            "{spec}: symbolic {:?} ({}) vs oracle {:?} ({})",
            symbolic.status, symbolic.cause, oracle_verdict.status, oracle_verdict.cause
        )),
        (Status::Fails, Status::Fails) => {
            if let Some(d) = symbolic.degree {
                match entries.iter().find(|m| m.degree == d) {
                    Some(m) if m.full_rank() => diagnostics.push(format!(
                        "{spec}: symbolic failure in degree {d}, oracle rank {} is full ({} -> {})",
                        m.rank, m.dim_source, m.dim_target
                    )),
                    Some(_) => {}
                    None => diagnostics.push(format!("{spec}: oracle has no map in degree {d}")),
                }
            }
        }
        _ => {}
    }
    let mut citations = symbolic.citations.clone();
    citations.push(cite::ORACLE.to_string());
    Ok(WlpReport {
        spec: spec.clone(),
        entries,
        symbolic,
        oracle: oracle_verdict,
        citations,
        agreement: diagnostics.is_empty(),
        diagnostics,
    })
}

/// Which of the two kernel readings a degree satisfies; see
/// [`kernel_from_h1`].
///
/// For `m >= t`, with `D_m` and `D'_m` the fat-point divisors of
/// multiplicity `m - t + 1` in `r` and `r - 1` variables,
/// `dim ker(A_{m-1} -> A_m) = h1(D'_m) - h1(D_m) + h1(D_{m-1})`, where
/// `h1(D_{t-1})` is taken as `0`.
pub fn kernel_from_h1(r: u32, n: usize, t: u32, m: u32, cfg: &OracleConfig) -> Result<i64> {
    if m < t || r < 2 {
        return invalid("kernel_from_h1 needs m >= t and r >= 2");
    }
    let h1 = |vars: u32, j: u32| -> Result<i64> {
        if j < t {
            return Ok(0);
        }
        Ok(oracle::fatpoint_h0h1(vars, j, &vec![j - t + 1; n], cfg)?.1)
    };
    Ok(h1(r - 1, m)? - h1(r, m)? + h1(r, m - 1)?)
}
