use std::fmt::Debug;

use lefschetz::analyzer::{self, Status};
use lefschetz::hilbert::{self, stanley_hf_u64, verlinde_dim};
use lefschetz::oracle::{self, OracleConfig};
use lefschetz::surface::{self, DivisorClass};
use lefschetz::{gt, AlgebraSpec};
use num_bigint::BigInt;

pub const GROUPS: [&str; 5] = ["hilbert", "oracle", "surface", "analyzer", "gt"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Pass,
    /// Expected to fail; the string says why.
    KnownDeviation(&'static str),
}

pub type Check = fn(&OracleConfig) -> Result<(), String>;

pub struct Item {
    pub group: &'static str,
    pub name: &'static str,
    pub expect: Expectation,
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
}

pub fn run_item(item: &Item, cfg: &OracleConfig) -> Outcome {
    match (item.check)(cfg) {
        Ok(()) => Outcome::Pass,
        Err(m) => Outcome::Fail(m),
    }
}

fn eq<T: PartialEq + Debug>(got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn ok<T>(r: lefschetz::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn spec(r: u32, n: usize, t: u32) -> Result<AlgebraSpec, String> {
    ok(AlgebraSpec::uniform(r, n, t))
}

fn hf(r: u32, n: usize, t: u32, cfg: &OracleConfig) -> Result<Vec<u64>, String> {
    Ok(ok(oracle::algebra_hf(&spec(r, n, t)?, cfg, None))?.values)
}

fn item(group: &'static str, name: &'static str, check: Check) -> Item {
    Item {
        group,
        name,
        expect: Expectation::Pass,
        check,
    }
}

fn known(group: &'static str, name: &'static str, why: &'static str, check: Check) -> Item {
    Item {
        group,
        name,
        expect: Expectation::KnownDeviation(why),
        check,
    }
}

/// The regression items behind `verify-paper`.
pub fn manifest() -> Vec<Item> {
    vec![
        // closed forms
        item("hilbert", "A_4,3 degrees 3 and 5", |_| {
            eq((ok(stanley_hf_u64(4, 3, 3))?, ok(stanley_hf_u64(4, 3, 5))?), (15, 6))
        }),
        item("hilbert", "A_4,6 degrees 9 and 10", |_| {
            eq((ok(stanley_hf_u64(4, 6, 9))?, ok(stanley_hf_u64(4, 6, 10))?), (120, 111))
        }),
        item("hilbert", "A_8,2 degrees 3 and 4", |_| {
            eq((ok(stanley_hf_u64(8, 2, 3))?, ok(stanley_hf_u64(8, 2, 4))?), (48, 42))
        }),
        item("hilbert", "four-variable, five-form values", |_| {
            eq(
                (ok(hilbert::dvl_hf(4, 5))?, ok(hilbert::dvl_hf(5, 7))?, ok(hilbert::dvl_hf(3, 3))?),
                (36, 70, 15),
            )
        }),
        item("hilbert", "Verlinde dimensions", |_| {
            eq((ok(verlinde_dim(8, 2))?, ok(verlinde_dim(7, 2))?), (16, 1))
        }),
        item("hilbert", "closed form for quadrics", |_| {
            eq((hilbert::decruz_closed_form(8), hilbert::decruz_closed_form(7)), (16, 1))
        }),
        item("hilbert", "socle of B_7,2", |_| eq(ok(hilbert::socle_b_odd(7, 2))?, 4)),
        item("hilbert", "socle bounds for B_4,t", |_| {
            eq(
                [hilbert::dci_socle_bounds(2, 2), hilbert::dci_socle_bounds(2, 4), hilbert::dci_socle_bounds(2, 14)],
                [(2, 3), (6, 9), (26, 39)],
            )
        }),
        item("hilbert", "almost-CI margins", |_| {
            eq(
                (ok(hilbert::failr1_margin(2, 6))?, ok(hilbert::failr1_margin(4, 2))?),
                (BigInt::from(9), BigInt::from(6)),
            )
        }),
        // oracle
        item("oracle", "HF of five cubes in four variables", |c| eq(hf(4, 5, 3, c)?, vec![1, 4, 10, 15, 15, 6])),
        item("oracle", "HF of A_4,6", |c| {
            eq(hf(4, 5, 6, c)?, vec![1, 4, 10, 20, 35, 56, 79, 100, 115, 120, 111, 84, 45])
        }),
        item("oracle", "HF of nine cubes in five variables", |c| eq(hf(5, 9, 3, c)?, vec![1, 5, 15, 26, 25])),
        item("oracle", "eight forms of degree eight, degrees 8..15", |c| {
            let v = ok(oracle::algebra_hf(&spec(4, 8, 8)?, c, None))?;
            eq((8..=15).map(|j| v.get(j)).collect::<Vec<_>>(), vec![157, 188, 206, 204, 175, 112, 8, 0])
        }),
        known(
            "oracle",
            "HF of seven quadrics in six variables",
            "the algebra vanishes in degree 4; both oracle routes agree",
            |c| eq(hf(6, 7, 2, c)?, vec![1, 6, 14, 14, 5]),
        ),
        item("oracle", "power ideal of five cubes", |c| {
            let s = spec(4, 5, 3)?;
            eq(
                (ok(oracle::power_ideal_dim(&s, c, 2))?, ok(oracle::power_ideal_dim(&s, c, 3))?),
                (0, 5),
            )
        }),
        item("oracle", "power ideal of five cubes in three variables", |c| {
            eq(ok(oracle::power_ideal_dim(&spec(3, 5, 3)?, c, 4))?, 14)
        }),
        item("oracle", "multiplication ranks 33 and 64", |c| {
            let a = ok(oracle::mult_map_rank(&spec(4, 5, 4)?, c, 5))?.rank;
            let b = ok(oracle::mult_map_rank(&spec(4, 5, 5)?, c, 7))?.rank;
            eq((a, b), (33, 64))
        }),
        item("oracle", "six forms of degree 15: A_23 -> A_24", |c| {
            let m = ok(oracle::mult_map_rank(&spec(4, 6, 15)?, c, 23))?;
            eq((m.dim_source, m.dim_target, m.full_rank()), (1610, 1605, false))
        }),
        item("oracle", "five double points on plane quartics", |c| {
            eq(ok(oracle::fatpoint_h0h1(3, 4, &[2; 5], c))?, (1, 1))
        }),
        known(
            "oracle",
            "five triple points, degree 6, in four variables",
            "h1 = 3 holds for the plane divisor; in four variables h1 = 0",
            |c| eq(ok(oracle::fatpoint_h0h1(4, 6, &[3; 5], c))?.1, 3),
        ),
        item("oracle", "five triple points on plane sextics", |c| {
            eq(ok(oracle::fatpoint_h0h1(3, 6, &[3; 5], c))?, (1, 3))
        }),
        known(
            "oracle",
            "22 points on plane quintics",
            "22 general points impose independent conditions on quintics: (0, 1)",
            |c| eq(ok(oracle::fatpoint_h0h1(3, 5, &[1; 22], c))?, (1, 1)),
        ),
        item("oracle", "socle degrees", |c| {
            let b44 = ok(oracle::socle_degree_oracle(&spec(4, 6, 4)?, c))?;
            let b72 = ok(oracle::socle_degree_oracle(&spec(7, 9, 2)?, c))?;
            eq((b44, b72), (7, 4))
        }),
        // surface
        item("surface", "self-intersections", |_| {
            let c = ok(DivisorClass::new(2, vec![1; 5]))?;
            let mut b = vec![2; 8];
            b[0] = 3;
            let d = ok(DivisorClass::new(6, b))?;
            eq((c.self_intersection(), d.self_intersection()), (-1, -1))
        }),
        item("surface", "(-1)-curve counts", |_| {
            let counts: Vec<usize> = (1..=8)
                .map(|n| surface::minus_one_curves(n).map(|v| v.len()))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            eq(counts, vec![1, 3, 6, 10, 16, 27, 56, 240])
        }),
        item("surface", "effective classes", |_| {
            eq((ok(surface::uniform_effective(6, 12, 5))?, ok(surface::uniform_effective(8, 17, 6))?), (true, true))
        }),
        item("surface", "irregular classes", |_| {
            eq(
                (
                    ok(surface::uniform_irregular(5, 4, 2))?,
                    ok(surface::uniform_irregular(6, 2, 1))?,
                    ok(surface::uniform_irregular(8, 14, 5))?,
                ),
                (true, false, false),
            )
        }),
        item("surface", "injectivity bound, eight points", |_| eq(ok(surface::injectivity_bound(8, 8))?, 11)),
        item("surface", "worst (-1)-curve at the injectivity bound", |_| {
            let w = |n: usize, t: i64| {
                let m = surface::injectivity_bound(n, t)?;
                surface::worst_curve_value(n, t, m)
            };
            eq((ok(w(6, 6))?, ok(w(7, 9))?, ok(w(8, 10))?), (-2, -6, -12))
        }),
        item("surface", "expected h0", |_| {
            eq(
                (surface::expected_h0(3, 4, &[2; 5]), surface::expected_h0(4, 4, &[2; 5])),
                (BigInt::from(0), BigInt::from(15)),
            )
        }),
        // analyzer
        item("analyzer", "five cubes fail in degree 3", |c| {
            let r = ok(analyzer::cross_check(&spec(4, 5, 3)?, c))?;
            eq((r.agreement, r.failing_degrees()), (true, vec![3]))
        }),
        item("analyzer", "five cubes in three variables hold", |c| {
            let r = ok(analyzer::cross_check(&spec(3, 5, 3)?, c))?;
            eq((r.agreement, r.symbolic.status), (true, Status::Holds))
        }),
        item("analyzer", "seven quadrics fail in degree 2", |c| {
            let r = ok(analyzer::cross_check(&spec(6, 7, 2)?, c))?;
            eq((r.agreement, r.failing_degrees()), (true, vec![2]))
        }),
        item("analyzer", "four variables, five and six forms", |_| {
            let s = |n, t| analyzer::r4_threshold(n, t).map(|v| v.status).map_err(|e| e.to_string());
            eq((s(5, 3)?, s(6, 26)?, s(6, 20)?), (Status::Fails, Status::Holds, Status::Unknown))
        }),
        item("analyzer", "even almost complete intersections", |_| {
            let a = ok(analyzer::even_aci_failure(4, 6))?;
            let b = ok(analyzer::even_aci_failure(8, 2))?;
            eq((a.verdict.degree, b.verdict.degree, b.verdict.is_fails()), (Some(9), Some(3), true))
        }),
        item("analyzer", "nine quadrics in nine variables", |_| {
            eq(ok(analyzer::odd_aci_check(4, 2, None))?.verdict.status, Status::Fails)
        }),
        item("analyzer", "squares", |_| {
            let rows = ok(analyzer::squares_scan(9))?;
            let r8 = rows.iter().find(|r| r.r == 8).ok_or("no row for r=8")?;
            let r9 = rows.iter().find(|r| r.r == 9).ok_or("no row for r=9")?;
            eq((r8.margin_a.clone(), r9.margin_b.clone()), (BigInt::from(6), Some(BigInt::from(1))))
        }),
        // gt
        known(
            "gt",
            "pattern counts match the closed form",
            "no convention matches on the grid 2:2, 3:2, 2:3; see `gt resolve`",
            |_| match ok(gt::resolve_convention(&[(2, 2), (3, 2), (2, 3)]))? {
                gt::Resolution::Resolved(_) => Ok(()),
                gt::Resolution::Discrepancy(_) => Err("discrepancy".into()),
            },
        ),
        item("gt", "column-one injection", |_| eq(ok(gt::gtodd_injection_check(1, 5))?.holds(), true)),
    ]
}
