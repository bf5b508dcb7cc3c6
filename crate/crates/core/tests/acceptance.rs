//! Acceptance run: one line per criterion, then a nonzero exit if any
//! result is unexpected. Criteria that cannot be met as stated are listed in
//! `KNOWN` together with the exact failure they are expected to produce.

use std::time::{Duration, Instant};

use lefschetz::analyzer::{even_aci_failure, four_variable_margin, margin_threshold};
use lefschetz::exact::BigCount;
use lefschetz::gt::{count, enumerate, resolve_convention, Convention, GtQuery, Resolution};
use lefschetz::hilbert::{
    decruz_closed_form, dci_socle_bounds, eulerian_alpha, stanley_hf, verlinde_dim,
};
use lefschetz::oracle::{
    algebra_hf, fatpoint_h0h1, mult_map_rank, socle_degree_oracle, OracleConfig,
};
use lefschetz::surface::{
    injectivity_bound, intersect, minus_one_curves, uniform_irregular, worst_curve_value,
    DivisorClass,
};
use lefschetz::{AlgebraSpec, Error};
use num_bigint::BigInt;

type Check = Result<(), Vec<String>>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn(&OracleConfig) -> Check,
}

/// Criteria expected to fail, with the failure message they must produce.
const KNOWN: &[(u32, &[&str])] = &[(
    2,
    // Seven squares in six variables vanish in degree 4; two independent
    // rank routes and the Boolean-algebra isomorphism l^2: A_2 -> A_4 agree.
    &["r=6 n=7 t=2: Hilbert function [1, 6, 14, 14], stated [1, 6, 14, 14, 5]"],
)];

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn spec(r: u32, n: usize, t: u32) -> AlgebraSpec {
    AlgebraSpec::uniform(r, n, t).unwrap()
}

fn expect<T: PartialEq + std::fmt::Debug>(errs: &mut Vec<String>, what: impl std::fmt::Display, got: T, want: T) {
    if got != want {
        errs.push(format!("{what}: got {got:?}, want {want:?}"));
    }
}

fn done(errs: Vec<String>) -> Check {
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

fn c1(cfg: &OracleConfig) -> Check {
    let mut e = Vec::new();
    let s = spec(4, 5, 3);
    expect(&mut e, "HF", algebra_hf(&s, cfg, None).unwrap().values, vec![1, 4, 10, 15, 15, 6]);
    let m = mult_map_rank(&s, cfg, 3).unwrap();
    expect(&mut e, "rank A_3 -> A_4", m.rank, 14);
    expect(&mut e, "full rank", m.full_rank(), false);
    done(e)
}

fn c2(cfg: &OracleConfig) -> Check {
    let mut e = Vec::new();
    let cases: [(u32, u32, usize, &[u64]); 4] = [
        (4, 3, 5, &[1, 4, 10, 15, 15, 6]),
        (5, 3, 9, &[1, 5, 15, 26, 25]),
        (6, 3, 14, &[1, 6, 21, 42, 42]),
        (6, 2, 7, &[1, 6, 14, 14, 5]),
    ];
    for (r, t, n, hf) in cases {
        let s = spec(r, n, t);
        let got = algebra_hf(&s, cfg, None).unwrap().values;
        if got != hf {
            e.push(format!("{s}: Hilbert function {got:?}, stated {hf:?}"));
        }
        let m = mult_map_rank(&s, cfg, t).unwrap();
        if m.full_rank() {
            e.push(format!("{s}: A_{t} -> A_{} has full rank {}", t + 1, m.rank));
        }
    }
    for (r, t, n) in [(4u32, 4u32, 5usize), (5, 2, 9), (6, 3, 15)] {
        let s = spec(r, n, t);
        let m = mult_map_rank(&s, cfg, t).unwrap();
        if !m.full_rank() {
            e.push(format!("{s}: A_{t} -> A_{} not of full rank ({m:?})", t + 1));
        }
    }
    done(e)
}

fn c3(_: &OracleConfig) -> Check {
    let mut e = Vec::new();
    let want = [1usize, 3, 6, 10, 16, 27, 56, 240];
    for n in 1..=8usize {
        let curves = minus_one_curves(n).unwrap();
        expect(&mut e, format!("count n={n}"), curves.len(), want[n - 1]);
        let k = DivisorClass::canonical(n).unwrap();
        for c in &curves {
            if c.self_intersection() != -1 || intersect(&k, c).unwrap() != -1 {
                e.push(format!("n={n}: {c} fails E^2 = K.E = -1"));
            }
        }
    }
    done(e)
}

fn c4(cfg: &OracleConfig) -> Check {
    let mut e = Vec::new();
    for n in [2usize, 3, 5, 6, 7, 8] {
        for d in 0..=30i64 {
            for m in 0..=12i64 {
                let sym = uniform_irregular(n, d, m).unwrap();
                let (_, h1) = fatpoint_h0h1(3, d as u32, &vec![m as u32; n], cfg).unwrap();
                if sym != (h1 > 0) {
                    e.push(format!("n={n} d={d} m={m}: criterion {sym}, oracle h1 {h1}"));
                }
            }
        }
    }
    done(e)
}

fn c5(cfg: &OracleConfig) -> Check {
    let mut e = Vec::new();
    expect(&mut e, "injectivity_bound(8, 8)", injectivity_bound(8, 8).unwrap(), 11);
    let s = spec(4, 8, 8);
    for m in 1..=10u32 {
        let map = mult_map_rank(&s, cfg, m - 1).unwrap();
        if !map.injective() {
            e.push(format!("A_{} -> A_{m} not injective: {map:?}", m - 1));
        }
    }
    let map = mult_map_rank(&s, cfg, 10).unwrap();
    if !map.surjective() {
        e.push(format!("A_10 -> A_11 not surjective: {map:?}"));
    }
    let hf = algebra_hf(&s, cfg, None).unwrap();
    let tail: Vec<u64> = (8..=15).map(|i| hf.get(i)).collect();
    expect(&mut e, "HF in degrees 8..15", tail, vec![157, 188, 206, 204, 175, 112, 8, 0]);
    done(e)
}

fn c6(cfg: &OracleConfig) -> Check {
    let mut e = Vec::new();
    expect(&mut e, "rank t=4 j=5", mult_map_rank(&spec(4, 5, 4), cfg, 5).unwrap().rank, 33);
    expect(&mut e, "rank t=5 j=7", mult_map_rank(&spec(4, 5, 5), cfg, 7).unwrap().rank, 64);
    // the kernels live on the plane: multiplicities m - t + 1 at five points
    expect(&mut e, "h1(D_6), t=4", fatpoint_h0h1(3, 6, &[3; 5], cfg).unwrap().1, 3);
    expect(&mut e, "h1(D_8), t=5", fatpoint_h0h1(3, 8, &[4; 5], cfg).unwrap().1, 6);
    done(e)
}

fn c7(cfg: &OracleConfig) -> Check {
    let mut e = Vec::new();
    let rep = even_aci_failure(4, 6).unwrap();
    expect(&mut e, "degree", rep.degree, 9);
    expect(&mut e, "margin", rep.margin.clone(), BigInt::from(9));
    expect(&mut e, "verdict fails", rep.verdict.is_fails(), true);
    expect(&mut e, "dim A_9", stanley_hf(4, 6, 9), BigCount::from(120u32));
    expect(&mut e, "dim A_10", stanley_hf(4, 6, 10), BigCount::from(111u32));
    let s = AlgebraSpec::a(4, 6).unwrap();
    for j in [8, 9] {
        let m = mult_map_rank(&s, cfg, j).unwrap();
        if m.full_rank() {
            e.push(format!("A_{j} -> A_{} has full rank: {m:?}", j + 1));
        }
    }
    done(e)
}

fn c8(_: &OracleConfig) -> Check {
    let mut e = Vec::new();
    expect(&mut e, "verlinde(8, 2)", verlinde_dim(8, 2).unwrap(), 16);
    expect(&mut e, "verlinde(7, 2)", verlinde_dim(7, 2).unwrap(), 1);
    for (r, i, v) in [(8, 3, 48u32), (8, 4, 42), (9, 3, 75), (9, 4, 90)] {
        expect(&mut e, format!("stanley_hf({r}, 2, {i})"), stanley_hf(r, 2, i), BigCount::from(v));
    }
    for s in 1..=12 {
        expect(&mut e, format!("s={s}"), verlinde_dim(s, 2).unwrap(), decruz_closed_form(s));
    }
    done(e)
}

fn c9(cfg: &OracleConfig) -> Check {
    let mut e = Vec::new();
    let table = [2i64, 4, 7, 9, 12, 14, 16, 19, 21, 24, 26, 28, 31];
    for t in 2..=14u32 {
        let sd = socle_degree_oracle(&AlgebraSpec::b(4, t).unwrap(), cfg).unwrap();
        if let Some(&want) = table.get(t as usize - 2) {
            expect(&mut e, format!("socle B_4,{t}"), sd, want);
        }
        let (lo, hi) = dci_socle_bounds(2, t);
        if !(lo as i64..=hi as i64).contains(&sd) {
            e.push(format!("socle B_4,{t} = {sd} outside [{lo}, {hi}]"));
        }
    }
    done(e)
}

fn c10(_: &OracleConfig) -> Check {
    let mut e = Vec::new();
    for (k, v) in [(2, 1), (3, 10), (4, 245)] {
        expect(&mut e, format!("alpha({k})"), eulerian_alpha(k).unwrap(), BigInt::from(v));
    }
    for k in 2..=50 {
        let a = eulerian_alpha(k).unwrap();
        if a <= BigInt::from(0) {
            e.push(format!("alpha({k}) = {a}"));
        }
    }
    done(e)
}

fn c11(cfg: &OracleConfig) -> Check {
    let mut e = Vec::new();
    for r in 1..=4u32 {
        for t in 1..=4u32 {
            for n in r as usize..=6 {
                let s = spec(r, n, t);
                let hf = algebra_hf(&s, cfg, None).unwrap();
                for j in t..=hf.socle_degree().max(0) as u32 {
                    let (h0, _) = fatpoint_h0h1(r, j, &vec![j - t + 1; n], cfg).unwrap();
                    if h0 != hf.get(i64::from(j)) {
                        e.push(format!("{s} j={j}: dim A_j {} vs h0 {h0}", hf.get(i64::from(j))));
                    }
                }
            }
        }
    }
    done(e)
}

fn c12(_: &OracleConfig) -> Check {
    let mut e = Vec::new();
    let grid = [(2, 2), (3, 2), (2, 3)];
    match resolve_convention(&grid).unwrap() {
        Resolution::Resolved(c) => {
            // acceptable outcome; record which
            println!("    resolved to {}", c.name());
        }
        Resolution::Discrepancy(outcomes) => {
            let stated = outcomes
                .iter()
                .find(|o| o.convention == Convention::PaperAsStated)
                .and_then(|o| o.first_failure.clone());
            match stated {
                Some(m) => {
                    expect(&mut e, "first failure cell", (m.r, m.t, m.i), (2, 2, 2));
                    expect(&mut e, "count", m.count, BigCount::from(3u32));
                    expect(&mut e, "expected", m.expected, BigCount::from(0u32));
                }
                None => e.push("the stated convention has no mismatch".into()),
            }
        }
    }
    for (r, t) in grid {
        for conv in Convention::ALL {
            for i in 0..=((r as i64 + 1) * t as i64 + 1) {
                let q = GtQuery::uniform(r, t, i, conv).unwrap();
                let n = enumerate(&q).count();
                if count(&q) != BigCount::from(n) {
                    e.push(format!("{} r={r} t={t} i={i}: count {} vs {n} patterns", conv.name(), count(&q)));
                }
            }
        }
    }
    done(e)
}

fn c13(cfg: &OracleConfig) -> Check {
    let mut e = Vec::new();
    // margin formula against oracle dimensions in the reachable range
    for n in [7usize, 8] {
        for t in 3..=6u32 {
            let s = spec(4, n, t);
            let m = injectivity_bound(n, i64::from(t)).unwrap() as u32;
            let hf = algebra_hf(&s, cfg, None).unwrap();
            let diff = BigInt::from(hf.get(i64::from(m))) - BigInt::from(hf.get(i64::from(m) - 1));
            expect(&mut e, format!("n={n} t={t} m={m} margin"), four_variable_margin(n, t).unwrap(), diff);
            // the worst (-1)-curve predicts a kernel exactly when the oracle sees one
            let w = worst_curve_value(n, i64::from(t), i64::from(m)).unwrap();
            let (_, h1) = fatpoint_h0h1(3, m, &vec![m - t + 1; n], cfg).unwrap();
            expect(&mut e, format!("n={n} t={t} m={m}: curve value {w}, h1 {h1}"), w <= -2, h1 > 0);
        }
    }
    // residue tables, evaluated at the injectivity bound
    let n7 = [-5i64, -2, -4, -6, -3];
    let n8 = [-6i64, -11, -5, -10, -4, -9, -3, -8, -2, -7, -12];
    for t in 3..=6i64 {
        let m7 = injectivity_bound(7, t).unwrap();
        expect(&mut e, format!("n=7 t={t} table"), worst_curve_value(7, t, m7).unwrap(), n7[((t - 1) % 5) as usize]);
        let m8 = injectivity_bound(8, t).unwrap();
        expect(&mut e, format!("n=8 t={t} table"), worst_curve_value(8, t, m8).unwrap(), n8[(t % 11) as usize]);
    }
    // thresholds come from the formula alone
    expect(&mut e, "threshold n=7", margin_threshold(7, 400).unwrap(), Some(140));
    expect(&mut e, "threshold n=8", margin_threshold(8, 1500).unwrap(), Some(704));
    for (n, t) in [(7usize, 140u32), (8, 704)] {
        let m = injectivity_bound(n, i64::from(t)).unwrap() as u32;
        match mult_map_rank(&spec(4, n, t), cfg, m - 1) {
            Err(Error::OutOfDeskScale(_)) => {}
            other => e.push(format!("n={n} t={t}: expected the size cap, got {other:?}")),
        }
    }
    done(e)
}

// Runs without the libtest harness so every line reaches the terminal.
fn main() {
    let criteria = [
        Criterion { id: 1, name: "five cubes in four variables", budget: secs(1), run: c1 },
        Criterion { id: 2, name: "exceptional peak triples", budget: secs(60), run: c2 },
        Criterion { id: 3, name: "(-1)-curve counts", budget: secs(1), run: c3 },
        Criterion { id: 4, name: "irregularity vs fat points", budget: secs(300), run: c4 },
        Criterion { id: 5, name: "eight forms of degree eight", budget: secs(120), run: c5 },
        Criterion { id: 6, name: "five-form ranks and h1", budget: secs(60), run: c6 },
        Criterion { id: 7, name: "even almost complete intersection", budget: secs(60), run: c7 },
        Criterion { id: 8, name: "Verlinde and closed forms", budget: secs(1), run: c8 },
        Criterion { id: 9, name: "socle degrees of B_4,t", budget: secs(600), run: c9 },
        Criterion { id: 10, name: "Eulerian margin", budget: secs(1), run: c10 },
        Criterion { id: 11, name: "duality grid", budget: secs(120), run: c11 },
        Criterion { id: 12, name: "GT convention resolution", budget: secs(10), run: c12 },
        Criterion { id: 13, name: "four-variable thresholds", budget: secs(600), run: c13 },
    ];
    let cfg = OracleConfig::default();
    let mut unexpected = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let mut result = (c.run)(&cfg);
        let elapsed = start.elapsed();
        if elapsed > c.budget {
            let msg = format!("took {elapsed:.1?}, budget {:?}", c.budget);
            match &mut result {
                Ok(()) => result = Err(vec![msg]),
                Err(v) => v.push(msg),
            }
        }
        let known = KNOWN.iter().find(|(id, _)| *id == c.id).map(|(_, m)| *m);
        match (&result, known) {
            (Ok(()), None) => println!("criterion {:>2} PASS  {} ({elapsed:.2?})", c.id, c.name),
            (Ok(()), Some(_)) => {
                println!("criterion {:>2} PASS  {} ({elapsed:.2?}), listed as a known failure", c.id, c.name);
                unexpected.push(format!("criterion {} passed but is listed in KNOWN", c.id));
            }
            (Err(errs), _) => {
                println!("criterion {:>2} FAIL  {} ({elapsed:.2?})", c.id, c.name);
                for m in errs {
                    println!("    {m}");
                }
                let documented = known.is_some_and(|k| k.iter().map(|s| s.to_string()).eq(errs.iter().cloned()));
                if documented {
                    println!("    (known failure; see README)");
                } else {
                    unexpected.push(format!("criterion {}: {errs:?}", c.id));
                }
            }
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: ok");
    } else {
        println!("acceptance: {} unexpected result(s)", unexpected.len());
        for u in &unexpected {
            println!("    {u}");
        }
        std::process::exit(1);
    }
}
