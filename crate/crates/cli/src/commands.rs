use std::fmt::Write as _;
use std::io::Write;

use lefschetz::analyzer::{cross_check, Status, TriState, WlpReport};
use lefschetz::gt::{self, Convention, GtQuery, Resolution};
use lefschetz::hilbert::{ci_hf, stanley_series, HilbertFunction};
use lefschetz::oracle::{self, DegreeMap, OracleConfig};
use lefschetz::surface;
use lefschetz::{AlgebraSpec, Error, Family, Result};
use serde::{Deserialize, Serialize};

use crate::manifest::{self, Expectation, Outcome};
use crate::output::{self, emit};
use crate::{
    Command, Format, GtCommand, HfArgs, OracleArgs, OracleCommand, SurfaceCommand, VerifyArgs, WlpArgs,
    EXIT_DISCREPANCY, EXIT_OK,
};

pub fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Hf(a) => hf(a, out),
        Command::Wlp(a) => wlp(a, out),
        Command::Surface(c) => surface_cmd(c, out),
        Command::Gt(c) => gt_cmd(c, out),
        Command::Oracle(c) => oracle_cmd(c, out),
        Command::VerifyPaper(a) => verify(a, out),
    }
}

fn setup(args: &OracleArgs) -> Result<OracleConfig> {
    if let Some(j) = args.jobs {
        if j == 0 {
            return Err(Error::InvalidArgument("--jobs must be positive".into()));
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    args.config()
}

fn line(out: &mut dyn Write, s: impl AsRef<str>) -> Result<()> {
    writeln!(out, "{}", s.as_ref()).map_err(|e| Error::InvalidArgument(format!("output: {e}")))
}

/// One row of the Hilbert function table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfRow {
    pub degree: u32,
    pub formula: Option<u64>,
    pub oracle: u64,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfTable {
    pub spec: AlgebraSpec,
    pub rows: Vec<HfRow>,
}

fn formula_hf(spec: &AlgebraSpec) -> Option<HilbertFunction> {
    let t = spec.uniform_exponent()?;
    match spec.family {
        Family::A => stanley_series(spec.r, t).ok(),
        Family::C => ci_hf(spec.r, t).ok(),
        _ => None,
    }
}

fn hf(a: HfArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = a.spec.spec()?;
    let cfg = setup(&a.oracle)?;
    let max_degree = a.max_degree.or(if spec.degree_bound().is_none() { a.to } else { None });
    let oracle_hf = oracle::algebra_hf(&spec, &cfg, max_degree)?;
    let formula = formula_hf(&spec);
    let from = a.from.unwrap_or(0);
    let natural = oracle_hf
        .values
        .len()
        .max(formula.as_ref().map_or(0, |f| f.values.len()))
        .saturating_sub(1) as u32;
    let to = a.to.unwrap_or(natural);
    if from > to {
        return Err(Error::InvalidArgument(format!("--from {from} is past --to {to}")));
    }
    let rows: Vec<HfRow> = (from..=to)
        .map(|j| {
            let o = oracle_hf.get(i64::from(j));
            let f = formula.as_ref().map(|h| h.get(i64::from(j)));
            HfRow {
                degree: j,
                formula: f,
                oracle: o,
                agree: f.map(|f| f == o),
            }
        })
        .collect();
    let code = if rows.iter().any(|r| r.agree == Some(false)) {
        EXIT_DISCREPANCY
    } else {
        EXIT_OK
    };
    let body = match a.output.format {
        Format::Json => output::json("hf", &HfTable { spec: spec.clone(), rows })?,
        Format::Csv => output::csv(&rows)?,
        Format::Text => {
            let mut s = format!("{spec}\ndegree  formula  oracle  agree\n");
            for r in &rows {
                let f = r.formula.map_or("-".to_string(), |v| v.to_string());
                let g = match r.agree {
                    Some(true) => "yes",
                    Some(false) => "NO",
                    None => "-",
                };
                let _ = writeln!(s, "{:>6}  {:>7}  {:>6}  {}", r.degree, f, r.oracle, g);
            }
            s
        }
    };
    emit(&a.output, out, &body)?;
    Ok(code)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct WlpRow {
    degree: u32,
    dim_source: u64,
    dim_target: u64,
    rank: u64,
    injective: bool,
    surjective: bool,
}

impl From<&DegreeMap> for WlpRow {
    fn from(m: &DegreeMap) -> Self {
        Self {
            degree: m.degree,
            dim_source: m.dim_source,
            dim_target: m.dim_target,
            rank: m.rank,
            injective: m.injective(),
            surjective: m.surjective(),
        }
    }
}

fn describe(v: &TriState) -> String {
    let head = match (v.status, v.degree) {
        (Status::Fails, Some(d)) => format!("fails in degree {d}"),
        (Status::Fails, None) => "fails".to_string(),
        (Status::Holds, _) => "holds".to_string(),
        (Status::Unknown, _) => "unknown".to_string(),
    };
    format!("{head} ({}) [{}]", v.cause, v.citations.join(", "))
}

pub fn wlp_text(rep: &WlpReport) -> String {
    let mut s = format!("{}\n", rep.spec);
    if !rep.entries.is_empty() {
        s.push_str("degree  dim_source  dim_target  rank  injective  surjective\n");
        let yn = |b: bool| if b { "yes" } else { "no" };
        for m in &rep.entries {
            let _ = writeln!(
                s,
                "{:>6}  {:>10}  {:>10}  {:>4}  {:<9}  {}",
                m.degree,
                m.dim_source,
                m.dim_target,
                m.rank,
                yn(m.injective()),
                yn(m.surjective())
            );
        }
    }
    let _ = writeln!(s, "symbolic: {}", describe(&rep.symbolic));
    let _ = writeln!(s, "oracle: {}", describe(&rep.oracle));
    let _ = writeln!(s, "agreement: {}", if rep.agreement { "yes" } else { "NO" });
    for d in &rep.diagnostics {
        let _ = writeln!(s, "  {d}");
    }
    s
}

fn wlp(a: WlpArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = a.spec.spec()?;
    let cfg = setup(&a.oracle)?;
    let rep = cross_check(&spec, &cfg)?;
    let body = match a.output.format {
        Format::Json => output::json("wlp", &rep)?,
        Format::Csv => output::csv(&rep.entries.iter().map(WlpRow::from).collect::<Vec<_>>())?,
        Format::Text => wlp_text(&rep),
    };
    emit(&a.output, out, &body)?;
    Ok(if rep.agreement { EXIT_OK } else { EXIT_DISCREPANCY })
}

fn surface_cmd(c: SurfaceCommand, out: &mut dyn Write) -> Result<i32> {
    match c {
        SurfaceCommand::Curves { n, output: o } => {
            let curves = surface::minus_one_curves(n)?;
            let body = match o.format {
                Format::Json => output::json("surface curves", &curves)?,
                Format::Text => curves.iter().map(|c| format!("{c}\n")).collect(),
                Format::Csv => {
                    let mut s = String::from("d,b\n");
                    for c in &curves {
                        let b: Vec<String> = c.b.iter().map(i64::to_string).collect();
                        let _ = writeln!(s, "{},{}", c.d, b.join(" "));
                    }
                    s
                }
            };
            emit(&o, out, &body)?;
        }
        SurfaceCommand::Effective { n, d, m } => line(out, surface::uniform_effective(n, d, m)?.to_string())?,
        SurfaceCommand::Irregular { n, d, m } => line(out, surface::uniform_irregular(n, d, m)?.to_string())?,
        SurfaceCommand::Bound { n, t } => line(out, surface::injectivity_bound(n, t)?.to_string())?,
        SurfaceCommand::Worst { n, t, m } => line(out, surface::worst_curve_value(n, t, m)?.to_string())?,
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CountRow {
    convention: String,
    count: String,
}

fn parse_grid(cells: &[String]) -> Result<Vec<(u32, u32)>> {
    cells
        .iter()
        .map(|c| {
            let (r, t) = c
                .split_once(':')
                .ok_or_else(|| Error::InvalidArgument(format!("grid cell {c:?} is not r:t")))?;
            let p = |s: &str| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidArgument(format!("grid cell {c:?} is not r:t")))
            };
            Ok((p(r)?, p(t)?))
        })
        .collect()
}

fn gt_cmd(c: GtCommand, out: &mut dyn Write) -> Result<i32> {
    match c {
        GtCommand::Count { r, t, i, output: o } => {
            let rows = Convention::ALL
                .iter()
                .map(|&conv| {
                    Ok(CountRow {
                        convention: conv.name().to_string(),
                        count: gt::count(&GtQuery::uniform(r, t, i, conv)?).to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let body = match o.format {
                Format::Json => output::json("gt count", &rows)?,
                Format::Csv => output::csv(&rows)?,
                Format::Text => rows.iter().map(|r| format!("{:<22} {}\n", r.convention, r.count)).collect(),
            };
            emit(&o, out, &body)?;
            Ok(EXIT_OK)
        }
        GtCommand::Resolve { grid, output: o } => {
            let res = gt::resolve_convention(&parse_grid(&grid)?)?;
            let body = match o.format {
                Format::Json => output::json("gt resolve", &res)?,
                Format::Csv => return Err(output::unsupported(o.format, "gt resolve")),
                Format::Text => match &res {
                    Resolution::Resolved(c) => format!("resolved: {}\n", c.name()),
                    Resolution::Discrepancy(outcomes) => {
                        let mut s = String::from("discrepancy: no convention matches the closed form\n");
                        for oc in outcomes {
                            match &oc.first_failure {
                                Some(m) => {
                                    let _ = writeln!(
                                        s,
                                        "  {:<22} first differs at r={} t={} i={}: {} patterns, dimension {}",
                                        oc.convention.name(),
                                        m.r,
                                        m.t,
                                        m.i,
                                        m.count,
                                        m.expected
                                    );
                                }
                                None => {
                                    let _ = writeln!(s, "  {:<22} matches", oc.convention.name());
                                }
                            }
                        }
                        s
                    }
                },
            };
            emit(&o, out, &body)?;
            Ok(match res {
                Resolution::Resolved(_) => EXIT_OK,
                Resolution::Discrepancy(_) => EXIT_DISCREPANCY,
            })
        }
        GtCommand::Odd { k, t, output: o } => {
            let chk = gt::gtodd_injection_check(k, t)?;
            let body = match o.format {
                Format::Json => output::json("gt odd", &chk)?,
                Format::Csv => return Err(output::unsupported(o.format, "gt odd")),
                Format::Text => format!(
                    "k={k} t={t} c={}: |G_c+1| = {}, |G_c| = {}, injection {}\n",
                    chk.c,
                    chk.size_c_plus_1,
                    chk.size_c,
                    if chk.holds() { "holds" } else { "FAILS" }
                ),
            };
            emit(&o, out, &body)?;
            Ok(if chk.holds() { EXIT_OK } else { EXIT_DISCREPANCY })
        }
    }
}

fn oracle_cmd(c: OracleCommand, out: &mut dyn Write) -> Result<i32> {
    match c {
        OracleCommand::Forms { r, n, oracle: a } => {
            if r == 0 || n == 0 {
                return Err(Error::InvalidArgument("need r, n >= 1".into()));
            }
            let cfg = setup(&a)?;
            for f in oracle::random_forms(r, n, &cfg) {
                let cs: Vec<String> = f.coefficients.iter().map(u32::to_string).collect();
                line(out, cs.join(" "))?;
            }
        }
        OracleCommand::Ideal { spec, j, oracle: a } => {
            let cfg = setup(&a)?;
            line(out, oracle::power_ideal_dim(&spec.spec()?, &cfg, j)?.to_string())?;
        }
        OracleCommand::Rank { spec, j, oracle: a, output: o } => {
            let cfg = setup(&a)?;
            let m = oracle::mult_map_rank(&spec.spec()?, &cfg, j)?;
            let body = match o.format {
                Format::Json => output::json("oracle rank", &m)?,
                Format::Csv => output::csv(&[WlpRow::from(&m)])?,
                Format::Text => format!(
                    "A_{} -> A_{}: {} -> {}, rank {}\n",
                    m.degree,
                    m.degree + 1,
                    m.dim_source,
                    m.dim_target,
                    m.rank
                ),
            };
            emit(&o, out, &body)?;
        }
        OracleCommand::Fatpoint { r, j, mults, oracle: a } => {
            let cfg = setup(&a)?;
            let (h0, h1) = oracle::fatpoint_h0h1(r, j, &mults, &cfg)?;
            line(out, format!("h0 {h0}\nh1 {h1}"))?;
        }
        OracleCommand::Socle { spec, oracle: a } => {
            let cfg = setup(&a)?;
            line(out, oracle::socle_degree_oracle(&spec.spec()?, &cfg)?.to_string())?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub group: String,
    pub name: String,
    pub status: String,
    pub detail: String,
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = setup(&a.oracle)?;
    let items: Vec<_> = manifest::manifest()
        .into_iter()
        .filter(|i| a.only.as_deref().map_or(true, |g| i.group == g))
        .collect();
    if items.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no manifest items in group {:?}; groups are {}",
            a.only.unwrap_or_default(),
            manifest::GROUPS.join(", ")
        )));
    }
    let mut rows = Vec::new();
    let mut bad = 0;
    for item in &items {
        let outcome = manifest::run_item(item, &cfg);
        let status = match (&outcome, &item.expect) {
            (Outcome::Pass, Expectation::Pass) => "PASS",
            (Outcome::Fail(_), Expectation::KnownDeviation(_)) => "XFAIL",
            (Outcome::Pass, Expectation::KnownDeviation(_)) => "XPASS",
            (Outcome::Fail(_), Expectation::Pass) => "FAIL",
        };
        if matches!(status, "FAIL" | "XPASS") {
            bad += 1;
        }
        let mut detail = match &outcome {
            Outcome::Pass => String::new(),
            Outcome::Fail(m) => m.clone(),
        };
        if let Expectation::KnownDeviation(why) = &item.expect {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str(why);
        }
        rows.push(VerifyRow {
            group: item.group.to_string(),
            name: item.name.to_string(),
            status: status.to_string(),
            detail,
        });
    }
    let body = match a.output.format {
        Format::Json => output::json("verify-paper", &rows)?,
        Format::Csv => output::csv(&rows)?,
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let _ = write!(s, "{:<5}  {:<9}  {}", r.status, r.group, r.name);
                if !r.detail.is_empty() {
                    let _ = write!(s, "  ({})", r.detail);
                }
                s.push('\n');
            }
            let _ = writeln!(s, "{} items, {} unexpected", rows.len(), bad);
            s
        }
    };
    emit(&a.output, out, &body)?;
    Ok(if bad == 0 { EXIT_OK } else { EXIT_DISCREPANCY })
}
