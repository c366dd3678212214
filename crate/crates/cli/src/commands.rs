//! Subcommands: parse arguments, compute, render a deterministic report.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eisterms::base_field::{BaseField, Ideal, QuadInt};
use eisterms::characters::{DirichletCharacter, LValueTable};
use eisterms::constant_terms::{constant_term, constant_term_mode, con_rows, GaussMode};
use eisterms::cusps::{self, CuspLabel, Mat2};
use eisterms::eisenstein::{defining_basis, dimension_check, jordan_basis, qexp, BasisElement, EisensteinLabel};
use eisterms::hecke_ordinary::{hecke_matrix, ordinary_cuspidality_check, ordinary_projector, HeckeOp};
use eisterms::linalg::Matrix;
use eisterms::{CyclotomicNumber, Error};
use serde_json::{json, Value};

use crate::acceptance;
use crate::cache::Cache;
use crate::error::CliError;
use crate::format::CycJson;
use crate::lvalues::parse_lvalues;
use crate::parallel::par_map;

const CHARACTER_HELP: &str = "Character labels: `1` is the trivial character mod 1, `1_N` the trivial \
character mod N, `chiN.j` the j-th character mod N (index j = sum of exponents on the fixed generators \
of (Z/N)^*, mixed radix, first generator least significant), and `chiN` the unique primitive quadratic \
character of conductor N when it exists.";

#[derive(Debug, Parser)]
#[command(name = "eisterms", version, about = "Constant terms of Eisenstein series at all cusps", after_help = CHARACTER_HELP)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Base field: `Q`, or a real quadratic fundamental discriminant such as `5` or `D12`.
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Directory of the content-addressed report cache.
    #[arg(long, global = true, env = "EISTERMS_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Ignore the cache even if a directory is configured.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads for per-cusp and per-column work; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// L-value table for real quadratic fields (validated when given).
    #[arg(long, global = true)]
    pub lvalues: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpTag {
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "U", alias = "u")]
    U,
    #[value(name = "S", alias = "s")]
    S,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value = "1")]
    pub eta: String,
    #[arg(long, default_value = "1")]
    pub psi: String,
    /// Level-raising index t in E | t.
    #[arg(long, default_value_t = 1)]
    pub raise: u64,
    /// Use the weight-2 difference D_t = E_2 - t E_2|t instead of a series.
    #[arg(long, conflicts_with_all = ["eta", "psi", "raise"])]
    pub difference: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate cusps of Gamma_1(N) grouped by stratum.
    Cusps {
        #[arg(long)]
        level: String,
    },
    /// Stratum sizes from the counting formula (and the orbit oracle over Q).
    Strata {
        #[arg(long)]
        level: String,
    },
    /// Admissibility of every stratum (odd-weight support).
    Admissible {
        #[arg(long)]
        level: String,
    },
    /// q-expansion at infinity.
    Qexp {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
    /// Constant terms of one form at the cusps of a level.
    Cterm {
        #[arg(long)]
        level: u64,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, conflicts_with = "cusp")]
        all_cusps: bool,
        /// A single cusp label `m:a:c`.
        #[arg(long)]
        cusp: Option<String>,
    },
    /// The constant-term matrix: rows are cusps (admissible cusps for odd k), columns the basis.
    Conmap {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        k: u32,
        /// Drop the Gauss-sum factor common to each column (k >= 2); the rank is unchanged.
        #[arg(long)]
        omit_gauss: bool,
    },
    /// The Eisenstein basis and the dimension check.
    Eisbasis {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        k: u32,
        /// List the Jordan basis used by the Hecke operators.
        #[arg(long)]
        jordan: bool,
    },
    /// A Hecke operator in the Jordan basis.
    Hecke {
        #[arg(long, value_enum)]
        op: OpTag,
        #[arg(long)]
        ideal: u64,
        #[arg(long)]
        level: u64,
        #[arg(long)]
        k: u32,
    },
    /// Rank form of the ordinary cuspidality criterion.
    OrdinaryCheck {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: u64,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Restrict to these criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
    /// Parse and normalize an L-value table file.
    IngestLvalues { path: PathBuf },
    /// Look up one record of the table given by --lvalues.
    Lvalue {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        label: String,
        #[arg(long)]
        k: u32,
    },
}

/// Result of a subcommand: the rendered report and the process exit code.
pub struct Outcome {
    pub report: String,
    pub exit_code: i32,
}

pub fn parse_character(s: &str) -> Result<DirichletCharacter, CliError> {
    Ok(DirichletCharacter::parse(s)?)
}

fn parse_quadint(s: &str) -> Result<QuadInt, CliError> {
    // `a`, `a+bw`, `a-bw`, `bw`.
    let bad = || CliError::Usage(format!("bad quadratic integer {s:?} (use a+bw)"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('w') else {
        return Ok(QuadInt { a: t.parse().map_err(|_| bad())?, b: 0 });
    };
    let split = body.rfind(['+', '-']).filter(|&i| i > 0);
    let (a, b) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let b = match b {
        "" | "+" => 1,
        "-" => -1,
        x => x.trim_start_matches('+').parse().map_err(|_| bad())?,
    };
    Ok(QuadInt { a: a.parse().map_err(|_| bad())?, b })
}

/// `N` over `Q`; over a quadratic field an integer or comma-separated generators `a+bw`.
pub fn parse_level(field: &BaseField, s: &str) -> Result<Ideal, CliError> {
    let ideal = match field {
        BaseField::Rational => {
            Ideal::Rational(s.trim().parse().map_err(|_| CliError::Usage(format!("bad level {s:?}")))?)
        }
        BaseField::Quadratic(f) => {
            if let Ok(n) = s.trim().parse::<u64>() {
                field.ideal_from_int(n)
            } else {
                let gens = s.split(',').map(parse_quadint).collect::<Result<Vec<_>, _>>()?;
                Ideal::Quadratic(f.ideal(&gens))
            }
        }
    };
    if ideal.is_zero() {
        return Err(CliError::Usage("level must be non-zero".into()));
    }
    Ok(ideal)
}

fn cyc(x: &CyclotomicNumber) -> Value {
    serde_json::to_value(CycJson::from_cyc(x)).expect("serializable")
}

fn mat2(m: &Mat2) -> Value {
    json!([[m.a.to_string(), m.b.to_string()], [m.c.to_string(), m.d.to_string()]])
}

fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(cyc).collect())).collect())
}

fn element(s: &SeriesArgs) -> Result<BasisElement, CliError> {
    if let Some(t) = s.difference {
        if s.k != 2 || t < 2 {
            return Err(CliError::Usage("--difference needs --k 2 and t >= 2".into()));
        }
        return Ok(BasisElement::Difference { t });
    }
    let label = EisensteinLabel::new(parse_character(&s.eta)?, parse_character(&s.psi)?, s.k, s.raise)?;
    label.check(None)?;
    Ok(BasisElement::Series(label))
}

fn require_q(field: &BaseField, what: &str) -> Result<(), CliError> {
    match field {
        BaseField::Rational => Ok(()),
        _ => Err(Error::Unsupported(format!("{what} is implemented over Q only")).into()),
    }
}

/// Run a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let field = BaseField::parse(&cli.global.field)?;
    let lvalues = match &cli.global.lvalues {
        Some(p) => parse_lvalues(&std::fs::read_to_string(p)?)?,
        None => LValueTable::new(),
    };
    let jobs = cli.global.jobs as usize;
    if let Command::Selftest { only } = &cli.command {
        let results = acceptance::run(only);
        let ok = results.iter().all(|r| r.passed);
        let mut report: String = results.iter().map(|r| r.line() + "\n").collect();
        report.push_str(&format!("{}/{} criteria passed\n", results.iter().filter(|r| r.passed).count(), results.len()));
        return Ok(Outcome { report, exit_code: if ok { 0 } else { 1 } });
    }
    let cache = if cli.global.no_cache { Cache::disabled() } else { Cache::new(cli.global.cache_dir.clone()) };
    let debug = format!("{:?}", cli.command);
    let module = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("command").to_lowercase();
    // Table-dependent and file-reading commands bypass the cache.
    let cacheable = !matches!(cli.command, Command::Lvalue { .. } | Command::IngestLvalues { .. });
    let cache = if cacheable { cache } else { Cache::disabled() };
    let input = format!("{}|{:?}|{debug}", field.name(), cli.global.output);
    let report = cache.get_or_insert(&module, &input, || {
        let value = compute(&cli.command, &field, &lvalues, jobs)?;
        Ok(render(&value, cli.global.output))
    })?;
    Ok(Outcome { report, exit_code: 0 })
}

fn compute(cmd: &Command, field: &BaseField, lvalues: &LValueTable, jobs: usize) -> Result<Value, CliError> {
    Ok(match cmd {
        Command::Cusps { level } => cusps_report(field, &parse_level(field, level)?)?,
        Command::Strata { level } => strata_report(field, &parse_level(field, level)?)?,
        Command::Admissible { level } => {
            let n = parse_level(field, level)?;
            let mut rows = Vec::new();
            for (m, count) in cusps::strata(field, &n)? {
                rows.push(json!({"m": m.to_string(), "count": count, "admissible": cusps::is_admissible(field, &n, &m)?}));
            }
            json!({"field": field.name(), "level": n.to_string(), "strata": rows,
                   "admissible_cusp_count": cusps::admissible_cusp_count(field, &n)?})
        }
        Command::Qexp { series, bound } => {
            require_q(field, "qexp")?;
            let e = element(series)?;
            let q = qexp(&e, *bound)?;
            json!({"element": e.to_string(), "constant": cyc(&q.constant),
                   "coeffs": q.coeffs.iter().map(cyc).collect::<Vec<_>>()})
        }
        Command::Cterm { level, series, all_cusps: _, cusp } => {
            require_q(field, "cterm")?;
            cterm_report(*level, &element(series)?, cusp.as_deref(), jobs)?
        }
        Command::Conmap { level, k, omit_gauss } => {
            require_q(field, "conmap")?;
            conmap_report(*level, *k, *omit_gauss, jobs)?
        }
        Command::Eisbasis { level, k, jordan } => {
            require_q(field, "eisbasis")?;
            let names: Vec<String> = if *jordan {
                jordan_basis(*level, *k)?.iter().map(ToString::to_string).collect()
            } else {
                defining_basis(*level, *k)?.iter().map(ToString::to_string).collect()
            };
            let mut v = json!({"level": level, "k": k, "jordan": jordan, "count": names.len(), "basis": names});
            if *k >= 2 {
                let d = dimension_check(*level, *k)?;
                v["target"] = json!(d.target);
                v["equal"] = json!(d.equal);
            }
            v
        }
        Command::Hecke { op, ideal, level, k } => {
            require_q(field, "hecke")?;
            let op = match op {
                OpTag::T => HeckeOp::T(*ideal),
                OpTag::U => HeckeOp::U(*ideal),
                OpTag::S => HeckeOp::S(*ideal),
            };
            let h = hecke_matrix(*level, *k, op)?;
            json!({"op": op.to_string(), "level": level, "k": k,
                   "basis": h.basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
                   "matrix": matrix(&h.matrix)})
        }
        Command::OrdinaryCheck { level, k, p } => {
            require_q(field, "ordinary-check")?;
            let v = ordinary_cuspidality_check(*level, *k, *p)?;
            let proj = ordinary_projector(*level, *k, *p)?;
            json!({"level": level, "k": k, "p": p, "P": proj.big_p, "rank": v.rank, "dim_ordinary": v.dim_ordinary,
                   "verdict": v.holds, "rows": v.rows,
                   "kept": proj.kept.iter().map(|&j| proj.basis[j].to_string()).collect::<Vec<_>>()})
        }
        Command::IngestLvalues { path } => {
            let table = parse_lvalues(&std::fs::read_to_string(path)?)?;
            let records: Vec<Value> = table
                .iter()
                .map(|((d, label, k), v)| json!({"D": d, "label": label, "k": k, "value": cyc(v)}))
                .collect();
            json!({"count": table.len(), "records": records})
        }
        Command::Lvalue { d, label, k } => {
            json!({"D": d, "label": label, "k": k, "value": cyc(lvalues.get(*d, label, *k)?)})
        }
        Command::Selftest { .. } => unreachable!("handled before caching"),
    })
}

fn cusps_report(field: &BaseField, n: &Ideal) -> Result<Value, CliError> {
    let mut strata = BTreeMap::new();
    let list: Vec<Value> = match (field, n) {
        (BaseField::Rational, Ideal::Rational(n)) => {
            let cl = cusps::enumerate_cusps_q(*n)?;
            for c in &cl {
                *strata.entry(c.label.m.to_string()).or_insert(0u64) += 1;
            }
            cl.iter().map(|c| json!({"label": c.label.to_string(), "m": c.label.m, "rep": mat2(&c.rep)})).collect()
        }
        (BaseField::Quadratic(f), Ideal::Quadratic(q)) => {
            let cl = cusps::enumerate_cusps_quadratic(*f, q)?;
            for c in &cl {
                *strata.entry(Ideal::Quadratic(c.label.m).to_string()).or_insert(0u64) += 1;
            }
            cl.iter()
                .map(|c| {
                    let e = quad;
                    json!({"lambda": c.label.lambda, "m": Ideal::Quadratic(c.label.m).to_string(),
                           "norm_m": c.label.m.norm(),
                           "a": e(&c.label.a), "c": e(&c.label.c),
                           "rep": c.rep.iter().map(|r| r.iter().map(e).collect::<Vec<_>>()).collect::<Vec<_>>()})
                })
                .collect()
        }
        _ => return Err(CliError::Internal("level does not belong to the field".into())),
    };
    Ok(json!({"field": field.name(), "level": n.to_string(), "count": list.len(), "strata": strata, "cusps": list}))
}

/// `a+bw`, `a-bw`, `a`; `w` is the standard generator of the ring of integers.
fn quad(x: &QuadInt) -> String {
    match x.b {
        0 => x.a.to_string(),
        b if b < 0 => format!("{}-{}w", x.a, -b),
        b => format!("{}+{}w", x.a, b),
    }
}

fn strata_report(field: &BaseField, n: &Ideal) -> Result<Value, CliError> {
    let rows = cusps::strata(field, n)?;
    let total: u64 = rows.iter().map(|r| r.1).sum();
    let mut v = json!({"field": field.name(), "level": n.to_string(), "total": total,
        "strata": rows.iter().map(|(m, c)| json!({"m": m.to_string(), "count": c})).collect::<Vec<_>>()});
    if let Ideal::Rational(nn) = n {
        let oracle = cusps::oracle_cusps_q(*nn);
        let agrees = rows.iter().all(|(m, c)| matches!(m, Ideal::Rational(mm) if oracle.get(mm) == Some(c)));
        if !agrees {
            return Err(CliError::Internal(format!("stratum formula disagrees with the orbit oracle at N={nn}")));
        }
        v["oracle_agrees"] = json!(true);
    }
    Ok(v)
}

fn cterm_report(n: u64, e: &BasisElement, cusp: Option<&str>, jobs: usize) -> Result<Value, CliError> {
    let wanted = cusp.map(CuspLabel::parse).transpose()?;
    if let Some(w) = &wanted {
        let canon = CuspLabel::canonical(n, w.m, w.a as i64, w.c as i64);
        if cusps::enumerate_cusps_q(n)?.iter().all(|c| c.label != canon) {
            return Err(Error::Hypothesis(format!("{w} is not a cusp label of level {n}")).into());
        }
    }
    match e {
        BasisElement::Series(l) => l.check(Some(n))?,
        BasisElement::Difference { t } if n % t != 0 => {
            return Err(Error::Hypothesis("D_t needs t | N".into()).into())
        }
        BasisElement::Difference { .. } => {}
    }
    let k = e.weight();
    let cl = cusps::enumerate_cusps_q(n)?;
    let values = par_map(jobs, &cl, |c| constant_term(e, &c.rep));
    let mut entries = Vec::new();
    for (c, v) in cl.iter().zip(values) {
        let v = v?;
        if let Some(w) = &wanted {
            if CuspLabel::canonical(n, w.m, w.a as i64, w.c as i64) != c.label {
                continue;
            }
        }
        let admissible = cusps::is_admissible(&BaseField::Rational, &Ideal::Rational(n), &Ideal::Rational(c.label.m))?;
        if k % 2 == 1 && !admissible && !v.is_zero() {
            return Err(CliError::Internal(format!("odd weight constant term non-zero at inadmissible cusp {}", c.label)));
        }
        entries.push(json!({"cusp": c.label.to_string(), "m": c.label.m, "admissible": admissible,
                            "rep": mat2(&c.rep), "value": cyc(&v)}));
    }
    Ok(json!({"level": n, "k": k, "element": e.to_string(),
              "parity": if k % 2 == 0 { "even" } else { "odd" }, "regularized": e.is_regularized(),
              "sign_convention": if k % 2 == 1 { "value at the stored representative rep" } else { "none" },
              "entries": entries}))
}

fn conmap_report(n: u64, k: u32, omit_gauss: bool, jobs: usize) -> Result<Value, CliError> {
    if omit_gauss && k == 1 {
        return Err(Error::Hypothesis("--omit-gauss needs k >= 2".into()).into());
    }
    let mode = if omit_gauss { GaussMode::Omit } else { GaussMode::Full };
    let basis = defining_basis(n, k)?;
    let rows = con_rows(n, k)?;
    let cols = par_map(jobs, &basis, |e| rows.iter().map(|c| constant_term_mode(e, &c.rep, mode)).collect::<Result<Vec<_>, _>>());
    let cols = cols.into_iter().collect::<Result<Vec<_>, _>>()?;
    let m = if cols.is_empty() { Matrix::zeros(rows.len(), 0) } else { Matrix::from_columns(cols)? };
    Ok(json!({"level": n, "k": k, "gauss_factor": if omit_gauss { "omitted" } else { "included" },
              "rows": rows.iter().map(|c| c.label.to_string()).collect::<Vec<_>>(),
              "columns": basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
              "matrix": matrix(&m), "rank": m.rank()}))
}

/// Plain-text rendering: scalars as `key: value`, arrays one item per line.
pub fn render(v: &Value, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        OutputFormat::Table => {
            let mut out = String::new();
            table(v, "", &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(o) if o.contains_key("order") && o.contains_key("coeffs") => {
            o.get("text").and_then(Value::as_str).unwrap_or("?").to_string()
        }
        other => other.to_string(),
    }
}

fn table(v: &Value, indent: &str, out: &mut String) {
    match v {
        Value::Object(o) if !(o.contains_key("order") && o.contains_key("coeffs")) => {
            for (k, x) in o {
                match x {
                    Value::Array(_) | Value::Object(_) if !is_cyc(x) => {
                        out.push_str(&format!("{indent}{k}:\n"));
                        table(x, &format!("{indent}  "), out);
                    }
                    _ => out.push_str(&format!("{indent}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match x {
                    Value::Array(row) => {
                        out.push_str(&format!("{indent}[{}]\n", row.iter().map(scalar).collect::<Vec<_>>().join(", ")))
                    }
                    Value::Object(o) if !is_cyc(x) => out.push_str(&format!(
                        "{indent}{}\n",
                        o.iter().map(|(k, y)| format!("{k}={}", compact(y))).collect::<Vec<_>>().join("  ")
                    )),
                    _ => out.push_str(&format!("{indent}{}\n", scalar(x))),
                }
            }
        }
        other => out.push_str(&format!("{indent}{}\n", scalar(other))),
    }
}

fn is_cyc(v: &Value) -> bool {
    matches!(v, Value::Object(o) if o.contains_key("order") && o.contains_key("coeffs"))
}

fn compact(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("[{}]", a.iter().map(compact).collect::<Vec<_>>().join(",")),
        other => scalar(other),
    }
}
