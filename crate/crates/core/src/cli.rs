//! The `pierce` command-line front end.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on domain errors. Domain
//! errors are reported on stderr as `{"error":{"kind":..,"message":..}}`.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use crate::calendar::{self, IntercalationRule};
use crate::digits::{self, DigitSeq, ExtDigit};
use crate::error::Error;
use crate::exact::{self, Enclosure, Rational};
use crate::intervals;
use crate::law::{self, GrowthSpec, TrajectoryRow};
use crate::pierce;
use crate::real::Precision;

/// Environment variable holding the default precision in bits.
pub const PRECISION_ENV: &str = "PIERCE_PRECISION";

#[derive(Debug, Parser)]
#[command(
    name = "pierce",
    version,
    about = "Exact Pierce expansions and generalized leap-year rules"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    output: Option<Output>,
    /// Working precision in bits for logarithms and square roots.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Decimal places for display-only decimals.
    #[arg(long, global = true, default_value_t = 12)]
    decimals: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Csv,
    Json,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Formula,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Digits of a rational in [0, 1].
    Expand { x: Rat },
    /// Exact value of a terminated digit sequence.
    Decode { digits: DigitSeq },
    /// One digit and the shifted remainder.
    Step { x: Rat },
    /// Fundamental interval of a generator.
    Interval { digits: DigitSeq },
    /// Intervals of the one-digit extensions of a generator.
    Children {
        digits: DigitSeq,
        #[arg(long)]
        jmax: BigUint,
    },
    /// A generator whose interval lies inside the open interval (a, b).
    FindInterval { a: Rat, b: Rat },
    /// Whether a year is a leap year: `leap <rule> <year>` or flags.
    Leap(LeapArgs),
    /// Number of leap years in 1..=N.
    Count {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        through: BigUint,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Average-year fraction of a rule.
    Series {
        #[command(flatten)]
        rule: RuleArg,
        /// Number of terms for open-ended rules.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Drift N x - L for one year or every year through N.
    Drift {
        #[command(flatten)]
        rule: RuleArg,
        #[command(flatten)]
        point: PointArg,
        #[arg(long, conflicts_with = "through")]
        year: Option<BigUint>,
        #[arg(long)]
        through: Option<u64>,
    },
    /// Digits with a prescribed growth rate.
    Construct {
        #[arg(long)]
        alpha: GrowthSpec,
        #[arg(long)]
        n: usize,
    },
    /// Finite-horizon growth diagnostics of a digit sequence.
    Diagnose {
        #[arg(long, conflicts_with = "alpha")]
        digits: Option<DigitSeq>,
        #[arg(long)]
        alpha: Option<GrowthSpec>,
        #[arg(long)]
        n: usize,
    },
    /// Certified quotients along the extremal years.
    Trajectory {
        #[arg(long)]
        alpha: GrowthSpec,
        #[arg(long)]
        rmax: usize,
        #[arg(long, default_value_t = 3)]
        guard: usize,
    },
    /// Prefixes with d_n <= n + c and their jump positions.
    Zc {
        #[arg(long)]
        c: Rat,
        #[arg(long, default_value_t = 1)]
        start_index: usize,
        #[arg(long)]
        depth: usize,
    },
    /// log(d_n)/n over seeded random dyadic rationals.
    LlnSample {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 128)]
        bits: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct LeapArgs {
    #[arg(long = "rule", value_name = "RULE")]
    rule_flag: Option<IntercalationRule>,
    #[arg(long = "year", value_name = "YEAR")]
    year_flag: Option<u64>,
    /// Rule and year given positionally.
    #[arg(value_name = "RULE YEAR", num_args = 0..=2)]
    positional: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RuleArg {
    #[arg(long)]
    rule: IntercalationRule,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PointArg {
    /// The point as an exact rational.
    #[arg(long)]
    x: Option<Rat>,
    /// The point as a digit sequence; extendable prefixes give enclosures.
    #[arg(long = "digits")]
    point_digits: Option<DigitSeq>,
}

/// Rational argument in `p/q` or integer form.
#[derive(Debug, Clone)]
pub struct Rat(pub Rational);

impl std::str::FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        exact::parse_rational(s).map(Rat)
    }
}

enum Failure {
    Usage(clap::Error),
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

type Outcome = Result<i32, Failure>;

fn usage(kind: ErrorKind, msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(Cli::command().error(kind, msg))
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return report_clap(e, out, err),
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(e)) => report_clap(e, out, err),
        Err(Failure::Domain(e)) => {
            let body = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            let _ = writeln!(err, "{body}");
            1
        }
        Err(Failure::Io(e)) => {
            let body = json!({ "error": { "kind": "Io", "message": e.to_string() } });
            let _ = writeln!(err, "{body}");
            1
        }
    }
}

fn report_clap(e: clap::Error, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = e.render().to_string();
    if e.use_stderr() {
        let _ = write!(err, "{text}");
        2
    } else {
        let _ = write!(out, "{text}");
        0
    }
}

fn precision(cli: &Cli) -> Result<Precision, Failure> {
    let bits = match cli.precision {
        Some(bits) => bits,
        None => match std::env::var(PRECISION_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                usage(
                    ErrorKind::InvalidValue,
                    format!("{PRECISION_ENV} must be an integer"),
                )
            })?,
            Err(_) => return Ok(Precision::DEFAULT),
        },
    };
    Precision::new(bits).map_err(|e| usage(ErrorKind::InvalidValue, e))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let fmt = |default: Output| cli.output.unwrap_or(default);
    let places = cli.decimals;
    match &cli.command {
        Command::Expand { x } => {
            let s = pierce::encode(&x.0)?;
            match fmt(Output::Plain) {
                Output::Json => emit_json(
                    out,
                    &json!({ "x": exact::format_rational(&x.0), "digits": s.to_string(),
                             "canonical": s.is_canonical() }),
                )?,
                Output::Csv => write_csv(
                    out,
                    &["x", "digits"],
                    [[exact::format_rational(&x.0), s.to_string()]],
                )?,
                Output::Plain => writeln!(out, "{s}")?,
            }
        }
        Command::Decode { digits } => {
            let v = pierce::decode(digits)?;
            match fmt(Output::Plain) {
                Output::Json => emit_json(
                    out,
                    &json!({ "digits": digits.to_string(), "value": exact::format_rational(&v),
                             "decimal": exact::format_decimal(&v, places) }),
                )?,
                Output::Csv => write_csv(
                    out,
                    &["digits", "value"],
                    [[digits.to_string(), exact::format_rational(&v)]],
                )?,
                Output::Plain => writeln!(out, "{}", exact::format_rational(&v))?,
            }
        }
        Command::Step { x } => {
            let r = pierce::step(&x.0)?;
            let digit = match &r.digit {
                ExtDigit::Finite(d) => d.to_string(),
                ExtDigit::Infinity => "inf".to_string(),
            };
            let rem = exact::format_rational(&r.remainder);
            match fmt(Output::Plain) {
                Output::Json => emit_json(out, &json!({ "digit": digit, "remainder": rem }))?,
                Output::Csv => write_csv(out, &["digit", "remainder"], [[digit, rem]])?,
                Output::Plain => writeln!(out, "{digit} {rem}")?,
            }
        }
        Command::Interval { digits } => {
            let i = intervals::fundamental_interval(digits)?;
            emit_intervals(out, fmt(Output::Plain), &[i])?;
        }
        Command::Children { digits, jmax } => {
            let items = intervals::children(digits, jmax)?;
            emit_intervals(out, fmt(Output::Csv), &items)?;
        }
        Command::FindInterval { a, b } => {
            let sigma = intervals::find_interval_within(&a.0, &b.0)?;
            let i = intervals::fundamental_interval(&sigma)?;
            match fmt(Output::Plain) {
                Output::Plain => writeln!(out, "{} {}", sigma, i.notation())?,
                other => emit_intervals(out, other, &[i])?,
            }
        }
        Command::Leap(args) => {
            let (rule, year) = leap_args(args)?;
            let leap = calendar::is_leap(&rule, year)?;
            match fmt(Output::Plain) {
                Output::Json => emit_json(
                    out,
                    &json!({ "rule": rule.to_string(), "year": year, "leap": leap }),
                )?,
                Output::Csv => write_csv(
                    out,
                    &["rule", "year", "leap"],
                    [[rule.to_string(), year.to_string(), leap.to_string()]],
                )?,
                Output::Plain => writeln!(out, "{leap}")?,
            }
        }
        Command::Count {
            rule,
            through,
            method,
        } => return count(out, fmt(Output::Plain), &rule.rule, through, *method),
        Command::Series { rule, n } => {
            let rule = &rule.rule;
            let n = match n {
                Some(n) => *n,
                None if rule.is_open_ended() => {
                    return Err(usage(
                        ErrorKind::MissingRequiredArgument,
                        "open-ended rules need --n",
                    ))
                }
                None => rule.terms().len(),
            };
            let v = calendar::series_value(rule, n)?;
            match fmt(Output::Plain) {
                Output::Json => emit_json(out, &json!({ "rule": rule.to_string(), "value": v }))?,
                Output::Csv => write_csv(
                    out,
                    &["rule", "lo", "hi"],
                    [[
                        rule.to_string(),
                        exact::format_rational(v.lo()),
                        exact::format_rational(v.hi()),
                    ]],
                )?,
                Output::Plain if v.is_point() => writeln!(
                    out,
                    "{} ({})",
                    exact::format_rational(v.lo()),
                    exact::format_decimal(v.lo(), places)
                )?,
                Output::Plain => writeln!(
                    out,
                    "{v} ({}, {})",
                    exact::format_decimal(v.lo(), places),
                    exact::format_decimal(v.hi(), places)
                )?,
            }
        }
        Command::Drift {
            rule,
            point,
            year,
            through,
        } => {
            let x = match (&point.x, &point.point_digits) {
                (Some(x), _) => Enclosure::point(x.0.clone()),
                (None, Some(s)) => pierce::enclose_all(s)?,
                (None, None) => unreachable!("clap enforces the group"),
            };
            let years: Vec<BigUint> = match (year, through) {
                (Some(y), None) => vec![y.clone()],
                (None, Some(t)) => (1..=*t).map(BigUint::from).collect(),
                _ => {
                    return Err(usage(
                        ErrorKind::MissingRequiredArgument,
                        "drift needs --year or --through",
                    ))
                }
            };
            let records = years
                .iter()
                .map(|n| calendar::drift(&x, &rule.rule, n))
                .collect::<Result<Vec<_>, _>>()?;
            match fmt(Output::Csv) {
                Output::Json => emit_json(out, &records)?,
                Output::Csv => write_csv(
                    out,
                    &["N", "L", "drift_lo", "drift_hi"],
                    records.iter().map(|r| {
                        [
                            r.year.to_string(),
                            r.leap_count.to_string(),
                            exact::format_rational(r.drift.lo()),
                            exact::format_rational(r.drift.hi()),
                        ]
                    }),
                )?,
                Output::Plain => {
                    for r in &records {
                        writeln!(out, "{} {} {}", r.year, r.leap_count, r.drift)?;
                    }
                }
            }
        }
        Command::Construct { alpha, n } => {
            let s = law::construct_digits(alpha, *n, precision(cli)?)?;
            match fmt(Output::Plain) {
                Output::Json => emit_json(
                    out,
                    &json!({ "alpha": alpha.to_string(), "digits": s.to_string() }),
                )?,
                Output::Csv => write_csv(
                    out,
                    &["k", "d"],
                    s.digits()
                        .iter()
                        .enumerate()
                        .map(|(k, d)| [(k + 1).to_string(), d.to_string()]),
                )?,
                Output::Plain => writeln!(out, "{s}")?,
            }
        }
        Command::Diagnose { digits, alpha, n } => {
            let prec = precision(cli)?;
            let s = match (digits, alpha) {
                (Some(s), _) => s.clone(),
                (None, Some(a)) => law::construct_digits(a, *n, prec)?,
                (None, None) => {
                    return Err(usage(
                        ErrorKind::MissingRequiredArgument,
                        "diagnose needs --digits or --alpha",
                    ))
                }
            };
            let growth = law::growth_rate(&s, *n, prec)?;
            let product = law::log_product_rate(&s, *n, prec)?;
            let recip = law::reciprocal_partial_sum(&s, *n)?;
            match fmt(Output::Plain) {
                Output::Json => emit_json(
                    out,
                    &json!({ "n": n, "growthRate": growth, "logProductRate": product,
                             "reciprocalSum": exact::format_rational(&recip) }),
                )?,
                Output::Csv => write_csv(
                    out,
                    &[
                        "n",
                        "growth_lo",
                        "growth_hi",
                        "log_product_lo",
                        "log_product_hi",
                        "reciprocal_sum",
                    ],
                    [[
                        n.to_string(),
                        exact::format_rational(growth.lo()),
                        exact::format_rational(growth.hi()),
                        exact::format_rational(product.lo()),
                        exact::format_rational(product.hi()),
                        exact::format_rational(&recip),
                    ]],
                )?,
                Output::Plain => {
                    writeln!(out, "growth_rate {}", decimal_range(&growth, places))?;
                    writeln!(out, "log_product_rate {}", decimal_range(&product, places))?;
                    writeln!(
                        out,
                        "reciprocal_sum {} ({})",
                        exact::format_rational(&recip),
                        exact::format_decimal(&recip, places)
                    )?;
                }
            }
        }
        Command::Trajectory { alpha, rmax, guard } => {
            let rows = law::trajectory(alpha, *rmax, *guard, precision(cli)?)?;
            emit_trajectory(out, fmt(Output::Csv), &rows, places)?;
        }
        Command::Zc {
            c,
            start_index,
            depth,
        } => {
            let items = digits::enumerate_zc(&c.0, *start_index, *depth)?;
            let rows = items
                .iter()
                .map(|p| {
                    let jumps = digits::jump_positions(p)?;
                    let jumps: Vec<String> = jumps.iter().map(usize::to_string).collect();
                    Ok([p.prefix().to_string(), jumps.join(" ")])
                })
                .collect::<Result<Vec<_>, Error>>()?;
            match fmt(Output::Csv) {
                Output::Json => emit_json(
                    out,
                    &rows
                        .iter()
                        .map(|[p, j]| json!({ "prefix": p, "jumps": j }))
                        .collect::<Vec<_>>(),
                )?,
                Output::Csv => write_csv(out, &["prefix", "jumps"], rows)?,
                Output::Plain => {
                    for [p, j] in &rows {
                        writeln!(out, "{p} [{j}]")?;
                    }
                }
            }
        }
        Command::LlnSample {
            count,
            bits,
            n,
            seed,
        } => {
            let sample = law::lln_sample(*count, *bits, *n, *seed, precision(cli)?)?;
            match fmt(Output::Plain) {
                Output::Json => emit_json(out, &sample)?,
                Output::Csv => write_csv(
                    out,
                    &["x", "rate_lo", "rate_hi"],
                    sample.samples.iter().map(|p| {
                        let (lo, hi) = match &p.rate {
                            Some(e) => (
                                exact::format_rational(e.lo()),
                                exact::format_rational(e.hi()),
                            ),
                            None => (String::new(), String::new()),
                        };
                        [exact::format_rational(&p.x), lo, hi]
                    }),
                )?,
                Output::Plain => {
                    writeln!(out, "count {} skipped {}", sample.count, sample.skipped)?;
                    match &sample.mean {
                        Some(m) => writeln!(out, "mean {}", decimal_range(m, places))?,
                        None => writeln!(out, "mean none")?,
                    }
                }
            }
        }
    }
    Ok(0)
}

fn leap_args(args: &LeapArgs) -> Result<(IntercalationRule, u64), Failure> {
    let mut rule = args.rule_flag.clone();
    let mut year = args.year_flag;
    let mut rest = args.positional.iter();
    if rule.is_none() {
        if let Some(p) = rest.next() {
            rule = Some(
                p.parse()
                    .map_err(|e: Error| usage(ErrorKind::InvalidValue, e))?,
            );
        }
    }
    if year.is_none() {
        if let Some(p) = rest.next() {
            year = Some(
                p.parse()
                    .map_err(|_| usage(ErrorKind::InvalidValue, format!("bad year {p:?}")))?,
            );
        }
    }
    if rest.next().is_some() {
        return Err(usage(
            ErrorKind::TooManyValues,
            "leap takes one rule and one year",
        ));
    }
    match (rule, year) {
        (Some(r), Some(y)) => Ok((r, y)),
        (None, _) => Err(usage(
            ErrorKind::MissingRequiredArgument,
            "leap needs a rule (--rule gregorian)",
        )),
        (_, None) => Err(usage(
            ErrorKind::MissingRequiredArgument,
            "leap needs a year (--year 2028)",
        )),
    }
}

fn count(
    out: &mut dyn Write,
    output: Output,
    rule: &IntercalationRule,
    through: &BigUint,
    method: Method,
) -> Outcome {
    let direct = || -> Result<BigUint, Failure> {
        let n = through.to_u64().ok_or_else(|| {
            usage(
                ErrorKind::InvalidValue,
                "direct counting needs --through below 2^64",
            )
        })?;
        Ok(BigUint::from(calendar::count_leaps_direct(rule, n)?))
    };
    let formula = || calendar::count_leaps_formula(rule, through).map_err(Failure::from);
    let (values, agree) = match method {
        Method::Direct => (vec![direct()?], true),
        Method::Formula => (vec![formula()?], true),
        Method::Both => {
            let (d, f) = (direct()?, formula()?);
            let agree = d == f;
            (vec![d, f], agree)
        }
    };
    let text: Vec<String> = values.iter().map(BigUint::to_string).collect();
    match output {
        Output::Json => emit_json(
            out,
            &json!({ "rule": rule.to_string(), "through": through.to_string(),
                     "counts": text, "agree": agree }),
        )?,
        Output::Csv => {
            let mut header = vec!["rule", "through"];
            let mut row = vec![rule.to_string(), through.to_string()];
            match method {
                Method::Direct => header.push("direct"),
                Method::Formula => header.push("formula"),
                Method::Both => header.extend(["direct", "formula"]),
            }
            row.extend(text.iter().cloned());
            write_csv(out, &header, [row])?;
        }
        Output::Plain => writeln!(out, "{}", text.join(" "))?,
    }
    Ok(if agree { 0 } else { 1 })
}

fn decimal_range(e: &Enclosure, places: usize) -> String {
    if e.is_point() {
        exact::format_decimal(e.lo(), places)
    } else {
        format!(
            "[{}, {}]",
            exact::format_decimal(e.lo(), places),
            exact::format_decimal(e.hi(), places)
        )
    }
}

fn emit_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::other)?;
    writeln!(out)
}

fn write_csv<R, S>(
    out: &mut dyn Write,
    header: &[&str],
    rows: impl IntoIterator<Item = R>,
) -> Result<(), Failure>
where
    R: IntoIterator<Item = S>,
    S: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn emit_intervals(
    out: &mut dyn Write,
    output: Output,
    items: &[intervals::FundamentalInterval],
) -> Result<(), Failure> {
    match output {
        Output::Json if items.len() == 1 => emit_json(out, &items[0])?,
        Output::Json => emit_json(out, items)?,
        Output::Csv => write_csv(
            out,
            &["generator", "left", "right", "left_open", "right_open"],
            items.iter().map(|i| {
                [
                    i.generator().to_string(),
                    exact::format_rational(i.left()),
                    exact::format_rational(i.right()),
                    i.left_open().to_string(),
                    i.right_open().to_string(),
                ]
            }),
        )?,
        Output::Plain => {
            for i in items {
                writeln!(out, "{}", i.notation())?;
            }
        }
    }
    Ok(())
}

/// Column names of the trajectory CSV.
pub const TRAJECTORY_HEADER: [&str; 9] = [
    "branch",
    "r",
    "N",
    "L",
    "drift_lo",
    "drift_hi",
    "quotient_lo",
    "quotient_hi",
    "thm2",
];

/// One trajectory row as CSV fields; `thm2` is empty on the M branch.
pub fn trajectory_record(row: &TrajectoryRow) -> [String; 9] {
    [
        row.branch.to_string(),
        row.r.to_string(),
        row.year.to_string(),
        row.leap_count.to_string(),
        exact::format_rational(row.drift.lo()),
        exact::format_rational(row.drift.hi()),
        exact::format_rational(row.quotient.lo()),
        exact::format_rational(row.quotient.hi()),
        row.thm2.map(|b| b.to_string()).unwrap_or_default(),
    ]
}

/// Trajectory rows as CSV text with [`TRAJECTORY_HEADER`].
pub fn trajectory_csv(rows: &[TrajectoryRow]) -> String {
    let mut buf = Vec::new();
    write_csv(
        &mut buf,
        &TRAJECTORY_HEADER,
        rows.iter().map(trajectory_record),
    )
    .unwrap_or_else(|_| unreachable!("writing to memory does not fail"));
    String::from_utf8(buf).expect("CSV fields are UTF-8")
}

fn emit_trajectory(
    out: &mut dyn Write,
    output: Output,
    rows: &[TrajectoryRow],
    places: usize,
) -> Result<(), Failure> {
    match output {
        Output::Json => emit_json(out, rows)?,
        Output::Csv => out.write_all(trajectory_csv(rows).as_bytes())?,
        Output::Plain => {
            for row in rows {
                let thm2 = row.thm2.map(|b| format!(" thm2={b}")).unwrap_or_default();
                writeln!(
                    out,
                    "{} r={} drift={} quotient={}{}",
                    row.branch,
                    row.r,
                    decimal_range(&row.drift, places),
                    decimal_range(&row.quotient, places),
                    thm2
                )?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("pierce").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            call(&["leap", "--rule", "gregorian", "--year", "2028"]),
            (0, "true\n".into(), String::new())
        );
        assert_eq!(
            call(&[
                "count",
                "--rule",
                "4,25,4",
                "--through",
                "400",
                "--method",
                "both"
            ])
            .1,
            "97 97\n"
        );
        let (code, _, err) = call(&["leap", "--year", "2028"]);
        assert_eq!(code, 2);
        assert!(err.contains("rule"));
    }

    #[test]
    fn execute_examples() {
        assert_eq!(
            call(&["leap", "gregorian", "2100"]),
            (0, "false\n".into(), String::new())
        );
        assert_eq!(
            call(&["series", "--rule", "gregorian"]).1,
            "97/400 (0.2425)\n"
        );
        assert_eq!(call(&["series", "--rule", "julian"]).1, "1/4 (0.25)\n");
    }

    #[test]
    fn unknown_flags_are_usage_errors() {
        assert_eq!(call(&["expand", "1/2", "--bogus"]).0, 2);
        assert_eq!(call(&["expand", "1/x"]).0, 2);
    }

    #[test]
    fn domain_errors_are_json() {
        let (code, _, err) = call(&["expand", "3/2"]);
        assert_eq!(code, 1);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"]["kind"], "OutOfDomain");
    }
}
