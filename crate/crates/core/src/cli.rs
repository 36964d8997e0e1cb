//! Command-line front end. Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::completions::{
    check_transform, eval_r6, eval_shadow, family, lift_check, max_dist, sample_taus, xi_fd, CompletionError, CompletionFamily, FamilyLabel, Generator,
    R6Method, XI_STEP,
};
use crate::identities::{select, verify_all, VerifyReport, VERIFY_TOLERANCE};
use crate::numerics::{fmt_float, BigComplex, PrecisionContext, DIGITS_ENV};
use crate::qseries::{lookup, theta_na_expansion, EFunction, ExpansionRecord, FourierExpansion, SeriesId};
use crate::traces::{trace_result, TraceRecord};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "mocktheta", version, about = "Mock theta completions, trace formulas and coefficient checks")]
pub struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = DIGITS_ENV)]
    pub digits: Option<u32>,
    /// Output format. CSV columns: `expand` exponent,numerator,denominator;
    /// `verify` key,n,D,r,formula,series,diff,pass; `complete-check` family,check,tau,residual,pass.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact q-expansion of a catalog series, a weight-0 input (`e61`, ...) or `theta`.
    Expand {
        id: String,
        /// Highest exponent.
        #[arg(long = "M", default_value_t = 20)]
        m: u64,
        /// Level of `theta`.
        #[arg(long = "N")]
        n: Option<u64>,
        /// Residue of `theta`.
        #[arg(long = "a")]
        a: Option<i64>,
    },
    /// Transformation-law residuals of a completion family at seeded random points.
    CompleteCheck {
        /// `order2`, `order3`, `order3b`, `order5`, `order6`, `order7`, `order8`, `order10` or a full label like `order6_2`.
        family: String,
        /// Variant for orders 5 and 6; both when omitted.
        #[arg(long)]
        j: Option<u8>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Estimate the shadow constant from finite differences.
        #[arg(long)]
        xi: bool,
        /// Also check the dual Weil lift.
        #[arg(long)]
        lift: bool,
        /// Compare both evaluations of the order-6 `S` defect.
        #[arg(long)]
        r6: bool,
        /// Residual tolerance; defaults to `10^(-digits/2)`.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Traces of a weight-0 input over Heegner orbits.
    Trace {
        /// Input tag: e61, e62, E6, e3, e51, e52, E5, e7, e10, const1.
        #[arg(long = "f")]
        f: String,
        #[arg(long = "N")]
        n: u64,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: i64,
        #[arg(long = "r", allow_hyphen_values = true)]
        r: i64,
    },
    /// Coefficient formulas against exact series.
    Verify {
        #[arg(long)]
        all: bool,
        /// `order3`, `order5`, `order6`, `order7`, `order10`.
        #[arg(long)]
        family: Option<String>,
        /// Function name (`sigma`, `2mu`, `F0`) or row key (`sigma6`).
        #[arg(long)]
        function: Option<String>,
        #[arg(long, default_value_t = 10)]
        nmax: u64,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { code: EXIT_USAGE, message: msg.into() }
}

fn failure(msg: impl ToString) -> CliError {
    CliError { code: EXIT_FAIL, message: msg.to_string() }
}

/// Rendered output and exit code.
pub struct Output {
    pub text: String,
    pub code: i32,
}

#[derive(Serialize)]
struct ExpandReport {
    schema: u32,
    id: String,
    #[serde(flatten)]
    record: ExpansionRecord,
}

#[derive(Serialize)]
struct ExpandRow {
    exponent: String,
    numerator: String,
    denominator: String,
}

fn expansion_for(id: &str, m: u64, n: Option<u64>, a: Option<i64>) -> Result<FourierExpansion, CliError> {
    if id == "theta" {
        let (n, a) = match (n, a) {
            (Some(n), Some(a)) if n > 0 => (n, a),
            _ => return Err(usage("theta needs --N > 0 and --a")),
        };
        return Ok(theta_na_expansion(n, a, m));
    }
    if let Some(f) = EFunction::parse(id) {
        return Ok(f.expansion(m as usize));
    }
    let sid = SeriesId::parse(id).map_err(|_| usage(format!("unknown series id `{id}`")))?;
    Ok(lookup(&sid).map_err(|e| usage(e.to_string()))?.expansion(m as usize))
}

fn csv_string<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(failure)?;
    }
    String::from_utf8(w.into_inner().map_err(failure)?).map_err(failure)
}

fn json<T: Serialize>(x: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(x).map(|s| s + "\n").map_err(failure)
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.len());
        }
    }
    let line = |cells: Vec<&str>| cells.iter().enumerate().map(|(i, c)| format!("{c:<width$}", width = w[i])).collect::<Vec<_>>().join("  ").trim_end().to_string();
    let mut out = vec![line(header.to_vec())];
    out.push(w.iter().map(|n| "-".repeat(*n)).collect::<Vec<_>>().join("  "));
    out.extend(rows.iter().map(|r| line(r.iter().map(|s| s.as_str()).collect())));
    out.join("\n") + "\n"
}

fn cmd_expand(id: &str, m: u64, n: Option<u64>, a: Option<i64>, format: Format) -> Result<Output, CliError> {
    let s = expansion_for(id, m, n, a)?;
    let rec = s.to_record();
    let rows: Vec<ExpandRow> = rec
        .coeffs
        .iter()
        .map(|(k, num, den)| ExpandRow { exponent: rug::Rational::from((*k, rec.denom)).to_string(), numerator: num.clone(), denominator: den.clone() })
        .collect();
    let text = match format {
        Format::Json => json(&ExpandReport { schema: 1, id: id.into(), record: rec })?,
        Format::Csv => csv_string(&rows)?,
        Format::Table => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.exponent.clone(), if r.denominator == "1" { r.numerator.clone() } else { format!("{}/{}", r.numerator, r.denominator) }])
                .collect();
            table(&["exponent", "coefficient"], &body)
        }
    };
    Ok(Output { text, code: EXIT_PASS })
}

#[derive(Serialize, Clone)]
struct CheckRow {
    family: String,
    check: String,
    tau: String,
    residual: String,
    pass: bool,
}

#[derive(Serialize)]
struct CheckReport {
    schema: u32,
    digits: u32,
    seed: u64,
    samples: usize,
    tolerance: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    xi_constants: Vec<XiEstimate>,
    rows: Vec<CheckRow>,
    max_residual: String,
    pass: bool,
}

#[derive(Serialize)]
struct XiEstimate {
    family: String,
    estimated: String,
    expected: String,
    relative_error: String,
    pass: bool,
}

fn families_for(name: &str, j: Option<u8>) -> Result<Vec<FamilyLabel>, CliError> {
    let err = || usage(format!("unknown family `{name}`"));
    match (name, j) {
        ("order5" | "order6", None) => Ok(vec![FamilyLabel::parse(name, Some(1)).ok_or_else(err)?, FamilyLabel::parse(name, Some(2)).ok_or_else(err)?]),
        (_, Some(j)) if !matches!(name, "order5" | "order6") || !(1..=2).contains(&j) => Err(usage(format!("--j does not apply to `{name}`"))),
        _ => Ok(vec![FamilyLabel::parse(name, j).ok_or_else(err)?]),
    }
}

fn fmt_tau(t: &BigComplex) -> String {
    format!("{}+{}i", fmt_float(&t.re, 8), fmt_float(&t.im, 8))
}

/// Least-squares `c` with `xi H = c g`.
fn xi_estimate(fam: &CompletionFamily, tau: &BigComplex, ctx: &PrecisionContext) -> Result<XiEstimate, CompletionError> {
    let fd = xi_fd(fam, tau, XI_STEP, ctx)?;
    let g = eval_shadow(fam, tau, ctx)?;
    let mut num = BigComplex::zero(ctx);
    let mut den = ctx.zero();
    for (x, y) in fd.iter().zip(&g) {
        num += &y.conj() * x;
        den += y.norm_sqr();
    }
    let est = num.scale(&den.recip());
    let want = -fam.shadow()?.xi_const.value(ctx);
    let rel = (&est - &BigComplex::from_real(want.clone())).abs() / want.clone().abs();
    Ok(XiEstimate {
        family: fam.label.name().into(),
        estimated: fmt_float(&est.re, 12),
        expected: format!("-{}", fam.shadow()?.xi_const),
        relative_error: fmt_float(&rel, 3),
        pass: rel < 1e-6,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_complete_check(
    name: &str,
    j: Option<u8>,
    samples: usize,
    seed: u64,
    xi: bool,
    lift: bool,
    r6: bool,
    tol: Option<f64>,
    ctx: &PrecisionContext,
    format: Format,
) -> Result<Output, CliError> {
    let labels = families_for(name, j)?;
    let tol = tol.unwrap_or_else(|| format!("1e-{}", ctx.digits / 2).parse().expect("decimal literal"));
    let taus = sample_taus(seed, samples, ctx);
    let mut rows = Vec::new();
    let mut xis = Vec::new();
    let mut push = |fam: &str, check: &str, t: &BigComplex, r: f64| {
        rows.push(CheckRow { family: fam.into(), check: check.into(), tau: fmt_tau(t), residual: format!("{r:.3e}"), pass: r <= tol });
        r
    };
    let mut worst = 0.0f64;
    for l in &labels {
        let fam = family(*l);
        let gens: &[Generator] = if fam.shadow.is_some() { &[Generator::T, Generator::S] } else { &[Generator::T] };
        for t in &taus {
            for g in gens {
                let r = check_transform(&fam, *g, t, ctx).map_err(failure)?.to_f64();
                worst = worst.max(push(l.name(), g.as_str(), t, r));
            }
            if lift && fam.shadow.is_some() && fam.lift.is_some() {
                let c = lift_check(&fam, t, ctx).map_err(failure)?;
                worst = worst.max(push(l.name(), "lift-T", t, c.t_residual.to_f64()));
                worst = worst.max(push(l.name(), "lift-S", t, c.s_residual.to_f64()));
            }
        }
        if xi {
            if fam.shadow.is_none() {
                return Err(usage(format!("{l} has no shadow")));
            }
            xis.push(xi_estimate(&fam, &BigComplex::from_f64(0.1, 1.0, ctx), ctx).map_err(failure)?);
        }
    }
    if r6 {
        let fam = "order6";
        for t in taus.iter().take(5) {
            let a = eval_r6(t, R6Method::Mordell, ctx).map_err(failure)?;
            let b = eval_r6(t, R6Method::ThetaIntegral, ctx).map_err(failure)?;
            worst = worst.max(push(fam, "R6", t, max_dist(&a, &b).to_f64()));
        }
    }
    let pass = rows.iter().all(|r| r.pass) && xis.iter().all(|x| x.pass);
    let report = CheckReport {
        schema: 1,
        digits: ctx.digits,
        seed,
        samples,
        tolerance: format!("{tol:e}"),
        xi_constants: xis,
        rows: rows.clone(),
        max_residual: format!("{worst:.3e}"),
        pass,
    };
    let text = match format {
        Format::Json => json(&report)?,
        Format::Csv => csv_string(&rows)?,
        Format::Table => {
            let mut body: Vec<Vec<String>> = rows.iter().map(|r| vec![r.family.clone(), r.check.clone(), r.tau.clone(), r.residual.clone(), pass_str(r.pass)]).collect();
            for x in &report.xi_constants {
                body.push(vec![x.family.clone(), "xi".into(), format!("{} vs {}", x.estimated, x.expected), x.relative_error.clone(), pass_str(x.pass)]);
            }
            table(&["family", "check", "tau", "residual", "pass"], &body)
        }
    };
    Ok(Output { text, code: if pass { EXIT_PASS } else { EXIT_FAIL } })
}

fn pass_str(p: bool) -> String {
    if p { "pass" } else { "FAIL" }.into()
}

fn cmd_trace(f: &str, n: u64, d: i64, r: i64, ctx: &PrecisionContext, format: Format) -> Result<Output, CliError> {
    let func = EFunction::parse(f).ok_or_else(|| usage(format!("unknown input function `{f}`")))?;
    if n == 0 {
        return Err(usage("N must be positive"));
    }
    let t = trace_result(func, n, d, r, ctx).map_err(|e| if e.is_congruence_fail() { usage(e.to_string()) } else { failure(e) })?;
    let rec = TraceRecord::new(func, n, d, r, &t, ctx);
    let text = match format {
        Format::Json => json(&rec)?,
        Format::Csv => csv_string(&[TraceCsv::from(&rec)])?,
        Format::Table => table(
            &["quantity", "real", "imag"],
            &[
                vec!["tr+".into(), rec.plus[0].clone(), rec.plus[1].clone()],
                vec!["tr-".into(), rec.minus[0].clone(), rec.minus[1].clone()],
                vec!["i/sqrt(-D)(tr+ - tr-)".into(), rec.diff_over_sqrt[0].clone(), rec.diff_over_sqrt[1].clone()],
                vec!["orbits (+, -)".into(), rec.orbit_count_plus.to_string(), rec.orbit_count_minus.to_string()],
                vec!["certificate".into(), rec.certificate.clone(), String::new()],
            ],
        ),
    };
    Ok(Output { text, code: EXIT_PASS })
}

#[derive(Serialize)]
struct TraceCsv {
    function: String,
    #[serde(rename = "N")]
    n: u64,
    #[serde(rename = "D")]
    d: i64,
    r: i64,
    plus_re: String,
    plus_im: String,
    minus_re: String,
    minus_im: String,
    diff_re: String,
    diff_im: String,
    certificate: String,
}

impl From<&TraceRecord> for TraceCsv {
    fn from(r: &TraceRecord) -> Self {
        TraceCsv {
            function: r.function.clone(),
            n: r.n,
            d: r.d,
            r: r.r,
            plus_re: r.plus[0].clone(),
            plus_im: r.plus[1].clone(),
            minus_re: r.minus[0].clone(),
            minus_im: r.minus[1].clone(),
            diff_re: r.diff_over_sqrt[0].clone(),
            diff_im: r.diff_over_sqrt[1].clone(),
            certificate: r.certificate.clone(),
        }
    }
}

#[derive(Serialize)]
struct VerifyCsv<'a> {
    key: &'a str,
    n: u64,
    #[serde(rename = "D")]
    d: i64,
    r: i64,
    formula: &'a str,
    series: String,
    diff: &'a str,
    pass: bool,
}

fn render_verify(rep: &VerifyReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(rep),
        Format::Csv => csv_string(
            &rep.rows
                .iter()
                .map(|r| VerifyCsv { key: &r.key, n: r.n, d: r.d, r: r.r, formula: &r.formula, series: r.series.to_string(), diff: &r.diff, pass: r.pass })
                .collect::<Vec<_>>(),
        ),
        Format::Table => {
            let body: Vec<Vec<String>> = rep
                .rows
                .iter()
                .map(|r| vec![r.key.clone(), r.n.to_string(), r.d.to_string(), r.r.to_string(), r.formula.clone(), r.series.to_string(), r.diff.clone(), pass_str(r.pass)])
                .collect();
            let summary = format!("{} of {} rows pass (tolerance {VERIFY_TOLERANCE:e})\n", rep.rows.iter().filter(|r| r.pass).count(), rep.rows.len());
            Ok(table(&["row", "n", "D", "r", "formula", "series", "|diff|", "pass"], &body) + &summary)
        }
    }
}

fn cmd_verify(all: bool, fam: Option<&str>, function: Option<&str>, nmax: u64, ctx: &PrecisionContext, format: Format) -> Result<Output, CliError> {
    if !all && fam.is_none() && function.is_none() {
        return Err(usage("verify needs --all, --family or --function"));
    }
    let specs = if all { select(None, None) } else { select(fam, function) };
    if specs.is_empty() {
        return Err(usage("no formula matches the filters"));
    }
    let rep = verify_all(&specs, nmax, ctx).map_err(failure)?;
    Ok(Output { text: render_verify(&rep, format)?, code: if rep.pass { EXIT_PASS } else { EXIT_FAIL } })
}

/// Execute a parsed command line.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let ctx = match cli.digits {
        Some(0) => return Err(usage("--digits must be positive")),
        Some(d) => PrecisionContext::new(d),
        None => PrecisionContext::default(),
    };
    match &cli.command {
        Command::Expand { id, m, n, a } => cmd_expand(id, *m, *n, *a, cli.format),
        Command::CompleteCheck { family, j, samples, seed, xi, lift, r6, tol } => {
            cmd_complete_check(family, *j, *samples, *seed, *xi, *lift, *r6, *tol, &ctx, cli.format)
        }
        Command::Trace { f, n, d, r } => cmd_trace(f, *n, *d, *r, &ctx, cli.format),
        Command::Verify { all, family, function, nmax } => cmd_verify(*all, family.as_deref(), function.as_deref(), *nmax, &ctx, cli.format),
    }
}

/// Parse, run and write output; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, out.text.as_bytes()),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
