//! Command-line front end. Every subcommand builds a [`Report`] that renders
//! as JSON, CSV (rows only, nested fields flattened with dots) or text.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::arith::{parse_rat, BigRat};
use crate::cf::{cf_vs_recursion, digits_report, CFExpansion};
use crate::conjecture::{den_lcm_growth, perron_basis_check, verify_counterexample, x_sequence};
use crate::error::Error;
use crate::group::{
    generate_group, generators, orbit, probe_denominators, reference_primed, stability_check,
    CVector,
};
use crate::hyper::{catalan, sci, EvalMode, HpReal};
use crate::linear_forms::{forms_table, Family};
use crate::recurrence::{catalan_recursion, integrality_row, SeqKind};

pub const PRECISION_ENV: &str = "CATALAN_FORMS_PRECISION_BITS";
pub const DEFAULT_PRECISION: u32 = 256;
pub const MIN_PRECISION: u32 = 64;
pub const DEFAULT_DENOMINATOR_CAP: u64 = 1_000_000_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERTIFICATE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "catalan-forms",
    version,
    about = "Exact linear forms in Catalan's constant"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Inclusive index range `A..B`.
    #[arg(long, global = true, value_parser = parse_range)]
    pub n_range: Option<RangeInclusive<u64>>,
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = PRECISION_ENV, default_value_t = DEFAULT_PRECISION)]
    pub precision_bits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Bits allowed beyond `4n + ⌈log₂ 2n⌉` in integrality certificates, and
    /// the slack in the denominator bound of `group probe`.
    #[arg(long, global = true, default_value_t = crate::recurrence::DEFAULT_SLACK)]
    pub slack_budget: u32,
    /// Largest denominator accepted by relation detection.
    #[arg(long, global = true, default_value_t = BigInt::from(DEFAULT_DENOMINATOR_CAP))]
    pub denominator_cap: BigInt,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact `(u_n, v_n)` with denominator certificates.
    Forms {
        #[arg(long, value_enum, default_value_t = FamilyArg::Tilde)]
        family: FamilyArg,
    },
    /// The order-120 group acting on `₃F₂(1)` parameters.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Convergents of the continued fraction for `6G`.
    Cf,
    /// Perron-basis diagnostics and the explicit counterexample sequences.
    Conjecture,
    /// `G` from the recursion, cross-checked against an alternating-series sum.
    ReferenceG {
        #[arg(long, default_value_t = 30)]
        digits: u32,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Original,
    Tilde,
}

#[derive(Subcommand, Debug)]
pub enum GroupAction {
    Order,
    Orbit {
        /// `c00,c21,c22,c33,c31` as exact rationals.
        #[arg(long, value_parser = parse_primed, allow_hyphen_values = true)]
        c: Option<CVector>,
    },
    Stability {
        #[arg(long, value_parser = parse_primed, allow_hyphen_values = true)]
        c: Option<CVector>,
    },
    Probe,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let a = u64::from_str(a.trim()).map_err(|e| e.to_string())?;
    let b = u64::from_str(b.trim()).map_err(|e| e.to_string())?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

fn parse_primed(s: &str) -> Result<CVector, String> {
    let parts = s
        .split(',')
        .map(parse_rat)
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let arr: [BigRat; 5] = parts
        .try_into()
        .map_err(|_| "expected five entries c00,c21,c22,c33,c31".to_string())?;
    Ok(CVector::from_primed(arr))
}

/// Validated options shared by every subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub n_range: Option<(u64, u64)>,
    pub output_format: Format,
    pub slack_budget: u32,
    pub denominator_cap: String,
}

impl RunConfig {
    fn from_opts(o: &GlobalOpts) -> Result<Self, CliError> {
        if o.precision_bits < MIN_PRECISION {
            return Err(CliError::Usage(format!(
                "precision must be at least {MIN_PRECISION} bits, got {}",
                o.precision_bits
            )));
        }
        if !o.denominator_cap.is_positive() {
            return Err(CliError::Usage("denominator cap must be positive".into()));
        }
        Ok(RunConfig {
            precision_bits: o.precision_bits,
            n_range: o.n_range.as_ref().map(|r| (*r.start(), *r.end())),
            output_format: o.format,
            slack_budget: o.slack_budget,
            denominator_cap: o.denominator_cap.to_string(),
        })
    }

    fn range_or(&self, default: RangeInclusive<u64>) -> RangeInclusive<u64> {
        self.n_range.map_or(default, |(a, b)| a..=b)
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Run(e) if e.is_precision_failure() => EXIT_PRECISION,
            CliError::Run(Error::Inadmissible { .. } | Error::IllFormed(_) | Error::Domain(_)) => {
                EXIT_USAGE
            }
            CliError::Run(_) => EXIT_CERTIFICATE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Run(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    CertificateFailure,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub status: Status,
    pub summary: Map<String, Value>,
    pub rows: Vec<Value>,
}

impl Report {
    fn new(command: &str, config: &RunConfig) -> Self {
        Report {
            command: command.into(),
            config: config.clone(),
            status: Status::Pass,
            summary: Map::new(),
            rows: Vec::new(),
        }
    }

    fn note(&mut self, key: &str, v: impl Serialize) {
        self.summary.insert(key.into(), to_value(v));
    }

    fn fail_unless(&mut self, ok: bool) {
        if !ok {
            self.status = Status::CertificateFailure;
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => EXIT_OK,
            Status::CertificateFailure => EXIT_CERTIFICATE,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => render_csv(&self.rows),
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = format!("{} [{}]\n", self.command, status_name(self.status));
        for (k, v) in &self.summary {
            s += &format!("  {k}: {}\n", scalar(v));
        }
        let flat: Vec<Vec<(String, String)>> = self.rows.iter().map(flatten).collect();
        if let Some(first) = flat.first() {
            s += &first
                .iter()
                .map(|(k, _)| k.as_str())
                .collect::<Vec<_>>()
                .join("\t");
            s.push('\n');
            for row in &flat {
                s += &row
                    .iter()
                    .map(|(_, v)| v.as_str())
                    .collect::<Vec<_>>()
                    .join("\t");
                s.push('\n');
            }
        }
        s
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::CertificateFailure => "certificate failure",
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flatten(v: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    go(&key, x, out);
                }
            }
            other => out.push((prefix.to_string(), scalar(other))),
        }
    }
    let mut out = Vec::new();
    go("", v, &mut out);
    out
}

fn render_csv(rows: &[Value]) -> String {
    let flat: Vec<Vec<(String, String)>> = rows.iter().map(flatten).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = flat.first() {
        w.write_record(first.iter().map(|(k, _)| k))
            .expect("in-memory write");
        for row in &flat {
            w.write_record(row.iter().map(|(_, v)| v))
                .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn rat_str(r: &BigRat) -> String {
    r.to_string()
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = RunConfig::from_opts(&cli.opts)?;
    let opts = &cli.opts;
    match &cli.command {
        Command::Forms { family } => cmd_forms(&cfg, *family),
        Command::Group { action } => match action {
            GroupAction::Order => cmd_group_order(&cfg),
            GroupAction::Orbit { c } => {
                cmd_group_orbit(&cfg, c.clone().unwrap_or_else(reference_primed))
            }
            GroupAction::Stability { c } => {
                cmd_group_stability(&cfg, c.clone().unwrap_or_else(reference_primed))
            }
            GroupAction::Probe => cmd_group_probe(&cfg, &opts.denominator_cap),
        },
        Command::Cf => cmd_cf(&cfg),
        Command::Conjecture => cmd_conjecture(&cfg),
        Command::ReferenceG { digits } => cmd_reference_g(&cfg, *digits),
    }
}

pub fn cmd_forms(cfg: &RunConfig, family: FamilyArg) -> Result<Report, CliError> {
    let range = cfg.range_or(0..=10);
    let fam = match family {
        FamilyArg::Original => Family::Original,
        FamilyArg::Tilde => Family::Tilde,
    };
    let forms = forms_table(fam, range.clone())?;
    let mut rep = Report::new("forms", cfg);
    rep.note("family", format!("{family:?}").to_lowercase());
    let mut failures = 0usize;
    for (n, f) in range.zip(&forms) {
        let cu = integrality_row(n as usize, &f.u, SeqKind::U, cfg.slack_budget);
        let cv = integrality_row(n as usize, &f.v, SeqKind::V, cfg.slack_budget);
        let pass = cu.pass && cv.pass;
        failures += usize::from(!pass);
        rep.rows.push(json!({
            "n": n,
            "u": rat_str(&f.u),
            "v": rat_str(&f.v),
            "u_exponent": cu.exponent,
            "v_exponent": cv.exponent,
            "bound": cu.bound,
            "strong": cu.strong && cv.strong,
            "u_witness_prime": cu.witness_prime,
            "v_witness_prime": cv.witness_prime,
            "certificate": if pass { "pass" } else { "fail" },
        }));
    }
    rep.note("failures", failures);
    rep.fail_unless(failures == 0);
    Ok(rep)
}

pub fn cmd_group_order(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = generate_group()?;
    let mut rep = Report::new("group order", cfg);
    rep.note("order", g.order());
    rep.note("max_word_length", g.max_word_length());
    for (name, p) in generators() {
        rep.note(&format!("generator_{name}"), p.cycles());
    }
    for (i, e) in g.elements.iter().enumerate() {
        let word = if e.word.is_empty() {
            "id".to_string()
        } else {
            e.word.join("·")
        };
        rep.rows.push(
            json!({ "index": i, "word": word, "cycles": e.perm.cycles(), "order": e.perm.order() }),
        );
    }
    Ok(rep)
}

pub fn cmd_group_orbit(cfg: &RunConfig, c: CVector) -> Result<Report, CliError> {
    c.check_admissible()?;
    let g = generate_group()?;
    let orb = orbit(&c, &g)?;
    let mut rep = Report::new("group orbit", cfg);
    rep.note("c", &c);
    rep.note("orbit_size", orb.len());
    rep.note("admissible", orb.iter().filter(|o| o.admissible).count());
    rep.note(
        "demi_integral",
        orb.iter().filter(|o| o.demi_integral).count(),
    );
    rep.rows = orb.iter().map(to_value).collect();
    Ok(rep)
}

pub fn cmd_group_stability(cfg: &RunConfig, c: CVector) -> Result<Report, CliError> {
    c.check_admissible()?;
    let bits = cfg.precision_bits;
    let tol = HpReal::ulp(bits / 3);
    let mut rep = Report::new("group stability", cfg);
    rep.note("c", &c);
    rep.note("tolerance", sci(&tol));
    let mut all = true;
    for (name, g) in generators() {
        let s = stability_check(&c, &g, bits, &EvalMode::Extrapolated)?;
        let ok = s.sqrt_pi_difference == 0 && s.residual < tol;
        all &= ok;
        rep.rows.push(json!({
            "generator": name,
            "sigma": s.sigma,
            "sqrt_pi_difference": s.sqrt_pi_difference,
            "residual": sci(&s.residual),
            "error_estimate": sci(&s.error),
            "method": s.method,
            "pass": ok,
        }));
    }
    rep.fail_unless(all);
    Ok(rep)
}

pub fn cmd_group_probe(cfg: &RunConfig, cap: &BigInt) -> Result<Report, CliError> {
    let rows = probe_denominators(
        &crate::group::probe_vectors(),
        cfg.precision_bits,
        cfg.slack_budget,
        cap,
    )?;
    let mut rep = Report::new("group probe", cfg);
    rep.note("experimental", true);
    rep.note("vectors", rows.len());
    rep.note(
        "divisible",
        rows.iter().filter(|r| r.divides == Some(true)).count(),
    );
    rep.note(
        "relations_found",
        rows.iter().filter(|r| r.divides.is_some()).count(),
    );
    rep.rows = rows.iter().map(to_value).collect();
    Ok(rep)
}

pub fn cmd_cf(cfg: &RunConfig) -> Result<Report, CliError> {
    let range = cfg.range_or(1..=20);
    if *range.start() < 1 {
        return Err(CliError::Usage("cf needs N ≥ 1".into()));
    }
    let (a, b) = (*range.start() as usize, *range.end() as usize);
    let bits = cfg.precision_bits.max(7 * b as u32 + 64);
    let g = catalan(bits);
    let rec = cf_vs_recursion(&CFExpansion::new(), b)?;
    let digits = digits_report(a..=b, &g)?;
    let mut rep = Report::new("cf", cfg);
    rep.note("g_bits", bits);
    rep.note("first_failure", rec.first_failure);
    for d in &digits {
        let r = &rec.rows[d.n - 1];
        rep.rows.push(json!({
            "n": d.n,
            "convergent": rat_str(&r.convergent),
            "digits": d.digits,
            "expected_digits": format!("{:.1}", d.expected),
            "matches_recursion": r.matches_recursion,
        }));
    }
    rep.fail_unless(rec.first_failure.is_none());
    Ok(rep)
}

pub fn cmd_conjecture(cfg: &RunConfig) -> Result<Report, CliError> {
    let n_max = *cfg.range_or(0..=500).end() as usize;
    if n_max < 10 {
        return Err(CliError::Usage("conjecture needs N ≥ 10".into()));
    }
    let ce = verify_counterexample(n_max);
    let x_trace = den_lcm_growth(&x_sequence(n_max.min(60)));
    let u = catalan_recursion().iterate(BigRat::zero(), BigRat::from_integer(6.into()), n_max)?;
    let u_trace = den_lcm_growth(&u);
    let perron = perron_basis_check(n_max)?;
    let mut rep = Report::new("conjecture", cfg);
    rep.note("counterexample", &ce);
    rep.note("x_lcm_trace_last", x_trace.trace.last());
    rep.note("x_lcm_trace_increasing_from", x_trace.increasing_from());
    rep.note("u_lcm_trace_max", u_trace.max());
    rep.note("u_lcm_trace_last", u_trace.trace.last());
    rep.note("four_ln2", 4.0 * std::f64::consts::LN_2);
    rep.note("root_larger", &perron.root_larger);
    rep.note("root_smaller", &perron.root_smaller);
    rep.note("root_product", &perron.root_product);
    for r in perron.rows.iter().filter(|r| r.n % 10 == 0 || r.n == n_max) {
        rep.rows.push(json!({
            "n": r.n,
            "u_ratio": r.u_ratio,
            "r_ratio": r.r_ratio,
            "u_residual": r.u_residual,
            "r_residual": r.r_residual,
            "u_lcm_trace": u_trace.trace.get(r.n),
        }));
    }
    rep.fail_unless(ce.exact_pass());
    Ok(rep)
}

/// `G` as `ṽ_m/ũ_m`, with the error estimated by `|ṽ_n/ũ_n − ṽ_m/ũ_m|` for
/// `n = m − 3`, then compared against the alternating-series value.
pub fn cmd_reference_g(cfg: &RunConfig, digits: u32) -> Result<Report, CliError> {
    let bits = cfg.precision_bits;
    let need = (digits as f64 / std::f64::consts::LOG10_2).ceil() as u32 + 16;
    if need > bits {
        return Err(Error::PrecisionUnreachable(format!(
            "{digits} digits need {need} bits, precision is {bits}"
        ))
        .into());
    }
    let target = BigRat::new(1.into(), BigInt::from(10).pow(digits + 1));
    let rec = catalan_recursion();
    let mut m = ((digits as f64 + 4.0) / 2.09).ceil() as usize + 4;
    let (value, bound) = loop {
        let u = rec.iterate(BigRat::zero(), BigRat::from_integer(6.into()), m)?;
        let v = rec.iterate(
            -BigRat::from_integer(1.into()),
            BigRat::from_integer(5.into()),
            m,
        )?;
        let xm = &v[m] / &u[m];
        let bound = (&v[m - 3] / &u[m - 3] - &xm).abs();
        if bound < target {
            break (xm, bound);
        }
        m += 4;
    };
    let oracle = catalan(bits);
    let diff = (&value - oracle.to_rat()).abs();
    let agrees = diff <= &bound + HpReal::ulp(bits);
    let mut rep = Report::new("reference-g", cfg);
    rep.note("digits", digits);
    rep.note("index", m);
    rep.note("error_bound", sci(&bound));
    rep.note("oracle_difference", sci(&diff));
    rep.note("agrees_with_oracle", agrees);
    rep.note(
        "g",
        HpReal::from_rat(&value, bits).to_decimal(digits as usize),
    );
    rep.fail_unless(agrees);
    Ok(rep)
}

/// Parses `args`, runs the subcommand, writes the report to `out` and
/// diagnostics to `err`, and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match run(&cli) {
        Ok(rep) => {
            let _ = out.write_all(rep.render(cli.opts.format).as_bytes());
            if rep.status != Status::Pass {
                let _ = writeln!(err, "{}: certificate failure", rep.command);
            }
            rep.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("catalan-forms").chain(args.iter().copied());
        let code = main_with_args(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn exit_code_mapping() {
        let cfg = RunConfig::from_opts(&Cli::try_parse_from(["x", "cf"]).unwrap().opts).unwrap();
        let mut rep = Report::new("t", &cfg);
        assert_eq!(rep.exit_code(), EXIT_OK);
        rep.fail_unless(false);
        assert_eq!(rep.exit_code(), EXIT_CERTIFICATE);
        assert_eq!(
            CliError::Run(Error::PrecisionUnreachable("x".into())).exit_code(),
            EXIT_PRECISION
        );
        assert_eq!(
            CliError::Run(Error::BudgetExceeded {
                budget: 1,
                achieved: 1.0
            })
            .exit_code(),
            EXIT_PRECISION
        );
        assert_eq!(
            CliError::Run(Error::LeadingCoefficientVanishes(0)).exit_code(),
            EXIT_CERTIFICATE
        );
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_USAGE);
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..2").unwrap(), 1..=2);
        assert_eq!(parse_range("3..=5").unwrap(), 3..=5);
        assert!(parse_range("5..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["forms", "--n-range", "3..1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["cf", "--precision-bits", "32"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn tilde_forms_rows() {
        let (code, out, _) = run_args(&["forms", "--n-range", "1..2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(
            (rows[0]["u"].as_str(), rows[0]["v"].as_str()),
            (Some("6"), Some("5"))
        );
        assert_eq!(
            (rows[1]["u"].as_str(), rows[1]["v"].as_str()),
            (Some("115/2"), Some("1897/36"))
        );
        assert_eq!(rows[1]["certificate"], "pass");
    }

    #[test]
    fn original_forms_at_zero() {
        let (code, out, _) = run_args(&[
            "forms",
            "--family",
            "original",
            "--n-range",
            "0..0",
            "--format",
            "csv",
        ]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        let get = |k: &str| row[header.iter().position(|h| *h == k).unwrap()];
        assert_eq!(
            (get("n"), get("u"), get("v"), get("certificate")),
            ("0", "1", "0", "pass")
        );
    }

    #[test]
    fn cf_first_convergent() {
        let (code, out, _) = run_args(&["cf", "--n-range", "1..1", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.contains("1897/345"), "{out}");
    }

    #[test]
    fn group_order_and_orbit() {
        let (code, out, _) = run_args(&["group", "order"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["summary"]["order"], 120);
        let (code, _, err) = run_args(&["group", "orbit", "--c", "-1,1/2,1,1/2,1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("c00"), "{err}");
    }

    #[test]
    fn reference_g_digits() {
        let (code, out, _) = run_args(&["reference-g", "--digits", "30"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["summary"]["g"], "0.915965594177219015054603514932");
        let (code, _, _) = run_args(&["reference-g", "--digits", "100", "--precision-bits", "64"]);
        assert_eq!(code, EXIT_PRECISION);
    }
}
