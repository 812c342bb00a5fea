//! Command-line front end: argument parsing, limits, dispatch and the output envelope.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive it in-process.

pub mod config;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modkernel::arithfun::{
    check_hardy_ramanujan, check_r4, check_three_squares, partition_series, theta_power,
    verify_cauchy, verify_gauss_identity, verify_jacobi_triple,
};
use modkernel::modforms::{
    check_eisenstein_congruence, delta_eta, eisenstein_e, eisenstein_gfrak, eisenstein_gstar,
    j_invariant_times_q,
};
use modkernel::padic::{kubota_leopoldt_rational, zeta_reg, IntPolynomial, PadicInt};
use modkernel::qseries::{format_rational, parse_rational};
use modkernel::tau::{
    deligne_sweep, hecke_sweep, lehmer_check, ramanujan_congruence_check, tau_eisenstein,
    tau_eta, tau_manin, TauCache,
};
use modkernel::{CongruenceReport, Error, QSeries, Rational};
use serde::Serialize;
use serde_json::{json, Value};

pub use config::Limits;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "modkernel", version, about = "Exact modular-form, tau and p-adic congruence checks")]
pub struct Cli {
    /// Output format for the envelope on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Limits file (TOML); overrides the MODKERNEL_CONFIG environment variable.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ramanujan's tau(n) by one or all methods.
    Tau(TauArgs),
    /// Truncated q-expansion of a named form.
    Qexp(QexpArgs),
    /// Run one of the identity or congruence checks.
    Check {
        #[command(subcommand)]
        check: Check,
    },
    /// p-adic zeta value (1 - p^k) zeta(-k), optionally with its c-regularised form.
    Pzeta(PzetaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TauMethod {
    Eta,
    Eisenstein,
    Manin,
    All,
}

#[derive(Debug, Args, Serialize)]
pub struct TauArgs {
    #[arg(short = 'n')]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = TauMethod::All)]
    pub method: TauMethod,
}

#[derive(Debug, Args, Serialize)]
pub struct QexpArgs {
    /// delta, E<k>, Gfrak<k>, Gstar<k>, j, partition or theta^<k>.
    pub form: String,
    #[arg(long, default_value_t = 20)]
    pub terms: usize,
    /// Prime for Gstar<k>.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct PzetaArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub p: u64,
    #[arg(long = "N", value_name = "N")]
    #[serde(rename = "N")]
    pub n: u32,
    /// Regulariser c > 1 prime to p.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u64>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Check {
    /// tau(n) = sigma_11(n) mod 691 for n <= nmax.
    #[command(name = "ramanujan-691")]
    Ramanujan691 {
        #[arg(long, default_value_t = 1000)]
        nmax: u64,
    },
    /// G*_k = G*_k' mod p^N (optionally the c-regularised variant).
    EisensteinCongruence {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        k2: u32,
        #[arg(long = "N", value_name = "N")]
        #[serde(rename = "N")]
        n: u32,
        #[arg(long, default_value_t = 100)]
        terms: usize,
        #[arg(long)]
        #[serde(skip_serializing_if = "Option::is_none")]
        c: Option<u64>,
    },
    /// Kummer congruence for an integer polynomial h vanishing on units mod p^N.
    Kummer {
        #[arg(long)]
        p: u64,
        #[arg(long = "N", value_name = "N")]
        #[serde(rename = "N")]
        n: u32,
        #[arg(long, default_value_t = 2)]
        c: u64,
        #[arg(long)]
        h: String,
    },
    /// Gauss's triangular-number identity.
    GaussIdentity {
        #[arg(long, default_value_t = 100)]
        terms: usize,
    },
    /// Jacobi triple product at a nonzero rational u.
    JacobiTriple {
        #[arg(long, default_value = "1")]
        u: String,
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
    /// Cauchy's q-binomial identity at rationals a and t != 1.
    Cauchy {
        #[arg(long)]
        a: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
    /// theta^4 coefficients against Jacobi's four-squares formula.
    R4 {
        #[arg(long, default_value_t = 2000)]
        nmax: usize,
    },
    /// Gauss's three-squares criterion against theta^3 coefficients.
    ThreeSquares {
        #[arg(long, default_value_t = 2000)]
        nmax: usize,
    },
    /// tau(p)^2 < 4 p^11 for primes p <= pmax.
    Deligne {
        #[arg(long, default_value_t = 500)]
        pmax: u64,
    },
    /// No n <= nmax with tau(n) = 0.
    Lehmer {
        #[arg(long, default_value_t = 10_000)]
        nmax: u64,
    },
    /// Hecke multiplicativity relations for m, n <= max.
    Hecke {
        #[arg(long, default_value_t = 30)]
        max: u64,
    },
    /// p(n) against the Hardy-Ramanujan leading term.
    HardyRamanujan {
        #[arg(short = 'n', long = "n", default_value_t = 1000)]
        n: u64,
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
    },
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::Ramanujan691 { .. } => "ramanujan-691",
            Check::EisensteinCongruence { .. } => "eisenstein-congruence",
            Check::Kummer { .. } => "kummer",
            Check::GaussIdentity { .. } => "gauss-identity",
            Check::JacobiTriple { .. } => "jacobi-triple",
            Check::Cauchy { .. } => "cauchy",
            Check::R4 { .. } => "r4",
            Check::ThreeSquares { .. } => "three-squares",
            Check::Deligne { .. } => "deligne",
            Check::Lehmer { .. } => "lehmer",
            Check::Hecke { .. } => "hecke",
            Check::HardyRamanujan { .. } => "hardy-ramanujan",
        }
    }
}

/// A failure that ends the command, with its exit code and a stable kind name.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub kind: String,
    pub message: String,
    pub detail: Value,
}

impl Failure {
    fn usage(kind: &str, message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, kind: kind.into(), message: message.into(), detail: Value::Null }
    }

    fn limit(what: &str, value: impl std::fmt::Display, cap: impl std::fmt::Display) -> Self {
        Self::usage("LimitExceeded", format!("{what} = {value} exceeds the configured limit {cap}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_internal() {
            EXIT_INTERNAL
        } else {
            match e {
                Error::NonPIntegral { .. }
                | Error::HypothesisFails { .. }
                | Error::DenominatorNotPUnit { .. }
                | Error::DenominatorDivisibleByP(_) => EXIT_CHECK_FAILED,
                _ => EXIT_USAGE,
            }
        };
        let detail = match &e {
            Error::HypothesisFails { witness, modulus } => {
                json!({ "witness": witness.to_string(), "modulus": modulus.to_string() })
            }
            _ => Value::Null,
        };
        Failure { code, kind: e.kind().to_string(), message: e.to_string(), detail }
    }
}

/// Successful computation: the JSON payload, a human rendering and whether it passed.
struct Outcome {
    result: Value,
    text: String,
    passed: bool,
}

impl Outcome {
    fn value(result: Value, text: String) -> Self {
        Outcome { result, text, passed: true }
    }

    fn report(report: CongruenceReport) -> Self {
        let passed = report.passed;
        let mut text = report.to_string();
        if let Some(first) = report.first_failure {
            let _ = write!(text, "\nfirst failure at index {first}");
        }
        for note in &report.notes {
            let _ = write!(text, "\nnote: {note}");
        }
        Outcome { result: serde_json::to_value(&report).expect("report serializes"), text, passed }
    }
}

/// The envelope written to stdout.
#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub schema: u32,
    pub command: String,
    pub params: Value,
    pub status: &'static str,
    pub result: Value,
    pub elapsed_ms: f64,
    pub version: &'static str,
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parse `argv`, resolve limits and run the command.
pub fn run<I, T>(argv: I, env_config: Option<PathBuf>) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Invocation { stdout: rendered, stderr: String::new(), code }
            } else {
                Invocation { stdout: String::new(), stderr: rendered, code }
            };
        }
    };
    let (command, params) = describe(&cli.command);
    let limits = match Limits::resolve(cli.config.as_deref(), env_config) {
        Ok(l) => l,
        Err(msg) => {
            return finish(cli.format, command, params, Err(Failure::usage("ConfigError", msg)), 0.0)
        }
    };
    let start = Instant::now();
    let outcome = execute(&cli.command, &limits);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    finish(cli.format, command, params, outcome, elapsed_ms)
}

fn describe(command: &Command) -> (String, Value) {
    let to_value = |x: &dyn erased::Ser| x.value();
    match command {
        Command::Tau(a) => ("tau".into(), to_value(a)),
        Command::Qexp(a) => ("qexp".into(), to_value(a)),
        Command::Pzeta(a) => ("pzeta".into(), to_value(a)),
        Command::Check { check } => (format!("check {}", check.name()), to_value(check)),
    }
}

mod erased {
    pub trait Ser {
        fn value(&self) -> serde_json::Value;
    }

    impl<T: serde::Serialize> Ser for T {
        fn value(&self) -> serde_json::Value {
            serde_json::to_value(self).expect("arguments serialize")
        }
    }
}

fn finish(
    format: Format,
    command: String,
    params: Value,
    outcome: Result<Outcome, Failure>,
    elapsed_ms: f64,
) -> Invocation {
    let (status, result, text, code, stderr) = match outcome {
        Ok(o) => {
            let code = if o.passed { EXIT_OK } else { EXIT_CHECK_FAILED };
            let status = if o.passed { "pass" } else { "fail" };
            (status, o.result, o.text, code, String::new())
        }
        Err(f) => {
            let mut err = json!({ "kind": f.kind, "message": f.message });
            if !f.detail.is_null() {
                err["detail"] = f.detail;
            }
            let text = format!("error [{}]: {}", f.kind, f.message);
            let stderr = format!("modkernel: {}: {}\n", f.kind, f.message);
            ("error", json!({ "error": err }), text, f.code, stderr)
        }
    };
    let envelope = OutputEnvelope {
        schema: SCHEMA_VERSION,
        command,
        params,
        status,
        result,
        elapsed_ms,
        version: modkernel::VERSION,
    };
    let stdout = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&envelope).expect("envelope serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(&envelope, &text),
    };
    Invocation { stdout, stderr, code }
}

fn render_text(env: &OutputEnvelope, body: &str) -> String {
    let params = match &env.params {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    };
    let mut out = String::new();
    let _ = writeln!(out, "{:<9}{}", "command", env.command);
    let _ = writeln!(out, "{:<9}{}", "params", params);
    let _ = writeln!(out, "{:<9}{}", "status", env.status);
    for line in body.lines() {
        let _ = writeln!(out, "  {line}");
    }
    out
}

fn execute(command: &Command, limits: &Limits) -> Result<Outcome, Failure> {
    match command {
        Command::Tau(a) => cmd_tau(a, limits),
        Command::Qexp(a) => cmd_qexp(a, limits),
        Command::Check { check } => cmd_check(check, limits),
        Command::Pzeta(a) => cmd_pzeta(a, limits),
    }
}

fn check_terms(what: &str, v: u64, limits: &Limits) -> Result<(), Failure> {
    if v > limits.max_terms {
        return Err(Failure::limit(what, v, limits.max_terms));
    }
    Ok(())
}

fn check_prime(v: u64, limits: &Limits) -> Result<(), Failure> {
    if v > limits.max_prime {
        return Err(Failure::limit("p", v, limits.max_prime));
    }
    Ok(())
}

fn check_precision(v: u32, limits: &Limits) -> Result<(), Failure> {
    if v > limits.max_precision {
        return Err(Failure::limit("N", v, limits.max_precision));
    }
    Ok(())
}

fn check_weight(v: u32, limits: &Limits) -> Result<(), Failure> {
    if v > limits.max_weight {
        return Err(Failure::limit("weight", v, limits.max_weight));
    }
    Ok(())
}

fn cmd_tau(a: &TauArgs, limits: &Limits) -> Result<Outcome, Failure> {
    if a.n == 0 {
        return Err(Failure::usage("InvalidArgument", "n must be at least 1"));
    }
    check_terms("n", a.n, limits)?;
    let mut values: Vec<(&str, String)> = Vec::new();
    if matches!(a.method, TauMethod::Eta | TauMethod::All) {
        values.push(("eta", tau_eta(a.n).to_string()));
    }
    if matches!(a.method, TauMethod::Eisenstein | TauMethod::All) {
        values.push(("eisenstein", tau_eisenstein(a.n).to_string()));
    }
    if matches!(a.method, TauMethod::Manin | TauMethod::All) {
        values.push(("manin", tau_manin(a.n)?.to_string()));
    }
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    let mut text = String::new();
    for (name, v) in &values {
        let _ = writeln!(text, "{name:<11}{v}");
    }
    let _ = write!(text, "{:<11}{agree}", "agree");
    let map: serde_json::Map<String, Value> =
        values.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect();
    let result = json!({ "n": a.n, "tau": values[0].1, "values": map, "agree": agree });
    Ok(Outcome { result, text, passed: agree })
}

/// The named forms accepted by `qexp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Delta,
    E(u32),
    Gfrak(u32),
    Gstar(u32),
    J,
    Partition,
    Theta(u32),
}

impl std::str::FromStr for Form {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let weight = |rest: &str| rest.parse::<u32>().map_err(|_| format!("bad weight in {s:?}"));
        match s {
            "delta" => Ok(Form::Delta),
            "j" => Ok(Form::J),
            "partition" => Ok(Form::Partition),
            _ => {
                if let Some(rest) = s.strip_prefix("Gfrak") {
                    Ok(Form::Gfrak(weight(rest)?))
                } else if let Some(rest) = s.strip_prefix("Gstar") {
                    Ok(Form::Gstar(weight(rest)?))
                } else if let Some(rest) = s.strip_prefix("theta^") {
                    Ok(Form::Theta(weight(rest)?))
                } else if let Some(rest) = s.strip_prefix('E') {
                    Ok(Form::E(weight(rest)?))
                } else {
                    Err(format!(
                        "unknown form {s:?}; expected delta, E<k>, Gfrak<k>, Gstar<k>, j, partition or theta^<k>"
                    ))
                }
            }
        }
    }
}

fn cmd_qexp(a: &QexpArgs, limits: &Limits) -> Result<Outcome, Failure> {
    let form: Form = a.form.parse().map_err(|m| Failure::usage("InvalidForm", m))?;
    check_terms("terms", a.terms as u64, limits)?;
    let t = a.terms;
    let series: QSeries = match form {
        Form::Delta => delta_eta(t),
        Form::E(k) => {
            check_weight(k, limits)?;
            eisenstein_e(k, t)?
        }
        Form::Gfrak(k) => {
            check_weight(k, limits)?;
            eisenstein_gfrak(k, t)?
        }
        Form::Gstar(k) => {
            check_weight(k, limits)?;
            let p = a.p.ok_or_else(|| Failure::usage("InvalidForm", "Gstar<k> needs --p"))?;
            check_prime(p, limits)?;
            eisenstein_gstar(k, p, t)?
        }
        Form::J => j_invariant_times_q(t),
        Form::Partition => partition_series(t),
        Form::Theta(k) => {
            if k == 0 || k > 64 {
                return Err(Failure::usage("InvalidForm", "theta^k needs 1 <= k <= 64"));
            }
            theta_power(k, t)
        }
    };
    let result = json!({ "form": a.form, "series": series });
    Ok(Outcome::value(result, series.to_string()))
}

fn parse_rat(name: &str, s: &str) -> Result<Rational, Failure> {
    parse_rational(s)
        .ok_or_else(|| Failure::usage("InvalidArgument", format!("--{name} {s:?} is not a rational a/b")))
}

fn cmd_check(check: &Check, limits: &Limits) -> Result<Outcome, Failure> {
    let report = match check {
        Check::Ramanujan691 { nmax } => {
            check_terms("nmax", *nmax, limits)?;
            ramanujan_congruence_check(&TauCache::new((*nmax).max(1)), *nmax)?
        }
        Check::EisensteinCongruence { p, k, k2, n, terms, c } => {
            check_prime(*p, limits)?;
            check_weight(*k.max(k2), limits)?;
            check_precision(*n, limits)?;
            check_terms("terms", *terms as u64, limits)?;
            check_eisenstein_congruence(*p, *k, *k2, *n, *terms, *c)?
        }
        Check::Kummer { p, n, c, h } => {
            check_prime(*p, limits)?;
            check_precision(*n, limits)?;
            let units = u32::try_from(*p)
                .ok()
                .and_then(|p| u64::from(p).checked_pow(*n))
                .filter(|&m| m <= limits.max_terms.saturating_mul(1000));
            if units.is_none() {
                return Err(Failure::limit("p^N", format!("{p}^{n}"), limits.max_terms * 1000));
            }
            let h: IntPolynomial = h.parse()?;
            modkernel::padic::kummer_check(&h, *p, *n, *c)?
        }
        Check::GaussIdentity { terms } => {
            check_terms("terms", *terms as u64, limits)?;
            verify_gauss_identity(*terms)
        }
        Check::JacobiTriple { u, terms } => {
            check_terms("terms", *terms as u64, limits)?;
            verify_jacobi_triple(&parse_rat("u", u)?, *terms)?
        }
        Check::Cauchy { a, t, terms } => {
            check_terms("terms", *terms as u64, limits)?;
            verify_cauchy(&parse_rat("a", a)?, &parse_rat("t", t)?, *terms)?
        }
        Check::R4 { nmax } => {
            check_terms("nmax", *nmax as u64, limits)?;
            check_r4(*nmax)
        }
        Check::ThreeSquares { nmax } => {
            check_terms("nmax", *nmax as u64, limits)?;
            check_three_squares(*nmax)
        }
        Check::Deligne { pmax } => {
            check_prime(*pmax, limits)?;
            check_terms("pmax", *pmax, limits)?;
            deligne_sweep(&TauCache::new((*pmax).max(1)), *pmax)?
        }
        Check::Lehmer { nmax } => {
            check_terms("nmax", *nmax, limits)?;
            let first = lehmer_check(&TauCache::new((*nmax).max(1)), *nmax)?;
            let result = json!({ "nmax": nmax, "first_zero": first, "passed": first.is_none() });
            let text = match first {
                None => format!("lehmer: PASS (tau(n) != 0 for 1 <= n <= {nmax})"),
                Some(n) => format!("lehmer: FAIL (tau({n}) = 0)"),
            };
            return Ok(Outcome { result, text, passed: first.is_none() });
        }
        Check::Hecke { max } => {
            let top = max.checked_mul(*max).unwrap_or(u64::MAX);
            check_terms("max^2", top, limits)?;
            hecke_sweep(&TauCache::new(top.max(1)), *max)?
        }
        Check::HardyRamanujan { n, tol } => {
            check_terms("n", *n, limits)?;
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(Failure::usage("InvalidArgument", "--tol must be positive"));
            }
            check_hardy_ramanujan(*n, *tol)
        }
    };
    Ok(Outcome::report(report))
}

fn cmd_pzeta(a: &PzetaArgs, limits: &Limits) -> Result<Outcome, Failure> {
    check_prime(a.p, limits)?;
    check_precision(a.n, limits)?;
    let rational = kubota_leopoldt_rational(a.k, a.p)?;
    let padic = PadicInt::from_ratio(&rational, a.p, a.n)?;
    let mut result = json!({
        "k": a.k,
        "rational": format_rational(&rational),
        "padic": padic,
    });
    let mut text = format!("{:<12}{}\n{:<12}{}", "rational", format_rational(&rational), "padic", padic);
    if let Some(c) = a.c {
        let reg = zeta_reg(c, a.p, a.k)?;
        let reg_padic = PadicInt::from_ratio(&reg, a.p, a.n)?;
        result["regularised"] = json!({ "c": c, "rational": format_rational(&reg), "padic": reg_padic });
        let _ = write!(text, "\n{:<12}{}\n{:<12}{}", "reg", format_rational(&reg), "reg padic", reg_padic);
    }
    Ok(Outcome::value(result, text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_names() {
        assert_eq!("delta".parse::<Form>(), Ok(Form::Delta));
        assert_eq!("E12".parse::<Form>(), Ok(Form::E(12)));
        assert_eq!("Gfrak4".parse::<Form>(), Ok(Form::Gfrak(4)));
        assert_eq!("Gstar6".parse::<Form>(), Ok(Form::Gstar(6)));
        assert_eq!("theta^3".parse::<Form>(), Ok(Form::Theta(3)));
        assert!("eta".parse::<Form>().is_err());
        assert!("E".parse::<Form>().is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(Failure::from(Error::InvalidPrime(4)).code, EXIT_USAGE);
        assert_eq!(Failure::from(Error::NonPIntegral { p: 5, what: "x".into() }).code, EXIT_CHECK_FAILED);
        assert_eq!(Failure::from(Error::NonIntegralResult { n: 3 }).code, EXIT_INTERNAL);
    }
}
