//! Command-line front end: `brackets`, `repcheck`, `sweep`, `linkage`, `unitarity`.
//!
//! Exit codes: 0 every check passed, 2 a check failed, 3 configuration
//! error, 4 I/O error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::catalog::{
    bracket_check, build_algebra_rep, linkage_check, unitarity_check, CatalogError, Family, GroupAction,
    GroupElement, RepParams, DEFAULT_LINKAGE_STEPS,
};
use crate::lab::{
    build_scenario, default_test_set, sweep, Domain, Quadrature, Rate, ScenarioError, ScenarioId, TestFunction,
};
use crate::lie::{bracket_table, jacobi_check, Basis, Epsilon, Gl2Element, LieError, MirabolicElement};
use crate::params::{ParamError, ParamSet};
use crate::rational::{parse_rational, to_f64, ParseRationalError, Rational};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Accepted slope window for linkage checks.
pub const LINKAGE_SLOPE: (f64, f64) = (1.8, 2.2);
/// Allowed norm deviation for unitarity checks.
pub const UNITARITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "mirabolic", version, about = "Contractions of gl_n and of the unitary dual of R^2 x| M_2")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the ε-bracket table of gl_n and certify antisymmetry and Jacobi.
    Brackets {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: String,
    },
    /// Check the bracket-homomorphism identities of a catalog family.
    Repcheck {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params: String,
    },
    /// Run a contraction scenario over its schedule.
    Sweep {
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params: String,
        /// Comma-separated ε values, or n values for the sequence scenarios.
        #[arg(long, allow_hyphen_values = true)]
        schedule: Option<String>,
        /// `default`, or `bump:LO:HI`; repeatable.
        #[arg(long = "testfn", allow_hyphen_values = true)]
        testfns: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Compare central differences of the group action with the algebra operator.
    Linkage {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params: String,
        /// Basis direction such as `e_12`; all four when omitted.
        #[arg(long)]
        direction: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long = "testfn", allow_hyphen_values = true)]
        testfn: Option<String>,
    },
    /// Check norm preservation of the group action.
    Unitarity {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params: String,
        /// `v1,v2,a,b` for R^2 x| M_2 families, `a,b,c,d` for GL_2 families.
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        #[arg(long = "testfn", allow_hyphen_values = true)]
        testfns: Vec<String>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("{0}")]
    Config(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            _ => EXIT_CONFIG,
        }
    }
}

type Outcome = Result<bool, CliError>;

/// Parses `argv` (including the program name) and dispatches.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{e}");
            return code;
        }
    };
    match execute(&config.command, out) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Brackets { n, epsilon } => brackets(*n, epsilon, out),
        Command::Repcheck { family, params } => repcheck(family, params, out),
        Command::Sweep {
            scenario,
            params,
            schedule,
            testfns,
            out: path,
            format,
        } => run_sweep(scenario, params, schedule.as_deref(), testfns, path.as_deref(), *format, out),
        Command::Linkage {
            family,
            params,
            direction,
            x,
            testfn,
        } => linkage(family, params, direction.as_deref(), x.as_deref(), testfn.as_deref(), out),
        Command::Unitarity {
            family,
            params,
            element,
            testfns,
        } => unitarity(family, params, element.as_deref(), testfns, out),
    }
}

fn emit(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<(), CliError> {
    out.write_fmt(text).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        emit($out, format_args!("{}\n", format_args!($($arg)*)))
    };
}

fn brackets(n: usize, epsilon: &str, out: &mut dyn Write) -> Outcome {
    let eps = Epsilon(parse_rational(epsilon)?);
    let table = bracket_table(n, &eps)?;
    let e = eps.value();
    for (a, b, v) in &table {
        say!(out, "[{a},{b}]_{e} = {v}")?;
    }
    let report = jacobi_check(n, &eps)?;
    let verdict = if report.passed() { "pass" } else { "FAIL" };
    say!(
        out,
        "antisymmetry: {} pairs, Jacobi: {} triples, {verdict}",
        report.pairs_checked,
        report.triples_checked
    )?;
    if let Some(f) = &report.first_failure {
        say!(out, "first failure: {f:?}")?;
    }
    Ok(report.passed())
}

fn rep_params(family: &str, params: &str) -> Result<RepParams, CliError> {
    let family: Family = family.parse()?;
    Ok(RepParams::from_params(family, &ParamSet::parse(params)?)?)
}

fn repcheck(family: &str, params: &str, out: &mut dyn Write) -> Outcome {
    let rep = build_algebra_rep(&rep_params(family, params)?)?;
    for (b, d) in rep.images() {
        say!(out, "{b} -> {d}")?;
    }
    let report = bracket_check(&rep)?;
    say!(out, "{}: {}/{} identities pass", report.name, report.passed, report.checked)?;
    if let Some(f) = &report.first_failure {
        say!(out, "[{}, {}]: commutator {} != {}", f.x, f.y, f.commutator, f.expected)?;
    }
    Ok(report.all_passed())
}

fn parse_testfn(spec: &str, domain: Domain) -> Result<Vec<TestFunction>, CliError> {
    if spec == "default" {
        return Ok(default_test_set(domain));
    }
    if spec == "point" && domain == Domain::Singleton {
        return Ok(vec![TestFunction::unit_point()]);
    }
    let bad = || CliError::Config(format!("test function `{spec}`: expected `default`, `point` or `bump:LO:HI`"));
    let mut parts = spec.split(':');
    if parts.next() != Some("bump") {
        return Err(bad());
    }
    let lo = parts.next().ok_or_else(bad)?;
    let hi = parts.next().ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    let (lo, hi) = (to_f64(&parse_rational(lo)?), to_f64(&parse_rational(hi)?));
    let f = TestFunction::bump(domain, lo, hi).map_err(|e| CliError::Config(format!("test function `{spec}`: {e}")))?;
    Ok(vec![f])
}

fn test_set(specs: &[String], domain: Domain) -> Result<Vec<TestFunction>, CliError> {
    if specs.is_empty() {
        return Ok(default_test_set(domain));
    }
    let mut all = Vec::new();
    for s in specs {
        all.extend(parse_testfn(s, domain)?);
    }
    Ok(all)
}

fn rational_list(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_rational(s).map_err(CliError::from))
        .collect()
}

/// Writes through a temporary file in the destination directory, then renames.
fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn run_sweep(
    scenario: &str,
    params: &str,
    schedule: Option<&str>,
    testfns: &[String],
    path: Option<&Path>,
    format: Option<Format>,
    out: &mut dyn Write,
) -> Outcome {
    let id: ScenarioId = scenario.parse()?;
    let mut sc = build_scenario(id, &ParamSet::parse(params)?)?;
    if let Some(s) = schedule {
        sc = sc.with_schedule(&rational_list(s)?)?;
    }
    let tests = test_set(testfns, sc.domain())?;
    let report = sweep(&sc, &tests, &Quadrature::default())?;

    let format = format.unwrap_or(match path.and_then(Path::extension) {
        Some(ext) if ext == "json" => Format::Json,
        _ => Format::Csv,
    });
    let body = match format {
        Format::Csv => report.to_csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("report is valid JSON");
            s.push('\n');
            s
        }
    };
    match path {
        Some(p) => {
            write_atomic(p, body.as_bytes())?;
            say!(out, "wrote {} rows to {}", report.rows.len(), p.display())?;
        }
        None => emit(out, format_args!("{body}"))?,
    }
    for r in &report.rates {
        let rate = match r.rate {
            Rate::Fitted(v) => format!("{v:.4}"),
            Rate::ExactZero => "exact-zero".to_string(),
            Rate::Undetermined => "undetermined".to_string(),
        };
        let mono = if r.monotone { "monotone" } else { "NOT monotone" };
        say!(out, "rate {} {}: {rate} ({mono})", r.basis, r.testfn)?;
    }
    let worst = report.rows.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    let verdict = if report.passed() { "pass" } else { "FAIL" };
    say!(out, "{id}: max rel_err {worst:.3e}, {verdict}")?;
    Ok(report.passed())
}

fn default_point(domain: Domain) -> f64 {
    match domain {
        Domain::Line => 0.31,
        Domain::PuncturedLine => 1.37,
        Domain::Singleton => Domain::SINGLETON_POINT,
    }
}

fn linkage(
    family: &str,
    params: &str,
    direction: Option<&str>,
    x: Option<&str>,
    testfn: Option<&str>,
    out: &mut dyn Write,
) -> Outcome {
    let params = rep_params(family, params)?;
    let domain = params.family().domain();
    let f = match testfn {
        Some(spec) => parse_testfn(spec, domain)?.remove(0),
        None => default_test_set(domain).remove(0),
    };
    let x = match x {
        Some(s) => to_f64(&parse_rational(s)?),
        None => default_point(domain),
    };
    let directions = match direction {
        Some(d) => vec![d.parse::<Basis>()?],
        None => Basis::GL2.to_vec(),
    };
    let mut ok = true;
    for d in directions {
        let r = linkage_check(&params, d, &f, x, &DEFAULT_LINKAGE_STEPS)?;
        let pass = r.passed(LINKAGE_SLOPE.0, LINKAGE_SLOPE.1);
        ok &= pass;
        let slope = match r.slope {
            Rate::Fitted(s) => format!("slope {s:.4}"),
            Rate::ExactZero => "exact".to_string(),
            Rate::Undetermined => "slope undetermined".to_string(),
        };
        let last = r.rows.last().map_or(0.0, |row| row.error);
        say!(
            out,
            "{} {d} at x={x}: algebra {:.12e}{:+.12e}i, error {last:.3e} at t={}, {slope}, {}",
            params.family(),
            r.algebra_value.re,
            r.algebra_value.im,
            DEFAULT_LINKAGE_STEPS[DEFAULT_LINKAGE_STEPS.len() - 1],
            if pass { "pass" } else { "FAIL" }
        )?;
    }
    Ok(ok)
}

fn group_element(family: Family, spec: Option<&str>) -> Result<GroupElement, CliError> {
    let values: Vec<f64> = match spec {
        Some(s) => rational_list(s)?.iter().map(to_f64).collect(),
        None if family.is_gl2() => vec![1.5, 0.25, -0.3, 0.8],
        None => vec![0.4, -0.7, 2.0, 0.3],
    };
    let [p, q, r, s] = values[..] else {
        return Err(CliError::Config(format!("group element needs 4 entries, got {}", values.len())));
    };
    let g = if family.is_gl2() {
        GroupElement::from(Gl2Element::new(p, q, r, s).map_err(CatalogError::from)?)
    } else {
        GroupElement::from(MirabolicElement::planar(p, q, r, s).map_err(CatalogError::from)?)
    };
    Ok(g)
}

fn unitarity(
    family: &str,
    params: &str,
    element: Option<&str>,
    testfns: &[String],
    out: &mut dyn Write,
) -> Outcome {
    let params = rep_params(family, params)?;
    let action = GroupAction::new(&params)?;
    let g = group_element(params.family(), element)?;
    let quad = Quadrature::default();
    let mut ok = true;
    for f in test_set(testfns, params.family().domain())? {
        let r = unitarity_check(&action, &g, &f, &quad)?;
        let pass = r.deviation <= UNITARITY_TOLERANCE;
        ok &= pass;
        say!(
            out,
            "{} {}: |f| = {:.15e}, |g.f| = {:.15e}, deviation {:.3e}, {}",
            params.family(),
            f.id(),
            r.norm,
            r.transformed_norm,
            r.deviation,
            if pass { "pass" } else { "FAIL" }
        )?;
    }
    Ok(ok)
}
