//! Command-line front end. The binary only forwards `std::env::args_os` and
//! the standard streams to [`run`], so everything here is testable in-process.
//!
//! Exit codes: 0 success, 1 failed verification or computation, 2 invalid
//! arguments, 3 I/O failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::asymptotics::{asymptotic_report, AsymptoticsReport};
use crate::constant::{
    extremal_polynomial, sharp_constant_with, theorem_bound, trace_bound, uniform_grid,
    MarkovReport,
};
use crate::error::Error;
use crate::gegenbauer::Lambda;
use crate::matrices::Parity;
use crate::report::{format_float, json_document, render_csv, sweep, SweepConfig, SweepRow};
use crate::spectral::PowerOptions;
use crate::verify::{run_verify, VerifyConfig, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "markov-gegenbauer",
    version,
    about = "Sharp constants in the L2 Markov inequality with Gegenbauer weight"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sharp constant for one degree and one lambda
    Constant(ConstantArgs),
    /// Table of constants over a degree range and several lambdas
    Sweep(SweepArgs),
    /// Extremal polynomial as JSON
    Extremal(ExtremalArgs),
    /// Run the verification suite
    Verify(VerifyArgs),
    /// Growth of c/n^2 against its Bessel-zero limit
    Asymptotics(AsymptoticsArgs),
    /// Closed-form upper bounds only
    Bound(BoundArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

fn parse_lambda(raw: &str) -> Result<Lambda, String> {
    let value: f64 = raw
        .trim()
        .parse()
        .map_err(|_| format!("not a number: {raw:?}"))?;
    Lambda::new(value).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct ConstantArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_parser = parse_lambda, allow_negative_numbers = true)]
    pub lambda: Lambda,
    /// Relative residual tolerance for the power iteration
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    /// Also run the coefficient-matrix and quadrature oracles
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_min: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    /// Repeat for several values
    #[arg(long, required = true, value_parser = parse_lambda, allow_negative_numbers = true)]
    pub lambda: Vec<Lambda>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Evaluate cells on a worker pool (output is identical)
    #[arg(long)]
    pub parallel: bool,
    /// Add both oracle values to every row (JSON only)
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct ExtremalArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_parser = parse_lambda, allow_negative_numbers = true)]
    pub lambda: Lambda,
    /// Number of evaluation points on a uniform grid over [-1, 1]
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(2..))]
    pub samples: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_m: u64,
    /// Lambda grid; defaults to -0.49, -0.25, 0, 0.25, 0.5, 1, 2.5, 10
    #[arg(long, value_parser = parse_lambda, allow_negative_numbers = true)]
    pub lambda: Vec<Lambda>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub parallel: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Random witnesses per extremal check
    #[arg(long, default_value_t = 1000, hide = true)]
    pub witnesses: usize,
    /// Negative control: relative perturbation of one matrix entry
    #[arg(long, hide = true, allow_negative_numbers = true)]
    pub perturb_entry: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    #[arg(long, value_parser = parse_lambda, allow_negative_numbers = true)]
    pub lambda: Lambda,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(10..))]
    pub n_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_parser = parse_lambda, allow_negative_numbers = true)]
    pub lambda: Lambda,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Rendered output plus the exit code it should produce.
struct Output {
    text: String,
    out: Option<PathBuf>,
    code: i32,
}

impl Output {
    fn ok(text: String, out: Option<PathBuf>) -> Self {
        Output {
            text,
            out,
            code: EXIT_OK,
        }
    }
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let text = e.render().to_string();
            return if informational {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            } else {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            };
        }
    };
    let output = match execute(cli.command) {
        Ok(output) => output,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    if let Err(e) = emit(&output.text, output.out.as_deref(), stdout) {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_IO;
    }
    output.code
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidLambda(_) | Error::Domain(_) => EXIT_USAGE,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_FAILURE,
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Error::Io(std::io::Error::new(
                e.kind(),
                format!("{}: {e}", path.display()),
            ))
        }),
        None => stdout.write_all(text.as_bytes()).map_err(Error::from),
    }
}

fn execute(command: Command) -> Result<Output, Error> {
    match command {
        Command::Constant(a) => cmd_constant(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Extremal(a) => cmd_extremal(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Asymptotics(a) => cmd_asymptotics(a),
        Command::Bound(a) => cmd_bound(a),
    }
}

fn text_table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().fold(String::new(), |mut out, (k, v)| {
        let _ = writeln!(out, "{k:<width$}  {v}");
        out
    })
}

fn cmd_constant(a: ConstantArgs) -> Result<Output, Error> {
    if !(a.tol > 0.0 && a.tol < 1.0) {
        return Err(Error::Domain(format!(
            "tol must lie in (0, 1) (got {})",
            a.tol
        )));
    }
    let mut report = sharp_constant_with(a.n as usize, a.lambda, &PowerOptions::with_tol(a.tol))?;
    if a.oracle {
        report = report.with_oracles()?;
    }
    let text = match a.format {
        Format::Json => json_document("constant", &report)?,
        Format::Csv => render_csv(&[row_from_report(&report)])?,
        Format::Text => constant_text(&report),
    };
    Ok(Output::ok(text, a.out))
}

fn row_from_report(r: &MarkovReport) -> SweepRow {
    SweepRow {
        n: r.n,
        lambda: r.lambda,
        sharp_constant: r.sharp_constant,
        trace_bound: r.trace_bound,
        theorem_bound: r.theorem_bound,
        normalized: r.normalized,
        branch: r.branch,
        oracle_coefficient: r.oracle.map(|o| o.coefficient),
        oracle_quadrature: r.oracle.map(|o| o.quadrature),
    }
}

fn constant_text(r: &MarkovReport) -> String {
    let mut rows = vec![
        ("n", r.n.to_string()),
        ("lambda", r.lambda.to_string()),
        ("sharp_constant", format_float(r.sharp_constant)),
        ("branch", r.branch.as_str().to_string()),
        ("trace_bound", format_float(r.trace_bound)),
        ("theorem_bound", format_float(r.theorem_bound)),
        ("c_over_n2", format_float(r.normalized)),
    ];
    if let Some(o) = r.oracle {
        rows.push(("oracle_coefficient", format_float(o.coefficient)));
        rows.push((
            "coefficient_deviation",
            format_float(o.coefficient_deviation),
        ));
        rows.push(("oracle_quadrature", format_float(o.quadrature)));
        rows.push(("quadrature_deviation", format_float(o.quadrature_deviation)));
    }
    text_table(&rows)
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    rows: &'a [SweepRow],
}

fn cmd_sweep(a: SweepArgs) -> Result<Output, Error> {
    if a.n_min > a.n_max {
        return Err(Error::Domain(format!(
            "n-min ({}) must not exceed n-max ({})",
            a.n_min, a.n_max
        )));
    }
    let rows = sweep(&SweepConfig {
        n_min: a.n_min as usize,
        n_max: a.n_max as usize,
        lambdas: a.lambda,
        oracle: a.oracle,
        parallel: a.parallel,
    })?;
    let text = match a.format {
        Format::Json => {
            for row in &rows {
                row.validate()?;
            }
            json_document("sweep", &SweepDocument { rows: &rows })?
        }
        Format::Csv | Format::Text => render_csv(&rows)?,
    };
    Ok(Output::ok(text, a.out))
}

#[derive(Serialize)]
struct CoefficientEntry {
    degree: usize,
    value: f64,
}

#[derive(Serialize)]
struct SamplePoint {
    t: f64,
    p: f64,
}

#[derive(Serialize)]
struct ExtremalDocument {
    n: usize,
    lambda: Lambda,
    parity: Parity,
    /// `gegenbauer` for `C_k^λ`, `chebyshev_limit` for `(2/k) T_k` at `λ = 0`
    basis: &'static str,
    coefficients: Vec<CoefficientEntry>,
    sharp_constant: f64,
    achieved_ratio: f64,
    perron_vector: Vec<f64>,
    samples: Vec<SamplePoint>,
}

fn cmd_extremal(a: ExtremalArgs) -> Result<Output, Error> {
    let grid = uniform_grid(a.samples as usize);
    let p = extremal_polynomial(a.n as usize, a.lambda, &grid)?;
    let doc = ExtremalDocument {
        n: p.n,
        lambda: p.lambda,
        parity: p.parity,
        basis: if p.chebyshev_limit_basis {
            "chebyshev_limit"
        } else {
            "gegenbauer"
        },
        coefficients: p
            .coefficients
            .iter()
            .map(|&(degree, value)| CoefficientEntry { degree, value })
            .collect(),
        sharp_constant: p.sharp_constant,
        achieved_ratio: p.achieved_ratio,
        perron_vector: p.perron_vector.clone(),
        samples: p
            .samples
            .iter()
            .map(|&(t, p)| SamplePoint { t, p })
            .collect(),
    };
    Ok(Output::ok(json_document("extremal", &doc)?, a.out))
}

fn cmd_verify(a: VerifyArgs) -> Result<Output, Error> {
    let mut config = VerifyConfig::new(a.max_m as usize);
    if !a.lambda.is_empty() {
        config.lambdas = a.lambda;
    }
    config.seed = a.seed;
    config.parallel = a.parallel;
    config.witnesses = a.witnesses;
    config.perturbation = a.perturb_entry;
    let summary = run_verify(&config)?;
    let text = match a.format {
        Format::Json => json_document("verify", &summary)?,
        Format::Text | Format::Csv => summary.render_table(),
    };
    Ok(Output {
        text,
        out: a.out,
        code: if summary.all_passed() {
            EXIT_OK
        } else {
            EXIT_FAILURE
        },
    })
}

/// `10, 20, …` up to `n_max`, always ending at `n_max`.
fn trajectory_degrees(n_max: usize) -> Vec<usize> {
    let mut degrees: Vec<usize> = (10..=n_max).step_by(10).collect();
    if degrees.last() != Some(&n_max) {
        degrees.push(n_max);
    }
    degrees
}

fn cmd_asymptotics(a: AsymptoticsArgs) -> Result<Output, Error> {
    let report = asymptotic_report(a.lambda, &trajectory_degrees(a.n_max as usize))?;
    let text = match a.format {
        Format::Json => json_document("asymptotics", &report)?,
        Format::Text | Format::Csv => asymptotics_text(&report),
    };
    Ok(Output::ok(text, a.out))
}

fn asymptotics_text(r: &AsymptoticsReport) -> String {
    let mut rows = vec![
        ("lambda", r.lambda.to_string()),
        ("bessel_order", format_float(r.bessel_order)),
        ("bessel_first_zero", format_float(r.bessel_first_zero)),
        ("limit_c_over_n2", format_float(r.limit_value)),
        (
            "limit_bracket",
            format!(
                "[{}, {}]",
                format_float(r.limit_lower),
                format_float(r.limit_upper)
            ),
        ),
    ];
    if let Some(b) = r.published_bracket {
        rows.push(("published_bracket", format!("[{}, {}]", b.lower, b.upper)));
    }
    let mut out = text_table(&rows);
    out.push_str("\nn,c,c_over_n2\n");
    for p in &r.trajectory {
        let _ = writeln!(
            out,
            "{},{},{}",
            p.n,
            format_float(p.c),
            format_float(p.normalized)
        );
    }
    out
}

#[derive(Serialize)]
struct BoundDocument {
    n: usize,
    lambda: Lambda,
    theorem_bound: f64,
    trace_bound: f64,
}

fn cmd_bound(a: BoundArgs) -> Result<Output, Error> {
    let n = a.n as usize;
    let doc = BoundDocument {
        n,
        lambda: a.lambda,
        theorem_bound: theorem_bound(n, a.lambda),
        trace_bound: trace_bound(n, a.lambda),
    };
    let text = match a.format {
        Format::Json => json_document("bound", &doc)?,
        Format::Text | Format::Csv => text_table(&[
            ("theorem_bound", format_float(doc.theorem_bound)),
            ("trace_bound", format_float(doc.trace_bound)),
        ]),
    };
    Ok(Output::ok(text, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("markov-gegenbauer").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn constant_text_output() {
        let (code, out, _) = call(&["constant", "--n", "2", "--lambda", "0.5"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("sharp_constant  3.87298334620742e0"), "{out}");
        assert!(out.contains("branch          even"));
    }

    #[test]
    fn invalid_lambda_is_a_usage_error() {
        let (code, _, err) = call(&["constant", "--n", "2", "--lambda", "-0.5"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("lambda must exceed -1/2"), "{err}");
    }

    #[test]
    fn missing_flags_are_usage_errors() {
        assert_eq!(call(&["constant", "--lambda", "1"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["constant", "--n", "0", "--lambda", "1"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["sweep", "--n-min", "5", "--n-max", "3", "--lambda", "1"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["asymptotics", "--lambda", "1", "--n-max", "9"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["extremal", "--n", "3", "--lambda", "1", "--samples", "1"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["verify", "--max-m", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        for sub in [
            "constant",
            "sweep",
            "extremal",
            "verify",
            "asymptotics",
            "bound",
        ] {
            assert!(out.contains(sub), "{sub} missing from help");
        }
    }

    #[test]
    fn bound_prints_both_bounds() {
        let (code, out, _) = call(&["bound", "--n", "4", "--lambda", "0.5"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 2);
        assert!(out.contains(&format_float(2.0 * 26.25f64.sqrt())));
    }

    #[test]
    fn trajectory_degrees_end_at_n_max() {
        assert_eq!(trajectory_degrees(10), [10]);
        assert_eq!(trajectory_degrees(35), [10, 20, 30, 35]);
    }
}
