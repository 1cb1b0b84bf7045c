//! Sweep rows, CSV/JSON rendering and the worker pool used by batch commands.
//!
//! Every float is written in scientific notation with 15 significant digits
//! (`{:.14e}`), so identical inputs produce identical bytes on every platform.
//! JSON documents keep that text verbatim, and parsing then re-serializing a
//! document reproduces it exactly.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::constant::sharp_constant;
use crate::error::{Error, Result};
use crate::gegenbauer::Lambda;
use crate::matrices::Parity;

pub const CSV_HEADER: &str = "n,lambda,c,trace_bound,theorem_bound,c_over_n2,branch";
pub const SCHEMA_VERSION: u64 = 1;
/// Caps the number of worker threads; `0` or unset means one per core.
pub const THREADS_ENV: &str = "MARKOV_GEGENBAUER_THREADS";

pub fn format_float(x: f64) -> String {
    format!("{x:.14e}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub lambda: Lambda,
    pub sharp_constant: f64,
    pub trace_bound: f64,
    pub theorem_bound: f64,
    /// `c / n²`
    pub normalized: f64,
    pub branch: Parity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_coefficient: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_quadrature: Option<f64>,
}

impl SweepRow {
    pub fn compute(n: usize, lambda: Lambda, oracle: bool) -> Result<Self> {
        let mut report = sharp_constant(n, lambda)?;
        if oracle {
            report = report.with_oracles()?;
        }
        let row = SweepRow {
            n,
            lambda,
            sharp_constant: report.sharp_constant,
            trace_bound: report.trace_bound,
            theorem_bound: report.theorem_bound,
            normalized: report.normalized,
            branch: report.branch,
            oracle_coefficient: report.oracle.map(|o| o.coefficient),
            oracle_quadrature: report.oracle.map(|o| o.quadrature),
        };
        row.validate()?;
        Ok(row)
    }

    /// Rejects rows that break `c < theorem_bound`.
    pub fn validate(&self) -> Result<()> {
        if self.sharp_constant.is_finite() && self.sharp_constant < self.theorem_bound {
            Ok(())
        } else {
            Err(Error::Invariant(format!(
                "n={}, lambda={}: constant {} is not below the bound {}",
                self.n, self.lambda, self.sharp_constant, self.theorem_bound
            )))
        }
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            format_float(self.lambda.value()),
            format_float(self.sharp_constant),
            format_float(self.trace_bound),
            format_float(self.theorem_bound),
            format_float(self.normalized),
            self.branch.as_str()
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub lambdas: Vec<Lambda>,
    pub oracle: bool,
    pub parallel: bool,
}

/// One row per `(n, λ)`, ordered λ-major then by ascending `n`, whatever the
/// execution mode.
pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    if config.n_min == 0 || config.n_min > config.n_max {
        return Err(Error::Domain(format!(
            "need 1 <= n-min <= n-max (got {}..{})",
            config.n_min, config.n_max
        )));
    }
    if config.lambdas.is_empty() {
        return Err(Error::Domain("no lambda values given".into()));
    }
    let cells: Vec<(usize, Lambda)> = config
        .lambdas
        .iter()
        .flat_map(|&l| (config.n_min..=config.n_max).map(move |n| (n, l)))
        .collect();
    let row = |&(n, l): &(usize, Lambda)| SweepRow::compute(n, l, config.oracle);
    if config.parallel {
        in_pool(|| cells.par_iter().map(row).collect())?
    } else {
        cells.iter().map(row).collect()
    }
}

/// Worker count from [`THREADS_ENV`]; `0` lets rayon decide.
pub fn thread_cap() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            Error::Domain(format!(
                "{THREADS_ENV} must be a non-negative integer (got {raw:?})"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(Error::Domain(format!("{THREADS_ENV}: {e}"))),
    }
}

/// Runs `f` inside a dedicated pool sized by [`thread_cap`].
pub fn in_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_cap()?)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Header plus one LF-terminated line per row. Each row is re-validated first.
pub fn render_csv(rows: &[SweepRow]) -> Result<String> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        row.validate()?;
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    Ok(out)
}

/// Rewrites every non-integer number in `value` with [`format_float`].
pub fn canonicalize(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_u64() || n.is_i64() => Value::Number(n),
        Value::Number(n) => {
            let x = n.as_f64().expect("JSON number is representable as f64");
            let text = format_float(x);
            Value::Number(
                text.parse::<Number>()
                    .expect("formatted float is valid JSON"),
            )
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, canonicalize(v))).collect())
        }
        other => other,
    }
}

/// A pretty-printed JSON object holding `schema_version`, `command` and the
/// fields of `payload` (which must serialize to an object).
pub fn json_document(command: &str, payload: &impl Serialize) -> Result<String> {
    let fields = match serde_json::to_value(payload)? {
        Value::Object(map) => map,
        other => {
            let mut map = Map::new();
            map.insert("result".into(), other);
            map
        }
    };
    let mut doc = Map::new();
    doc.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    doc.insert("command".into(), Value::from(command));
    for (k, v) in fields {
        doc.insert(k, canonicalize(v));
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(doc))?;
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(v: f64) -> Lambda {
        Lambda::new(v).unwrap()
    }

    #[test]
    fn float_format_is_fixed_width_scientific() {
        assert_eq!(format_float(3.872983346207417), "3.87298334620742e0");
        assert_eq!(format_float(0.5), "5.00000000000000e-1");
        assert_eq!(format_float(-0.49), "-4.90000000000000e-1");
        assert_eq!(format_float(1234.5), "1.23450000000000e3");
    }

    #[test]
    fn sweep_rows_are_ordered_and_bounded() {
        let cfg = SweepConfig {
            n_min: 1,
            n_max: 5,
            lambdas: vec![lam(0.5), lam(0.0)],
            oracle: false,
            parallel: false,
        };
        let rows = sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows[..5].iter().all(|r| r.lambda == lam(0.5)));
        assert!(rows[..5].windows(2).all(|w| w[0].n + 1 == w[1].n));
        assert!(rows[..5]
            .windows(2)
            .all(|w| w[0].sharp_constant < w[1].sharp_constant));
        assert!((rows[1].sharp_constant - 15f64.sqrt()).abs() < 1e-12);
        let par = sweep(&SweepConfig {
            parallel: true,
            ..cfg
        })
        .unwrap();
        assert_eq!(render_csv(&rows).unwrap(), render_csv(&par).unwrap());
    }

    #[test]
    fn csv_layout() {
        let rows = sweep(&SweepConfig {
            n_min: 2,
            n_max: 2,
            lambdas: vec![lam(0.5)],
            oracle: false,
            parallel: false,
        })
        .unwrap();
        let csv = render_csv(&rows).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("2,5.00000000000000e-1,3.87298334620742e0,"));
        assert!(lines[1].ends_with(",even"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn invalid_rows_are_refused() {
        let mut row = SweepRow::compute(3, lam(1.0), false).unwrap();
        row.sharp_constant = row.theorem_bound;
        assert!(matches!(render_csv(&[row]), Err(Error::Invariant(_))));
    }

    #[test]
    fn bad_ranges_are_rejected() {
        let cfg = SweepConfig {
            n_min: 4,
            n_max: 3,
            lambdas: vec![lam(0.5)],
            oracle: false,
            parallel: false,
        };
        assert!(sweep(&cfg).is_err());
    }

    #[test]
    fn json_round_trips_byte_for_byte() {
        let report = sharp_constant(7, lam(-0.25))
            .unwrap()
            .with_oracles()
            .unwrap();
        let text = json_document("constant", &report).unwrap();
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["schema_version"], Value::from(1u64));
        let mut again = serde_json::to_string_pretty(&parsed).unwrap();
        again.push('\n');
        assert_eq!(text, again);
        assert!(text.contains("\"n\": 7"));
        assert!(text.contains("\"lambda\": -2.50000000000000e-1"));
    }
}
