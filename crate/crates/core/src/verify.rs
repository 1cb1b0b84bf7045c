//! Batch verification: every identity, ordering and bound the library relies
//! on, run over a grid of `λ` values and reported as one row per check.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::{
    bessel_first_zero, legendre_bracket, limit_bracket, limit_value, published_limit_bracket,
};
use crate::constant::{
    eigen_ordering_check, extremal_polynomial, sharp_constant, theorem_bound, trace_bound,
};
use crate::error::Result;
use crate::gegenbauer::Lambda;
use crate::matrices::{
    build_factor, build_matrix, entrywise_domination, prefix_and_diag_table, traces, Parity,
};
use crate::quadrature::{oracle_constant_coefficient, oracle_constant_quadrature, RayleighSampler};
use crate::report::in_pool;
use crate::spectral::{cholesky, dominant_eig, full_spectrum_jacobi, PowerOptions};

pub const DEFAULT_GRID: [f64; 8] = [-0.49, -0.25, 0.0, 0.25, 0.5, 1.0, 2.5, 10.0];
pub const DEFAULT_SEED: u64 = 0x5eed_1234;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub max_m: usize,
    pub lambdas: Vec<Lambda>,
    pub seed: u64,
    /// Random polynomials tried against each extremal constant.
    pub witnesses: usize,
    pub parallel: bool,
    /// Negative-control hook: scales entry `(0, 0)` of every built matrix by
    /// `1 + perturbation` before its trace is compared.
    pub perturbation: Option<f64>,
}

impl VerifyConfig {
    pub fn new(max_m: usize) -> Self {
        VerifyConfig {
            max_m,
            lambdas: DEFAULT_GRID
                .iter()
                .map(|&l| Lambda::new(l).expect("grid value"))
                .collect(),
            seed: DEFAULT_SEED,
            witnesses: 1000,
            parallel: false,
            perturbation: None,
        }
    }

    fn max_degree(&self) -> usize {
        2 * self.max_m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOutcome {
    pub check_name: String,
    pub parameters: String,
    pub status: Status,
    /// Largest relative error for identities; largest relative violation for
    /// inequalities (zero when none is violated).
    pub worst_relative_error: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub passed: usize,
    pub failed: usize,
    pub outcomes: Vec<VerifyOutcome>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn render_table(&self) -> String {
        let name_w = self
            .outcomes
            .iter()
            .map(|o| o.check_name.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let param_w = self
            .outcomes
            .iter()
            .map(|o| o.parameters.len())
            .max()
            .unwrap_or(10)
            .max(10);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<name_w$}  {:<param_w$}  {:<6}  {:<21}  detail",
            "check", "parameters", "status", "worst_rel_err"
        );
        for o in &self.outcomes {
            let status = match o.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            let _ = writeln!(
                out,
                "{:<name_w$}  {:<param_w$}  {:<6}  {:<21}  {}",
                o.check_name,
                o.parameters,
                status,
                crate::report::format_float(o.worst_relative_error),
                o.detail
            );
        }
        let _ = writeln!(out, "{} passed, {} failed", self.passed, self.failed);
        out
    }
}

/// Collects the worst error of one check and the first few failure messages.
struct Tally {
    worst: f64,
    failures: Vec<String>,
    failure_count: usize,
}

impl Tally {
    fn new() -> Self {
        Tally {
            worst: 0.0,
            failures: Vec::new(),
            failure_count: 0,
        }
    }

    fn error(&mut self, rel: f64, tol: f64, context: impl FnOnce() -> String) {
        if rel.is_nan() {
            self.worst = f64::NAN;
        } else if !self.worst.is_nan() {
            self.worst = self.worst.max(rel);
        }
        if rel.is_nan() || rel > tol {
            self.fail(context);
        }
    }

    /// Records `lhs < rhs` (strict) and the relative violation if it fails.
    fn less(&mut self, lhs: f64, rhs: f64, context: impl FnOnce() -> String) {
        if lhs.partial_cmp(&rhs) != Some(std::cmp::Ordering::Less) {
            let violation = (lhs - rhs) / rhs.abs().max(f64::MIN_POSITIVE);
            self.worst = self.worst.max(violation);
            self.fail(context);
        }
    }

    fn fail(&mut self, context: impl FnOnce() -> String) {
        self.failure_count += 1;
        if self.failures.len() < 3 {
            self.failures.push(context());
        }
    }

    fn finish(self, name: &str, parameters: String, detail: String) -> VerifyOutcome {
        let status = if self.failure_count == 0 {
            Status::Pass
        } else {
            Status::Fail
        };
        let detail = if self.failure_count == 0 {
            detail
        } else {
            format!(
                "{} failures: {}",
                self.failure_count,
                self.failures.join("; ")
            )
        };
        VerifyOutcome {
            check_name: name.into(),
            parameters,
            status,
            worst_relative_error: self.worst,
            detail,
        }
    }

    fn from_error(name: &str, parameters: String, err: crate::error::Error) -> VerifyOutcome {
        VerifyOutcome {
            check_name: name.into(),
            parameters,
            status: Status::Fail,
            worst_relative_error: f64::NAN,
            detail: err.to_string(),
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

type CheckFn = fn(&VerifyConfig, Lambda) -> Result<VerifyOutcome>;

const PER_LAMBDA: [(&str, CheckFn); 13] = [
    ("prefix_identities", check_prefix),
    ("trace_identities", check_traces),
    ("trace_ordering", check_trace_ordering),
    ("entrywise_domination", check_domination),
    ("factorization", check_factorization),
    ("eigen_ordering", check_eigen_ordering),
    ("power_vs_jacobi", check_power_vs_jacobi),
    ("bounds_and_monotonicity", check_bounds),
    ("degree_one", check_degree_one),
    ("coefficient_oracle", check_coefficient_oracle),
    ("quadrature_oracle", check_quadrature_oracle),
    ("extremal_structure", check_extremal),
    ("limit_surrogate", check_limit_surrogate),
];

pub fn run_verify(config: &VerifyConfig) -> Result<VerifySummary> {
    assert!(config.max_m >= 1, "max_m must be at least 1");
    let mut cells: Vec<(usize, Option<Lambda>)> = Vec::new();
    for (i, _) in GLOBAL.iter().enumerate() {
        cells.push((i, None));
    }
    for &l in &config.lambdas {
        for i in 0..PER_LAMBDA.len() {
            cells.push((i, Some(l)));
        }
    }
    let run = |&(i, l): &(usize, Option<Lambda>)| -> VerifyOutcome {
        match l {
            None => {
                let (name, f) = GLOBAL[i];
                f(config).unwrap_or_else(|e| Tally::from_error(name, String::new(), e))
            }
            Some(l) => {
                let (name, f) = PER_LAMBDA[i];
                f(config, l).unwrap_or_else(|e| Tally::from_error(name, format!("lambda={l}"), e))
            }
        }
    };
    let outcomes: Vec<VerifyOutcome> = if config.parallel {
        in_pool(|| cells.par_iter().map(run).collect())?
    } else {
        cells.iter().map(run).collect()
    };
    let failed = outcomes.iter().filter(|o| o.status == Status::Fail).count();
    Ok(VerifySummary {
        passed: outcomes.len() - failed,
        failed,
        outcomes,
    })
}

fn params(l: Lambda, range: &str) -> String {
    format!("lambda={l}, {range}")
}

fn check_prefix(config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let k_max = (2 * config.max_m + 2).max(100);
    let mut t = Tally::new();
    for row in prefix_and_diag_table(k_max, l) {
        t.error(row.max_rel_error(), 1e-12, || format!("k={}", row.k));
    }
    Ok(t.finish(
        "prefix_identities",
        params(l, &format!("k<={k_max}")),
        "sums match closed forms".into(),
    ))
}

fn check_traces(config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let mut t = Tally::new();
    for m in 1..=config.max_m {
        let tr = traces(m, l);
        t.error(tr.max_rel_error(), 1e-12, || format!("m={m} summed"));
        for (parity, closed) in [
            (Parity::Even, tr.tr_a_closed),
            (Parity::Odd, tr.tr_at_closed),
        ] {
            let mut a = build_matrix(m, parity, l);
            if let Some(p) = config.perturbation {
                a = a.perturbed(p);
            }
            t.error(rel(a.trace(), closed), 1e-12, || {
                format!("m={m} {} matrix", parity.as_str())
            });
        }
    }
    Ok(t.finish(
        "trace_identities",
        params(l, &format!("m<={}", config.max_m)),
        "summed and matrix traces match closed forms".into(),
    ))
}

fn check_trace_ordering(config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let mut t = Tally::new();
    let mut margin = f64::INFINITY;
    let mut prev = traces(1, l);
    for m in 1..=config.max_m {
        let next = traces(m + 1, l);
        t.less(prev.tr_at_closed, prev.tr_a_closed, || {
            format!("m={m} lower")
        });
        t.less(prev.tr_a_closed, prev.tr_at_next_closed, || {
            format!("m={m} upper")
        });
        t.less(prev.tr_at_summed, prev.tr_a_summed, || {
            format!("m={m} lower (summed)")
        });
        t.less(prev.tr_a_summed, next.tr_at_summed, || {
            format!("m={m} upper (summed)")
        });
        margin = margin
            .min(prev.tr_a_closed / prev.tr_at_closed - 1.0)
            .min(prev.tr_at_next_closed / prev.tr_a_closed - 1.0);
        prev = next;
    }
    Ok(t.finish(
        "trace_ordering",
        params(l, &format!("m<={}", config.max_m)),
        format!("min relative gap {margin:.3e}"),
    ))
}

fn check_domination(config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let m_max = config.max_m.min(20);
    let mut t = Tally::new();
    let mut margin = f64::INFINITY;
    for m in 1..=m_max {
        let (lower, upper) = entrywise_domination(m, l);
        t.less(0.0, lower, || format!("m={m} lower margin {lower:.3e}"));
        t.less(0.0, upper, || format!("m={m} upper margin {upper:.3e}"));
        margin = margin.min(lower).min(upper);
    }
    Ok(t.finish(
        "entrywise_domination",
        params(l, &format!("m<={m_max}")),
        format!("min relative gap {margin:.3e}"),
    ))
}

fn check_factorization(config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let mut t = Tally::new();
    for m in 1..=config.max_m {
        for parity in [Parity::Even, Parity::Odd] {
            let a = build_matrix(m, parity, l).entries;
            let g = build_factor(m, parity, l).gram();
            let scale = a.max_abs();
            let mut worst: f64 = 0.0;
            for i in 0..m {
                for j in 0..m {
                    worst = worst.max((g[(i, j)] - a[(i, j)]).abs() / scale);
                }
            }
            t.error(worst, 1e-12, || format!("m={m} {} gram", parity.as_str()));
            if !a.is_symmetric() {
                t.fail(|| format!("m={m} {} not symmetric", parity.as_str()));
            }
            if let Err(e) = cholesky(&a) {
                t.fail(|| format!("m={m} {}: {e}", parity.as_str()));
            }
        }
    }
    Ok(t.finish(
        "factorization",
        params(l, &format!("m<={}", config.max_m)),
        "gram of factor equals matrix; Cholesky succeeds".into(),
    ))
}

fn check_eigen_ordering(config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let m_max = config.max_m.min(30);
    let mut t = Tally::new();
    for m in 1..=m_max {
        let o = eigen_ordering_check(m, l)?;
        t.less(o.nu_tilde_m, o.nu_m, || format!("m={m} lower"));
        t.less(o.nu_m, o.nu_tilde_next, || format!("m={m} upper"));
    }
    Ok(t.finish(
        "eigen_ordering",
        params(l, &format!("m<={m_max}")),
        "odd(m) < even(m) < odd(m+1)".into(),
    ))
}

fn check_power_vs_jacobi(config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let opts = PowerOptions::default();
    let mut t = Tally::new();
    for m in 1..=config.max_m {
        for parity in [Parity::Even, Parity::Odd] {
            let a = build_matrix(m, parity, l).entries;
            let power = dominant_eig(&a, &opts)?;
            let jacobi = *full_spectrum_jacobi(&a, 1e-15)
                .last()
                .expect("non-empty spectrum");
            t.error(rel(power.eigenvalue, jacobi), 1e-10, || {
                format!("m={m} {}", parity.as_str())
            });
            if power.eigenvector.iter().any(|&x| x.is_nan() || x <= 0.0) {
                t.fail(|| format!("m={m} {} Perron vector not positive", parity.as_str()));
            }
        }
    }
    Ok(t.finish(
        "power_vs_jacobi",
        params(l, &format!("m<={}", config.max_m)),
        "dominant eigenvalues agree; Perron vectors positive".into(),
    ))
}

fn check_bounds(config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let n_max = config.max_degree();
    let mut t = Tally::new();
    let mut prev = 0.0;
    for n in 1..=n_max {
        let r = sharp_constant(n, l)?;
        let c = r.sharp_constant;
        let tb = trace_bound(n, l);
        let theorem = theorem_bound(n, l);
        t.less(c, tb * (1.0 + 1e-12), || format!("n={n} c vs trace bound"));
        t.less(tb, theorem * (1.0 + 1e-12), || {
            format!("n={n} trace vs theorem bound")
        });
        t.less(c, theorem, || format!("n={n} c vs theorem bound"));
        t.less(prev, c, || format!("n={n} not increasing"));
        if r.branch != Parity::of(n) {
            t.fail(|| format!("n={n} winning branch is {}", r.branch.as_str()));
        }
        prev = c;
    }
    Ok(t.finish(
        "bounds_and_monotonicity",
        params(l, &format!("n<={n_max}")),
        "c <= 2sqrt(trace) <= bound; c increasing; branch = parity of n".into(),
    ))
}

fn check_degree_one(_config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let mut t = Tally::new();
    let c = sharp_constant(1, l)?.sharp_constant;
    let expected = (2.0 * l.value() + 2.0).sqrt();
    t.error(rel(c, expected), 1e-12, || {
        format!("c_1={c} expected {expected}")
    });
    Ok(t.finish(
        "degree_one",
        params(l, "n=1"),
        "c = sqrt(2 lambda + 2)".into(),
    ))
}

fn check_coefficient_oracle(config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let n_max = config.max_degree().min(60);
    let mut t = Tally::new();
    for n in 1..=n_max {
        let c = sharp_constant(n, l)?.sharp_constant;
        let o = oracle_constant_coefficient(n, l)?;
        t.error(rel(o, c), 1e-10, || format!("n={n}: {o} vs {c}"));
    }
    Ok(t.finish(
        "coefficient_oracle",
        params(l, &format!("n<={n_max}")),
        "full coefficient-space matrix agrees".into(),
    ))
}

fn check_quadrature_oracle(config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let n_max = config.max_degree().min(30);
    let mut t = Tally::new();
    for n in 1..=n_max {
        let c = sharp_constant(n, l)?.sharp_constant;
        let o = oracle_constant_quadrature(n, l)?;
        t.error(rel(o, c), 1e-8, || format!("n={n}: {o} vs {c}"));
    }
    Ok(t.finish(
        "quadrature_oracle",
        params(l, &format!("n<={n_max}")),
        "quadrature generalized eigenproblem agrees".into(),
    ))
}

fn witness_rng(seed: u64, n: usize, l: Lambda) -> ChaCha8Rng {
    let mix = (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ l.value().to_bits().rotate_left(17);
    ChaCha8Rng::seed_from_u64(seed ^ mix)
}

fn check_extremal(config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let n_max = config.max_degree().min(30);
    let mut t = Tally::new();
    for n in 1..=n_max {
        let p = extremal_polynomial(n, l, &[])?;
        if p.parity != Parity::of(n) {
            t.fail(|| format!("n={n} parity {}", p.parity.as_str()));
        }
        if p.perron_vector.iter().any(|&x| x.is_nan() || x <= 0.0) {
            t.fail(|| format!("n={n} Perron vector not positive"));
        }
        let defect = p.parity_defect();
        t.error(defect, 1e-10, || {
            format!("n={n} parity defect {defect:.3e}")
        });
        t.error(rel(p.achieved_ratio, p.sharp_constant), 1e-8, || {
            format!("n={n} ratio {} vs {}", p.achieved_ratio, p.sharp_constant)
        });

        let sampler = RayleighSampler::new(n, l);
        let extremal = p.dense_coefficients();
        let scale = extremal.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
        let mut rng = witness_rng(config.seed, n, l);
        let cap = p.sharp_constant * (1.0 + 1e-10);
        for w in 0..config.witnesses {
            let coeffs: Vec<f64> = if w % 2 == 0 {
                (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect()
            } else {
                let eps = 10f64.powi(-rng.gen_range(1..8));
                extremal
                    .iter()
                    .map(|&x| x + eps * scale * rng.gen_range(-1.0..1.0))
                    .collect()
            };
            let ratio = sampler.ratio(&coeffs);
            t.less(ratio, cap, || {
                format!(
                    "n={n} witness {w} ratio {ratio} exceeds {}",
                    p.sharp_constant
                )
            });
        }
    }
    Ok(t.finish(
        "extremal_structure",
        params(l, &format!("n<={n_max}, witnesses={}", config.witnesses)),
        "parity, positivity, attainment and random witnesses hold".into(),
    ))
}

fn check_limit_surrogate(config: &VerifyConfig, l: Lambda) -> Result<VerifyOutcome> {
    let n_max = config.max_degree().max(20);
    let (_, upper) = limit_bracket(l);
    let mut t = Tally::new();
    let mut last_above = None;
    for n in 20..=n_max {
        let r = sharp_constant(n, l)?;
        let scaled = r.sharp_constant / ((n + 1) as f64 * (n as f64 + 2.0 * l.value() + 1.0));
        t.less(scaled, upper, || {
            format!("n={n} c/((n+1)(n+2l+1))={scaled}")
        });
        if r.normalized >= upper {
            last_above = Some(n);
        }
    }
    let detail = match last_above {
        Some(n) => format!("c/((n+1)(n+2l+1)) below {upper:.7}; c/n^2 still above it at n={n}"),
        None => format!("c/((n+1)(n+2l+1)) and c/n^2 below {upper:.7}"),
    };
    Ok(t.finish(
        "limit_surrogate",
        params(l, &format!("20<=n<={n_max}")),
        detail,
    ))
}

type GlobalFn = fn(&VerifyConfig) -> Result<VerifyOutcome>;

const GLOBAL: [(&str, GlobalFn); 4] = [
    ("bessel_zeros", check_bessel),
    ("legendre_spot_values", check_legendre_spots),
    ("legendre_bracket", check_legendre_bracket),
    ("limit_annotations", check_limit_annotations),
];

fn check_bessel(_config: &VerifyConfig) -> Result<VerifyOutcome> {
    let mut t = Tally::new();
    for (nu, expected) in [(-0.5, PI / 2.0), (0.5, PI), (0.0, 2.404825557695773)] {
        let z = bessel_first_zero(nu)?;
        t.error((z - expected).abs(), 1e-10, || format!("nu={nu}: {z}"));
    }
    let half = Lambda::new(0.5)?;
    let c = sharp_constant(100, half)?.sharp_constant;
    let dev = (c / 101.5f64.powi(2) - limit_value(half)?).abs();
    t.error(dev, 1e-3, || format!("n=100 deviation {dev:.3e}"));
    Ok(t.finish(
        "bessel_zeros",
        "nu in {-1/2, 0, 1/2}".into(),
        format!("|c_100/101.5^2 - 1/pi| = {dev:.3e}"),
    ))
}

fn check_legendre_spots(_config: &VerifyConfig) -> Result<VerifyOutcome> {
    let half = Lambda::new(0.5)?;
    let mut t = Tally::new();
    let c2 = sharp_constant(2, half)?.sharp_constant;
    t.error(rel(c2, 15f64.sqrt()), 1e-12, || format!("c_2={c2}"));
    let c3 = sharp_constant(3, half)?.sharp_constant;
    let exact = ((45.0 + 1605f64.sqrt()) / 2.0).sqrt();
    t.error(rel(c3, exact), 1e-12, || format!("c_3={c3}"));
    Ok(t.finish(
        "legendre_spot_values",
        "lambda=0.5, n in {2, 3}".into(),
        "c_2 = sqrt(15); c_3 = sqrt((45 + sqrt(1605))/2)".into(),
    ))
}

fn check_legendre_bracket(_config: &VerifyConfig) -> Result<VerifyOutcome> {
    let half = Lambda::new(0.5)?;
    let mut t = Tally::new();
    for n in 6..=40 {
        let c = sharp_constant(n, half)?.sharp_constant;
        let b = legendre_bracket(n)?;
        t.less(b.lower, c, || format!("n={n} below bracket"));
        t.less(c, b.upper, || format!("n={n} above bracket"));
    }
    Ok(t.finish(
        "legendre_bracket",
        "lambda=0.5, 6<=n<=40".into(),
        "c inside the R=13 / R=-6 bracket".into(),
    ))
}

fn check_limit_annotations(config: &VerifyConfig) -> Result<VerifyOutcome> {
    let mut t = Tally::new();
    for &l in &config.lambdas {
        let limit = limit_value(l)?;
        let (lo, hi) = limit_bracket(l);
        t.less(lo, limit * (1.0 + 1e-12), || {
            format!("lambda={l} limit below bracket")
        });
        t.less(limit, hi * (1.0 + 1e-12), || {
            format!("lambda={l} limit above bracket")
        });
        if let Some((a, b)) = published_limit_bracket(l) {
            t.less(a, limit, || {
                format!("lambda={l} limit below published bracket")
            });
            t.less(limit, b, || {
                format!("lambda={l} limit above published bracket")
            });
        }
    }
    Ok(t.finish(
        "limit_annotations",
        "lambda grid".into(),
        "Bessel limit consistent with the limit brackets".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(max_m: usize) -> VerifyConfig {
        VerifyConfig {
            witnesses: 50,
            ..VerifyConfig::new(max_m)
        }
    }

    #[test]
    fn small_suite_passes() {
        let summary = run_verify(&small(4)).unwrap();
        assert!(summary.all_passed(), "{}", summary.render_table());
        assert_eq!(summary.outcomes.len(), GLOBAL.len() + 8 * PER_LAMBDA.len());
    }

    #[test]
    fn perturbation_is_caught() {
        let cfg = VerifyConfig {
            perturbation: Some(1e-6),
            lambdas: vec![Lambda::new(0.5).unwrap()],
            ..small(3)
        };
        let summary = run_verify(&cfg).unwrap();
        assert!(!summary.all_passed());
        let failed: Vec<&str> = summary
            .outcomes
            .iter()
            .filter(|o| o.status == Status::Fail)
            .map(|o| o.check_name.as_str())
            .collect();
        assert_eq!(failed, ["trace_identities"]);
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = run_verify(&small(3)).unwrap();
        let parallel = run_verify(&VerifyConfig {
            parallel: true,
            ..small(3)
        })
        .unwrap();
        assert_eq!(serial.render_table(), parallel.render_table());
    }
}
