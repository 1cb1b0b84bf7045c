//! Reference asymptotics for `c_{n,λ}`: the Bessel-zero limit of `c/n²`,
//! the limit bracket `1/√(2(2λ+1)(2λ+5)) ≤ lim c/n² ≤ 1/(2√(2λ+1))`, the
//! Legendre-case bracket with remainder `−6 < R_n < 13`, and the published
//! limit brackets for `λ = 0` and `λ = 1`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constant::sharp_constant;
use crate::error::{Error, Result};
use crate::gegenbauer::Lambda;

const SCAN_WINDOW: f64 = 40.0;
const SCAN_POINTS: usize = 2000;
const MAX_ORDER: f64 = 35.0;

/// `J_ν(x) · Γ(ν+1) / (x/2)^ν` by its ascending series. Has the same sign as
/// `J_ν` on `x > 0`.
fn bessel_reduced(nu: f64, x: f64) -> f64 {
    let y = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= y / (k * (nu + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k > x {
            return sum;
        }
        if k > 500.0 {
            return sum;
        }
    }
}

/// First positive zero `j_{ν,1}` of `J_ν`, for `-1 < ν ≤ 35`.
pub fn bessel_first_zero(nu: f64) -> Result<f64> {
    if nu.is_nan() || nu <= -1.0 {
        return Err(Error::Domain(format!(
            "Bessel order must exceed -1 (got {nu})"
        )));
    }
    if nu > MAX_ORDER {
        return Err(Error::Domain(format!(
            "Bessel order {nu} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    let step = SCAN_WINDOW / SCAN_POINTS as f64;
    let mut lo = 0.0;
    let mut f_lo: f64 = 1.0;
    for i in 1..=SCAN_POINTS {
        let hi = step * i as f64;
        let f_hi = bessel_reduced(nu, hi);
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if f_hi.signum() != f_lo.signum() {
            return Ok(bisect(nu, lo, hi, f_lo));
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::BesselSearch {
        nu,
        window: SCAN_WINDOW,
    })
}

fn bisect(nu: f64, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let f_mid = bessel_reduced(nu, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Order `(2λ − 3)/4` of the Bessel function governing `lim c/n²`.
pub fn bessel_order(lambda: Lambda) -> f64 {
    (2.0 * lambda.value() - 3.0) / 4.0
}

/// `lim c_{n,λ}/n² = 1 / (2 j_{(2λ−3)/4, 1})`
pub fn limit_value(lambda: Lambda) -> Result<f64> {
    Ok(0.5 / bessel_first_zero(bessel_order(lambda))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LegendreBracket {
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
}

impl LegendreBracket {
    pub fn contains(&self, c: f64) -> bool {
        self.lower < c && c < self.upper
    }
}

/// Bracket for `c_{n,1/2}`, `n > 5`:
///
/// ```text
/// c = (s²/π) · (1 − (π² − 3)/(12 s²) + R/s⁴)^(-1),   s = n + 3/2,   −6 < R < 13
/// ```
pub fn legendre_bracket(n: usize) -> Result<LegendreBracket> {
    if n <= 5 {
        return Err(Error::Domain(format!(
            "the Legendre asymptotic bracket needs n > 5 (got {n})"
        )));
    }
    let s = n as f64 + 1.5;
    let s2 = s * s;
    let base = s2 / PI;
    let paren = |r: f64| 1.0 - (PI * PI - 3.0) / (12.0 * s2) + r / (s2 * s2);
    Ok(LegendreBracket {
        n,
        lower: base / paren(13.0),
        upper: base / paren(-6.0),
    })
}

/// `(1/√(2(2λ+1)(2λ+5)), 1/(2√(2λ+1)))`
pub fn limit_bracket(lambda: Lambda) -> (f64, f64) {
    let l = lambda.value();
    let lower = 1.0 / (2.0 * (2.0 * l + 1.0) * (2.0 * l + 5.0)).sqrt();
    let upper = 1.0 / (2.0 * (2.0 * l + 1.0).sqrt());
    (lower, upper)
}

/// Published bracket for `lim c/n²` at `λ = 0` and `λ = 1`.
pub fn published_limit_bracket(lambda: Lambda) -> Option<(f64, f64)> {
    let v = lambda.value();
    if v == 0.0 {
        Some((0.472135, 0.478849))
    } else if v == 1.0 {
        Some((0.248549, 0.256861))
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub n: usize,
    pub c: f64,
    /// `c / n²`
    pub normalized: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitBracket {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticsReport {
    pub lambda: Lambda,
    pub bessel_order: f64,
    pub bessel_first_zero: f64,
    pub limit_value: f64,
    pub limit_lower: f64,
    pub limit_upper: f64,
    pub trajectory: Vec<TrajectoryPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published_bracket: Option<LimitBracket>,
}

impl AsymptoticsReport {
    /// Trajectory points with `n ≥ n_min` whose `c/n²` is not strictly below
    /// the upper limit bound.
    pub fn points_above_upper(&self, n_min: usize) -> Vec<TrajectoryPoint> {
        self.trajectory
            .iter()
            .filter(|p| p.n >= n_min && p.normalized >= self.limit_upper)
            .copied()
            .collect()
    }
}

pub fn asymptotic_report(lambda: Lambda, n_list: &[usize]) -> Result<AsymptoticsReport> {
    if n_list.is_empty() {
        return Err(Error::Domain("empty degree list".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) || n_list[0] == 0 {
        return Err(Error::Domain(
            "degree list must be positive and strictly ascending".into(),
        ));
    }
    let nu = bessel_order(lambda);
    let zero = bessel_first_zero(nu)?;
    let (limit_lower, limit_upper) = limit_bracket(lambda);
    let trajectory = n_list
        .iter()
        .map(|&n| {
            let c = sharp_constant(n, lambda)?.sharp_constant;
            Ok(TrajectoryPoint {
                n,
                c,
                normalized: c / (n * n) as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AsymptoticsReport {
        lambda,
        bessel_order: nu,
        bessel_first_zero: zero,
        limit_value: 0.5 / zero,
        limit_lower,
        limit_upper,
        trajectory,
        published_bracket: published_limit_bracket(lambda)
            .map(|(lower, upper)| LimitBracket { lower, upper }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(v: f64) -> Lambda {
        Lambda::new(v).unwrap()
    }

    #[test]
    fn half_integer_orders() {
        assert!((bessel_first_zero(-0.5).unwrap() - PI / 2.0).abs() < 1e-10);
        assert!((bessel_first_zero(0.5).unwrap() - PI).abs() < 1e-10);
        assert!((bessel_first_zero(1.5).unwrap() - 4.493409457909064).abs() < 1e-10);
    }

    #[test]
    fn integer_orders() {
        assert!((bessel_first_zero(0.0).unwrap() - 2.404825557695773).abs() < 1e-10);
        assert!((bessel_first_zero(1.0).unwrap() - 3.831705970207512).abs() < 1e-10);
    }

    #[test]
    fn order_out_of_range() {
        assert!(bessel_first_zero(-1.0).is_err());
        assert!(bessel_first_zero(36.0).is_err());
    }

    #[test]
    fn limit_bracket_values() {
        let (lo, hi) = limit_bracket(lam(0.5));
        assert!((hi - 0.3535533).abs() < 1e-7);
        assert!((lo - 0.2041241).abs() < 1e-7);
        assert!(lo < 1.0 / PI && 1.0 / PI < hi);
    }

    #[test]
    fn limit_inside_brackets() {
        for &l in &[-0.49, -0.25, 0.0, 0.25, 0.5, 1.0, 2.5, 10.0] {
            let lambda = lam(l);
            let limit = limit_value(lambda).unwrap();
            let (lo, hi) = limit_bracket(lambda);
            assert!(lo <= limit && limit <= hi, "λ={l}: {lo} {limit} {hi}");
            if let Some((a, b)) = published_limit_bracket(lambda) {
                assert!(a <= limit && limit <= b, "λ={l}: {a} {limit} {b}");
            }
        }
        assert!((limit_value(lam(0.5)).unwrap() - 1.0 / PI).abs() < 1e-11);
    }

    #[test]
    fn legendre_bracket_shape() {
        assert!(legendre_bracket(5).is_err());
        let b = legendre_bracket(10).unwrap();
        assert!(b.lower < b.upper);
        assert!((b.upper - b.lower) / b.lower < 2e-3);
        let b = legendre_bracket(100_000).unwrap();
        let s2 = 100_001.5f64.powi(2);
        assert!((b.lower / s2 - 1.0 / PI).abs() < 1e-9);
        assert!((b.upper / s2 - 1.0 / PI).abs() < 1e-9);
    }

    #[test]
    fn legendre_bracket_contains_legendre_constants() {
        for n in 6..=40 {
            let c = sharp_constant(n, lam(0.5)).unwrap().sharp_constant;
            let b = legendre_bracket(n).unwrap();
            assert!(b.contains(c), "n={n}: {} < {c} < {}", b.lower, b.upper);
        }
    }

    #[test]
    fn report_annotations() {
        let r = asymptotic_report(lam(0.0), &[10, 20]).unwrap();
        assert_eq!(
            r.published_bracket,
            Some(LimitBracket {
                lower: 0.472135,
                upper: 0.478849
            })
        );
        let r = asymptotic_report(lam(1.0), &[10]).unwrap();
        assert!(r.published_bracket.is_some());
        let r = asymptotic_report(lam(0.5), &[10]).unwrap();
        assert!(r.published_bracket.is_none());
        assert!(asymptotic_report(lam(0.5), &[]).is_err());
        assert!(asymptotic_report(lam(0.5), &[10, 10]).is_err());
    }
}
