//! Gegenbauer polynomials, the reduced normalization `h_k` and the expansion
//! of derivatives of orthonormal Gegenbauer polynomials.
//!
//! The reduced normalization is
//!
//! ```text
//! h_k² = Γ(k + 2λ) / (k! (k + λ))
//! ```
//!
//! Only ratios of these quantities are ever needed, and every ratio is
//! evaluated as a finite product of rational factors. No Gamma function is
//! evaluated here, which keeps `λ = 0` (where `Γ(2λ)` has a pole) and `λ`
//! close to `-1/2` well defined.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gegenbauer parameter `λ > -1/2` of the weight `(1 - t²)^(λ - 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Lambda(f64);

impl Lambda {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > -0.5 {
            Ok(Self(value))
        } else {
            Err(Error::InvalidLambda(value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `λ = 0`, where the polynomial basis switches to the Chebyshev limit.
    #[inline]
    pub fn is_chebyshev_limit(self) -> bool {
        self.0 == 0.0
    }
}

impl TryFrom<f64> for Lambda {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<Lambda> for f64 {
    fn from(lambda: Lambda) -> f64 {
        lambda.0
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Evaluates `C_k^λ(t)`.
///
/// At `λ = 0` the degree `k ≥ 1` members are the limit basis
/// `lim C_k^λ / λ = (2/k) T_k`.
pub fn eval_gegenbauer(k: usize, lambda: Lambda, t: f64) -> f64 {
    let (values, _) = eval_gegenbauer_all(k, lambda, t);
    values[k]
}

/// Values and first derivatives of `C_0^λ, …, C_max^λ` at `t`, from the
/// three-term recurrence and its derivative.
pub fn eval_gegenbauer_all(max_degree: usize, lambda: Lambda, t: f64) -> (Vec<f64>, Vec<f64>) {
    let mut values = vec![0.0; max_degree + 1];
    let mut derivs = vec![0.0; max_degree + 1];
    values[0] = 1.0;
    if max_degree == 0 {
        return (values, derivs);
    }

    if lambda.is_chebyshev_limit() {
        // T_k first, rescaled to (2/k) T_k afterwards.
        values[1] = t;
        derivs[1] = 1.0;
        for k in 2..=max_degree {
            values[k] = 2.0 * t * values[k - 1] - values[k - 2];
            derivs[k] = 2.0 * values[k - 1] + 2.0 * t * derivs[k - 1] - derivs[k - 2];
        }
        for k in 1..=max_degree {
            let scale = 2.0 / k as f64;
            values[k] *= scale;
            derivs[k] *= scale;
        }
        return (values, derivs);
    }

    let l = lambda.value();
    values[1] = 2.0 * l * t;
    derivs[1] = 2.0 * l;
    for k in 2..=max_degree {
        let kf = k as f64;
        let a = 2.0 * (kf + l - 1.0);
        let b = kf + 2.0 * l - 2.0;
        values[k] = (a * t * values[k - 1] - b * values[k - 2]) / kf;
        derivs[k] = (a * (values[k - 1] + t * derivs[k - 1]) - b * derivs[k - 2]) / kf;
    }
    (values, derivs)
}

/// `h_j² / h_k²` as a product of `|j - k|` rational factors.
///
/// For `j > k`:
///
/// ```text
/// h_j² / h_k² = (k + λ)/(j + λ) · Π_{r=k}^{j-1} (r + 2λ)/(r + 1)
/// ```
///
/// At `λ = 0` the reduced `h_0` is infinite; ratios involving index 0 then
/// return the limiting value `0` (or `∞` in the reciprocal direction).
pub fn h_squared_ratio(j: usize, k: usize, lambda: Lambda) -> f64 {
    use std::cmp::Ordering;
    match j.cmp(&k) {
        Ordering::Equal => 1.0,
        Ordering::Greater => ascending_h_ratio(k, j, lambda.value()),
        Ordering::Less => 1.0 / ascending_h_ratio(j, k, lambda.value()),
    }
}

// h_hi² / h_lo² for hi > lo.
fn ascending_h_ratio(lo: usize, hi: usize, l: f64) -> f64 {
    let mut ratio = (lo as f64 + l) / (hi as f64 + l);
    for r in lo..hi {
        let r = r as f64;
        ratio *= (r + 2.0 * l) / (r + 1.0);
    }
    ratio
}

/// One term `coefficient · p_target` of the expansion of `p_j'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionTerm {
    pub target: usize,
    pub coefficient: f64,
}

/// Expansion of the derivative of the orthonormal polynomial `p_j = C_j^λ / h_j`
/// in the orthonormal polynomials of lower degree:
///
/// ```text
/// p_j' = Σ_{k=0}^{⌊(j-1)/2⌋} 2 (j-2k-1+λ) h_{j-2k-1} / h_j · p_{j-2k-1}
/// ```
///
/// Coefficients are stored by magnitude. The only term whose sign could
/// differ is the degree-0 one for `λ < 0`; the degree-0 orthonormal element
/// is taken with the sign that makes it positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeExpansion {
    pub degree: usize,
    pub terms: Vec<ExpansionTerm>,
}

impl DerivativeExpansion {
    pub fn coefficient(&self, target: usize) -> Option<f64> {
        self.terms
            .iter()
            .find(|term| term.target == target)
            .map(|term| term.coefficient)
    }
}

pub fn derivative_expansion(j: usize, lambda: Lambda) -> DerivativeExpansion {
    assert!(j >= 1, "derivative expansion needs degree >= 1");
    let terms = (0..=(j - 1) / 2)
        .map(|k| {
            let target = j - 2 * k - 1;
            ExpansionTerm {
                target,
                coefficient: expansion_coefficient_squared(j, target, lambda.value()).sqrt(),
            }
        })
        .collect();
    DerivativeExpansion { degree: j, terms }
}

// 4 (t+λ)² h_t² / h_j², with the (t+λ)/(t+2λ) factor at t = 0 replaced by its
// value 1/2 so that λ = 0 needs no limit.
fn expansion_coefficient_squared(j: usize, target: usize, l: f64) -> f64 {
    let t = target as f64;
    let lead = if target == 0 {
        0.5
    } else {
        (t + l) / (t + 2.0 * l)
    };
    let mut value = 4.0 * (j as f64 + l) * (t + 1.0) * lead;
    for r in target + 1..j {
        let r = r as f64;
        value *= (r + 1.0) / (r + 2.0 * l);
    }
    value
}

/// Coefficient of `C_target^λ` in `d/dt C_j^λ` for the polynomial basis of
/// [`eval_gegenbauer`]: `2 (target + λ)`, except at `λ = 0` where the
/// constant term of the Chebyshev limit basis carries coefficient 2.
pub fn basis_derivative_coefficient(target: usize, lambda: Lambda) -> f64 {
    if target == 0 && lambda.is_chebyshev_limit() {
        2.0
    } else {
        2.0 * (target as f64 + lambda.value())
    }
}

/// The weight `(1 - t²)^(λ - 1/2)`.
pub fn eval_weight(lambda: Lambda, t: f64) -> Result<f64> {
    let exponent = lambda.value() - 0.5;
    if t.abs() > 1.0 || (t.abs() == 1.0 && exponent < 0.0) {
        return Err(Error::Domain(format!(
            "weight with lambda = {lambda} is not defined at t = {t}"
        )));
    }
    Ok((1.0 - t * t).powf(exponent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lam(v: f64) -> Lambda {
        Lambda::new(v).unwrap()
    }

    const GRID: [f64; 8] = [-0.49, -0.25, 0.0, 0.25, 0.5, 1.0, 2.5, 10.0];

    #[test]
    fn lambda_rejects_out_of_range() {
        assert!(Lambda::new(-0.5).is_err());
        assert!(Lambda::new(-0.7).is_err());
        assert!(Lambda::new(f64::NAN).is_err());
        assert!(Lambda::new(f64::INFINITY).is_err());
        assert!(Lambda::new(-0.4999).is_ok());
    }

    #[test]
    fn spot_values() {
        assert_eq!(eval_gegenbauer(0, lam(3.0), 0.3), 1.0);
        assert!((eval_gegenbauer(1, lam(0.5), 0.5) - 0.5).abs() < 1e-15);
        assert!((eval_gegenbauer(3, lam(0.5), 0.4) + 0.44).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_limit_basis() {
        // (2/k) cos(k θ)
        let theta: f64 = 0.7;
        let t = theta.cos();
        for k in 1..12 {
            let expected = 2.0 / k as f64 * (k as f64 * theta).cos();
            assert!((eval_gegenbauer(k, lam(0.0), t) - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn h_ratio_examples() {
        assert_eq!(h_squared_ratio(5, 5, lam(1.3)), 1.0);
        assert!((h_squared_ratio(3, 1, lam(0.5)) - 3.0 / 7.0).abs() < 1e-15);
        assert!((h_squared_ratio(2, 0, lam(1.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expansion_examples() {
        let e = derivative_expansion(1, lam(0.5));
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].target, 0);
        assert!((e.terms[0].coefficient - 3f64.sqrt()).abs() < 1e-14);

        let l = 1.0;
        let e = derivative_expansion(2, lam(l));
        assert_eq!(e.terms.len(), 1);
        let expected = 2.0 * (1.0 + l) * h_squared_ratio(1, 2, lam(l)).sqrt();
        assert!((e.terms[0].coefficient - expected).abs() < 1e-14);

        let e = derivative_expansion(5, lam(0.5));
        let targets: Vec<_> = e.terms.iter().map(|t| t.target).collect();
        assert_eq!(targets, vec![4, 2, 0]);
        assert!(e.terms.iter().all(|t| t.coefficient > 0.0));
    }

    #[test]
    fn expansion_matches_gamma_free_ratio_away_from_zero() {
        for &l in &GRID {
            if l == 0.0 {
                continue;
            }
            let lambda = lam(l);
            for j in 1..20 {
                let e = derivative_expansion(j, lambda);
                assert_eq!(e.terms.len(), j.div_ceil(2));
                for term in &e.terms {
                    let t = term.target;
                    let expected =
                        2.0 * (t as f64 + l).abs() * h_squared_ratio(t, j, lambda).sqrt();
                    let rel = (term.coefficient - expected).abs() / expected;
                    assert!(rel < 1e-13, "j={j} t={t} λ={l}: {rel}");
                }
            }
        }
    }

    // d/dt C_j = Σ 2(t+λ) C_t, checked against 2λ C_{j-1}^{λ+1} (λ ≠ 0) or a
    // Richardson-extrapolated central difference (λ = 0).
    #[test]
    fn derivative_identity_on_grid() {
        let samples: Vec<f64> = (0..=20).map(|i| -0.95 + 0.095 * i as f64).collect();
        for &l in &GRID {
            let lambda = lam(l);
            for j in 1..16 {
                let expansion = derivative_expansion(j, lambda);
                for &x in &samples {
                    let (vals, _) = eval_gegenbauer_all(j, lambda, x);
                    let rhs: f64 = expansion
                        .terms
                        .iter()
                        .map(|term| {
                            basis_derivative_coefficient(term.target, lambda) * vals[term.target]
                        })
                        .sum();
                    let (lhs, tol) = if l != 0.0 {
                        let shifted = lam(l + 1.0);
                        (2.0 * l * eval_gegenbauer(j - 1, shifted, x), 1e-10)
                    } else {
                        let f = |y: f64| eval_gegenbauer(j, lambda, y);
                        let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
                        let h = 1e-4;
                        ((4.0 * d(h / 2.0) - d(h)) / 3.0, 1e-7)
                    };
                    let scale = lhs.abs().max(1.0);
                    assert!(
                        (lhs - rhs).abs() <= tol * scale,
                        "λ={l} j={j} x={x}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn recurrence_derivative_matches_identity() {
        let lambda = lam(1.5);
        let (_, d) = eval_gegenbauer_all(9, lambda, 0.31);
        let expected = 3.0 * eval_gegenbauer(8, lam(2.5), 0.31);
        assert!((d[9] - expected).abs() < 1e-12 * expected.abs().max(1.0));
    }

    #[test]
    fn weight_values() {
        assert!((eval_weight(lam(0.5), 0.9).unwrap() - 1.0).abs() < 1e-15);
        assert!((eval_weight(lam(1.5), 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((eval_weight(lam(0.0), 0.6).unwrap() - 1.25).abs() < 1e-15);
        assert!(eval_weight(lam(0.25), 1.0).is_err());
        assert!(eval_weight(lam(0.25), -1.0).is_err());
        assert_eq!(eval_weight(lam(1.0), 1.0).unwrap(), 0.0);
    }

    fn lambda_strategy() -> impl Strategy<Value = f64> {
        prop_oneof![-0.499f64..10.0, Just(0.0), Just(-0.49)]
    }

    proptest! {
        #[test]
        fn h_ratio_is_reciprocal(j in 0usize..60, k in 0usize..60, l in lambda_strategy()) {
            prop_assume!(l != 0.0 || (j != 0 && k != 0));
            let lambda = lam(l);
            let prod = h_squared_ratio(j, k, lambda) * h_squared_ratio(k, j, lambda);
            prop_assert!((prod - 1.0).abs() <= 1e-14);
        }

        #[test]
        fn h_ratio_is_transitive(j in 0usize..60, k in 0usize..60, i in 0usize..60, l in lambda_strategy()) {
            prop_assume!(l != 0.0 || (j != 0 && k != 0 && i != 0));
            let lambda = lam(l);
            let direct = h_squared_ratio(j, k, lambda);
            let chained = h_squared_ratio(j, i, lambda) * h_squared_ratio(i, k, lambda);
            prop_assert!((direct - chained).abs() <= 1e-13 * direct);
        }

        #[test]
        fn expansion_coefficients_positive(j in 1usize..200, l in lambda_strategy()) {
            let e = derivative_expansion(j, lam(l));
            prop_assert_eq!(e.terms.len(), j.div_ceil(2));
            for term in &e.terms {
                prop_assert!(term.coefficient > 0.0 && term.coefficient.is_finite());
                prop_assert_eq!((j - 1 - term.target) % 2, 0);
            }
        }
    }
}
