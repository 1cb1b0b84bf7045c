//! The sharp Markov constant and its extremal polynomial.
//!
//! For `n = 2m` the constant is `2√ν_m`, for `n = 2m + 1` it is `2√ν̃_{m+1}`,
//! where `ν` and `ν̃` are the largest eigenvalues of the even and odd Gram
//! blocks. Both blocks are always solved and compared, so the parity of the
//! winning branch is observed rather than assumed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gegenbauer::{eval_gegenbauer_all, h_squared_ratio, Lambda};
use crate::matrices::{build_matrix, trace_even_closed, trace_odd_closed, Parity};
use crate::quadrature::{oracle_constant_coefficient, oracle_constant_quadrature, RayleighSampler};
use crate::spectral::{dominant_eig, PowerOptions, SpectralResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleCheck {
    pub coefficient: f64,
    pub quadrature: f64,
    /// `|oracle − c| / c`
    pub coefficient_deviation: f64,
    pub quadrature_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarkovReport {
    pub n: usize,
    pub lambda: Lambda,
    pub sharp_constant: f64,
    pub branch: Parity,
    /// Largest eigenvalue of `A_{⌊n/2⌋}`; absent for `n = 1`.
    pub nu_even: Option<f64>,
    /// Largest eigenvalue of `Ã_{⌊(n+1)/2⌋}`.
    pub nu_odd: f64,
    pub trace_bound: f64,
    pub theorem_bound: f64,
    /// `c / n²`
    pub normalized: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

impl MarkovReport {
    /// Runs both independent oracles and records their deviations.
    pub fn with_oracles(mut self) -> Result<Self> {
        let coefficient = oracle_constant_coefficient(self.n, self.lambda)?;
        let quadrature = oracle_constant_quadrature(self.n, self.lambda)?;
        let c = self.sharp_constant;
        self.oracle = Some(OracleCheck {
            coefficient,
            quadrature,
            coefficient_deviation: (coefficient - c).abs() / c,
            quadrature_deviation: (quadrature - c).abs() / c,
        });
        Ok(self)
    }
}

struct Blocks {
    even: Option<SpectralResult>,
    odd: SpectralResult,
}

impl Blocks {
    fn winner(&self) -> (Parity, &SpectralResult) {
        match &self.even {
            Some(even) if even.eigenvalue > self.odd.eigenvalue => (Parity::Even, even),
            _ => (Parity::Odd, &self.odd),
        }
    }
}

fn solve_blocks(n: usize, lambda: Lambda, opts: &PowerOptions) -> Result<Blocks> {
    assert!(n >= 1, "degree must be at least 1");
    let even = match n / 2 {
        0 => None,
        m => Some(dominant_eig(
            &build_matrix(m, Parity::Even, lambda).entries,
            opts,
        )?),
    };
    let odd = dominant_eig(
        &build_matrix(n.div_ceil(2), Parity::Odd, lambda).entries,
        opts,
    )?;
    Ok(Blocks { even, odd })
}

pub fn sharp_constant(n: usize, lambda: Lambda) -> Result<MarkovReport> {
    sharp_constant_with(n, lambda, &PowerOptions::default())
}

pub fn sharp_constant_with(n: usize, lambda: Lambda, opts: &PowerOptions) -> Result<MarkovReport> {
    let blocks = solve_blocks(n, lambda, opts)?;
    let (branch, top) = blocks.winner();
    let c = 2.0 * top.eigenvalue.sqrt();
    Ok(MarkovReport {
        n,
        lambda,
        sharp_constant: c,
        branch,
        nu_even: blocks.even.as_ref().map(|r| r.eigenvalue),
        nu_odd: blocks.odd.eigenvalue,
        trace_bound: trace_bound(n, lambda),
        theorem_bound: theorem_bound(n, lambda),
        normalized: c / (n * n) as f64,
        oracle: None,
    })
}

/// `(n + 1)(n + 2λ + 1) / (2√(2λ + 1))`
pub fn theorem_bound(n: usize, lambda: Lambda) -> f64 {
    let (n, l) = (n as f64, lambda.value());
    (n + 1.0) * (n + 2.0 * l + 1.0) / (2.0 * (2.0 * l + 1.0).sqrt())
}

/// `2√tr` of the block that carries the constant: `tr(A_m)` for `n = 2m`,
/// `tr(Ã_{m+1})` for `n = 2m + 1`.
pub fn trace_bound(n: usize, lambda: Lambda) -> f64 {
    assert!(n >= 1, "degree must be at least 1");
    let tr = if n.is_multiple_of(2) {
        trace_even_closed(n / 2, lambda)
    } else {
        trace_odd_closed(n / 2 + 1, lambda)
    };
    2.0 * tr.sqrt()
}

/// A maximizer of `‖p'‖ / ‖p‖` over polynomials of degree ≤ n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalPolynomial {
    pub n: usize,
    pub lambda: Lambda,
    pub parity: Parity,
    /// `(degree, coefficient of C_degree^λ)`, degree descending. Scaled so the
    /// coefficient of degree `n` equals the leading Perron-vector component.
    pub coefficients: Vec<(usize, f64)>,
    /// Unit Perron vector of the winning block, in block order (ascending degree).
    pub perron_vector: Vec<f64>,
    pub achieved_ratio: f64,
    pub sharp_constant: f64,
    /// `(t, p(t))`
    pub samples: Vec<(f64, f64)>,
    /// Coefficients refer to the `(2/k) T_k` limit basis (`λ = 0`).
    pub chebyshev_limit_basis: bool,
}

impl ExtremalPolynomial {
    /// Coefficients indexed by degree, `0..=n`.
    pub fn dense_coefficients(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.n + 1];
        for &(d, c) in &self.coefficients {
            dense[d] = c;
        }
        dense
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (values, _) = eval_gegenbauer_all(self.n, self.lambda, t);
        self.coefficients.iter().map(|&(d, c)| c * values[d]).sum()
    }

    /// `max |p(−t) − (−1)ⁿ p(t)| / max |p|` over the sample abscissae.
    pub fn parity_defect(&self) -> f64 {
        let sign = if self.n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut defect: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for &(t, pt) in &self.samples {
            let reflected = self.eval(-t);
            defect = defect.max((reflected - sign * pt).abs());
            scale = scale.max(pt.abs()).max(reflected.abs());
        }
        if scale == 0.0 {
            0.0
        } else {
            defect / scale
        }
    }

    /// Every coefficient strictly positive. A zero coefficient is permitted by
    /// the sign structure of extremal polynomials, so this is reported rather
    /// than enforced.
    pub fn all_coefficients_positive(&self) -> bool {
        self.coefficients.iter().all(|&(_, c)| c > 0.0)
    }
}

pub fn extremal_polynomial(
    n: usize,
    lambda: Lambda,
    sample_points: &[f64],
) -> Result<ExtremalPolynomial> {
    extremal_polynomial_with(n, lambda, sample_points, &PowerOptions::default())
}

pub fn extremal_polynomial_with(
    n: usize,
    lambda: Lambda,
    sample_points: &[f64],
    opts: &PowerOptions,
) -> Result<ExtremalPolynomial> {
    let blocks = solve_blocks(n, lambda, opts)?;
    let (parity, top) = blocks.winner();
    let c = 2.0 * top.eigenvalue.sqrt();

    // p = Σ τ_k p_{deg(k)} = Σ τ_k C_deg / h_deg, rescaled by h_n.
    let mut coefficients: Vec<(usize, f64)> = top
        .eigenvector
        .iter()
        .enumerate()
        .map(|(k, &tau)| {
            let degree = parity.degree(k + 1);
            (degree, tau * h_squared_ratio(n, degree, lambda).sqrt())
        })
        .collect();
    coefficients.reverse();
    if coefficients[0].1 < 0.0 {
        coefficients.iter_mut().for_each(|(_, c)| *c = -*c);
    }
    if coefficients[0].0 != n {
        return Err(Error::Invariant(format!(
            "winning {} branch does not reach degree {n}",
            parity.as_str()
        )));
    }

    let mut poly = ExtremalPolynomial {
        n,
        lambda,
        parity,
        coefficients,
        perron_vector: top.eigenvector.clone(),
        achieved_ratio: 0.0,
        sharp_constant: c,
        samples: Vec::new(),
        chebyshev_limit_basis: lambda.is_chebyshev_limit(),
    };
    poly.achieved_ratio = RayleighSampler::new(n, lambda).ratio(&poly.dense_coefficients());
    poly.samples = sample_points.iter().map(|&t| (t, poly.eval(t))).collect();
    Ok(poly)
}

/// `samples ≥ 2` equally spaced points covering `[-1, 1]`.
pub fn uniform_grid(samples: usize) -> Vec<f64> {
    assert!(samples >= 2, "need at least two samples");
    let step = 2.0 / (samples - 1) as f64;
    (0..samples)
        .map(|i| {
            if i == samples - 1 {
                1.0
            } else {
                -1.0 + step * i as f64
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenOrdering {
    pub m: usize,
    pub nu_tilde_m: f64,
    pub nu_m: f64,
    pub nu_tilde_next: f64,
    pub ok: bool,
}

/// `ν̃_m < ν_m < ν̃_{m+1}`
pub fn eigen_ordering_check(m: usize, lambda: Lambda) -> Result<EigenOrdering> {
    assert!(m >= 1);
    let opts = PowerOptions::default();
    let top = |m, parity| -> Result<f64> {
        Ok(dominant_eig(&build_matrix(m, parity, lambda).entries, &opts)?.eigenvalue)
    };
    let nu_tilde_m = top(m, Parity::Odd)?;
    let nu_m = top(m, Parity::Even)?;
    let nu_tilde_next = top(m + 1, Parity::Odd)?;
    Ok(EigenOrdering {
        m,
        nu_tilde_m,
        nu_m,
        nu_tilde_next,
        ok: nu_tilde_m < nu_m && nu_m < nu_tilde_next,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(v: f64) -> Lambda {
        Lambda::new(v).unwrap()
    }

    const GRID: [f64; 8] = [-0.49, -0.25, 0.0, 0.25, 0.5, 1.0, 2.5, 10.0];

    #[test]
    fn degree_one_closed_form() {
        for &l in &GRID {
            let r = sharp_constant(1, lam(l)).unwrap();
            let expected = (2.0 * l + 2.0).sqrt();
            assert!((r.sharp_constant - expected).abs() <= 1e-12 * expected);
            assert_eq!(r.nu_even, None);
            assert_eq!(r.branch, Parity::Odd);
        }
    }

    #[test]
    fn legendre_spot_values() {
        let r = sharp_constant(2, lam(0.5)).unwrap();
        assert!((r.sharp_constant - 15f64.sqrt()).abs() < 1e-13);
        assert!((r.sharp_constant - 3.8729833).abs() < 1e-7);
        assert_eq!(r.branch, Parity::Even);

        let r = sharp_constant(3, lam(0.5)).unwrap();
        let expected = ((45.0 + 1605f64.sqrt()) / 2.0).sqrt();
        assert!((r.sharp_constant - expected).abs() < 1e-12 * expected);
        assert_eq!(r.branch, Parity::Odd);
    }

    #[test]
    fn bound_examples() {
        assert!((theorem_bound(1, lam(0.5)) - 3.0 / 2f64.sqrt()).abs() < 1e-14);
        assert!((theorem_bound(10, lam(0.0)) - 60.5).abs() < 1e-12);
        assert!((theorem_bound(3, lam(0.5)) - 20.0 / (2.0 * 2f64.sqrt())).abs() < 1e-14);

        assert!((trace_bound(2, lam(0.5)) - 2.0 * 3.75f64.sqrt()).abs() < 1e-14);
        assert!((trace_bound(3, lam(0.5)) - 2.0 * 11.25f64.sqrt()).abs() < 1e-14);
        assert!((trace_bound(4, lam(0.5)) - 2.0 * 26.25f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn sandwich_and_monotonicity() {
        for &l in &GRID {
            let mut prev = 0.0;
            for n in 1..=60 {
                let r = sharp_constant(n, lam(l)).unwrap();
                assert!(r.sharp_constant <= r.trace_bound * (1.0 + 1e-14));
                assert!(r.trace_bound < r.theorem_bound);
                assert!(r.sharp_constant > prev, "λ={l} n={n}");
                assert_eq!(r.branch, Parity::of(n));
                prev = r.sharp_constant;
            }
        }
    }

    #[test]
    fn extremal_examples() {
        let grid = uniform_grid(21);
        let p = extremal_polynomial(1, lam(1.0), &grid).unwrap();
        assert_eq!(p.coefficients.len(), 1);
        assert_eq!(p.coefficients[0].0, 1);
        assert!((p.coefficients[0].1 - 1.0).abs() < 1e-15);
        assert_eq!(p.parity, Parity::Odd);

        let p = extremal_polynomial(2, lam(0.5), &grid).unwrap();
        assert_eq!(p.coefficients.len(), 1);
        assert_eq!(p.coefficients[0].0, 2);
        assert!((p.achieved_ratio - 15f64.sqrt()).abs() < 1e-12);

        let p = extremal_polynomial(5, lam(0.5), &grid).unwrap();
        let degrees: Vec<_> = p.coefficients.iter().map(|c| c.0).collect();
        assert_eq!(degrees, vec![5, 3, 1]);
        assert!(p.all_coefficients_positive());
        assert!(p.parity_defect() < 1e-12);
    }

    #[test]
    fn extremal_attains_constant_on_grid() {
        let grid = uniform_grid(41);
        for &l in &GRID {
            for n in [1, 2, 3, 6, 11, 20] {
                let p = extremal_polynomial(n, lam(l), &grid).unwrap();
                let rel = (p.achieved_ratio - p.sharp_constant).abs() / p.sharp_constant;
                assert!(rel <= 1e-8, "λ={l} n={n}: {rel}");
                assert!(p.parity_defect() <= 1e-10);
                assert!(p.perron_vector.iter().all(|&x| x > 0.0));
                assert_eq!(p.parity, Parity::of(n));
            }
        }
    }

    #[test]
    fn eigen_ordering_examples() {
        let o = eigen_ordering_check(1, lam(0.5)).unwrap();
        assert!((o.nu_tilde_m - 0.75).abs() < 1e-14);
        assert!((o.nu_m - 3.75).abs() < 1e-14);
        assert!((o.nu_tilde_next - (11.25 + 100.3125f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(o.ok);

        let o = eigen_ordering_check(1, lam(0.0)).unwrap();
        assert!((o.nu_tilde_m - 0.5).abs() < 1e-14);
        assert!((o.nu_m - 4.0).abs() < 1e-14);
        assert!(o.ok);
    }
}
