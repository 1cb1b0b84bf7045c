//! Independent routes to the sharp constant.
//!
//! * [`oracle_constant_coefficient`] assembles the full derivative matrix of
//!   the orthonormal basis from the expansion of `p_j'` and never splits by
//!   parity.
//! * [`oracle_constant_quadrature`] works with the raw polynomials
//!   `C_1^λ, …, C_n^λ`, computes both Gram matrices by Gauss–Gegenbauer
//!   quadrature and solves the generalized eigenproblem. It shares no
//!   normalization code with the main path.

use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::gegenbauer::{derivative_expansion, eval_gegenbauer_all, Lambda};
use crate::special::ln_gamma;
use crate::spectral::{dominant_eig, generalized_dominant, jacobi_eigen, PowerOptions};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule {
    pub lambda: Lambda,
    /// Ascending.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Polynomials up to this degree are integrated exactly against the weight.
    pub exactness_degree: usize,
}

impl QuadratureRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// `∫ (1 - t²)^(λ - 1/2) dt = √π Γ(λ + 1/2) / Γ(λ + 1)`.
pub fn total_mass(lambda: Lambda) -> f64 {
    let l = lambda.value();
    std::f64::consts::PI.sqrt() * (ln_gamma(l + 0.5) - ln_gamma(l + 1.0)).exp()
}

// Squared off-diagonal of the Jacobi matrix of the monic Gegenbauer
// recurrence p_{k+1} = t p_k − b_k p_{k-1}.
fn recurrence_b(k: usize, l: f64) -> f64 {
    if k == 1 {
        return 1.0 / (2.0 * (1.0 + l));
    }
    let k = k as f64;
    k * (k + 2.0 * l - 1.0) / (4.0 * (k + l) * (k + l - 1.0))
}

/// Golub–Welsch rule with `q` nodes for the Gegenbauer weight.
pub fn gauss_gegenbauer(q: usize, lambda: Lambda) -> QuadratureRule {
    assert!(q >= 1, "quadrature needs at least one node");
    let l = lambda.value();
    let jacobi = DenseMatrix::symmetric_from_upper(q, |i, j| {
        if j == i + 1 {
            recurrence_b(j, l).sqrt()
        } else {
            0.0
        }
    });
    let eig = jacobi_eigen(&jacobi, 1e-16);
    let mass = total_mass(lambda);
    let mut nodes = eig.values;
    let mut weights: Vec<f64> = eig.vectors.iter().map(|v| mass * v[0] * v[0]).collect();

    // The rule is symmetric; average mirrored pairs.
    for i in 0..q / 2 {
        let j = q - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if q % 2 == 1 {
        nodes[q / 2] = 0.0;
    }

    QuadratureRule {
        lambda,
        nodes,
        weights,
        exactness_degree: 2 * q - 1,
    }
}

/// `M = DᵀD` where column `j` of `D` holds the orthonormal-basis coefficients
/// of `p_j'`, `j = 1..=n`. `M[j-1][k-1] = ⟨p_j', p_k'⟩`.
pub fn derivative_gram(n: usize, lambda: Lambda) -> DenseMatrix {
    assert!(n >= 1);
    // d[target][j - 1]
    let mut d = DenseMatrix::zeros(n);
    for j in 1..=n {
        for term in derivative_expansion(j, lambda).terms {
            d[(term.target, j - 1)] = term.coefficient;
        }
    }
    d.transpose().matmul(&d)
}

/// Largest `|M_jk|` over index pairs of different parity, relative to `max |M|`.
pub fn cross_parity_defect(m: &DenseMatrix) -> f64 {
    let n = m.dim();
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for k in 0..n {
            if (j + k) % 2 == 1 {
                worst = worst.max(m[(j, k)].abs());
            }
        }
    }
    worst / m.max_abs()
}

/// `c_{n,λ} = √(largest eigenvalue of M)` without any parity split.
pub fn oracle_constant_coefficient(n: usize, lambda: Lambda) -> Result<f64> {
    let m = derivative_gram(n, lambda);
    let defect = cross_parity_defect(&m);
    if defect > 1e-12 {
        return Err(Error::Invariant(format!(
            "derivative Gram matrix couples parities (relative defect {defect:e})"
        )));
    }
    let r = dominant_eig(&m, &PowerOptions::default())?;
    Ok(r.eigenvalue.sqrt())
}

/// Gram matrices of `C_1^λ, …, C_n^λ` under a `q`-node rule:
/// `G_jk = ∫ w C_j C_k`, `H_jk = ∫ w C_j' C_k'`.
pub fn raw_gram_matrices(n: usize, lambda: Lambda, q: usize) -> (DenseMatrix, DenseMatrix) {
    let rule = gauss_gegenbauer(q, lambda);
    let mut g = DenseMatrix::zeros(n);
    let mut h = DenseMatrix::zeros(n);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let (vals, ders) = eval_gegenbauer_all(n, lambda, x);
        for j in 0..n {
            for k in j..n {
                g[(j, k)] += w * vals[j + 1] * vals[k + 1];
                h[(j, k)] += w * ders[j + 1] * ders[k + 1];
            }
        }
    }
    for j in 0..n {
        for k in 0..j {
            g[(j, k)] = g[(k, j)];
            h[(j, k)] = h[(k, j)];
        }
    }
    (g, h)
}

/// Number of nodes used by the quadrature oracle for degree `n`.
pub fn oracle_nodes(n: usize) -> usize {
    (2 * n).max(n + 1)
}

/// `c_{n,λ} = √(max xᵀHx / xᵀGx)` over the raw Gegenbauer basis.
pub fn oracle_constant_quadrature(n: usize, lambda: Lambda) -> Result<f64> {
    assert!(n >= 1);
    let (g, h) = raw_gram_matrices(n, lambda, oracle_nodes(n));
    Ok(generalized_dominant(&h, &g)?.eigenvalue.sqrt())
}

/// Evaluates `‖p'‖ / ‖p‖` for polynomials `p = Σ_k c_k C_k^λ` of degree ≤ n,
/// with basis values cached at the quadrature nodes.
#[derive(Debug, Clone)]
pub struct RayleighSampler {
    n: usize,
    weights: Vec<f64>,
    values: Vec<Vec<f64>>,
    derivs: Vec<Vec<f64>>,
}

impl RayleighSampler {
    pub fn new(n: usize, lambda: Lambda) -> Self {
        let rule = gauss_gegenbauer(oracle_nodes(n.max(1)), lambda);
        let (values, derivs) = rule
            .nodes
            .iter()
            .map(|&x| eval_gegenbauer_all(n, lambda, x))
            .unzip();
        Self {
            n,
            weights: rule.weights,
            values,
            derivs,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `coefficients[k]` multiplies `C_k^λ`; at most `n + 1` entries.
    pub fn ratio(&self, coefficients: &[f64]) -> f64 {
        assert!(
            coefficients.len() <= self.n + 1,
            "polynomial degree exceeds the sampler's degree"
        );
        let mut num = 0.0;
        let mut den = 0.0;
        for ((w, vals), ders) in self.weights.iter().zip(&self.values).zip(&self.derivs) {
            let mut p = 0.0;
            let mut dp = 0.0;
            for (k, &c) in coefficients.iter().enumerate() {
                p += c * vals[k];
                dp += c * ders[k];
            }
            num += w * dp * dp;
            den += w * p * p;
        }
        assert!(den > 0.0, "zero polynomial");
        (num / den).sqrt()
    }
}

pub fn rayleigh_sample(n: usize, lambda: Lambda, coefficients: &[f64]) -> f64 {
    RayleighSampler::new(n, lambda).ratio(coefficients)
}
