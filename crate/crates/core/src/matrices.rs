//! The parity blocks of the derivative Gram matrix.
//!
//! With `p = Σ t_j p_j` in the orthonormal basis, `‖p'‖²` splits into an even
//! part (coefficients of `p_2, p_4, …`) and an odd part (`p_1, p_3, …`):
//!
//! ```text
//! ‖p'‖² = 4 (|C_m t'|² + |C̃_m' t''|²)
//! ```
//!
//! with upper-triangular factors whose `(k, i)` entry (`i ≥ k`, 1-based) is
//!
//! ```text
//! even:  α_k β_i,   α_k = (2k+λ-1) h_{2k-1},   β_k = 1 / h_{2k}
//! odd:   α̃_k β̃_i,   α̃_k = (2k+λ-2) h_{2k-2},   β̃_k = 1 / h_{2k-1}
//! ```
//!
//! The Gram matrices `A_m = C_mᵀ C_m` and `Ã_m = C̃_mᵀ C̃_m` have entries
//! `a_{k,i} = (β_i / β_k) D_k` for `i ≥ k`, where `D_k = β_k² Σ_{j≤k} α_j²` has
//! the closed forms
//!
//! ```text
//! D_k = 2k (k+λ)(2k+λ) / (2λ+1)
//! D̃_k = (2k-1)(2k+λ-1)(2k+2λ-1) / (2(2λ+1))
//! ```
//!
//! Every entry is built from these closed forms and from `β` ratios written as
//! finite products, so no Gamma function is evaluated.

use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::gegenbauer::Lambda;
use crate::special::gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Polynomial degree carried by the 1-based block index `k`.
    pub fn degree(self, k: usize) -> usize {
        match self {
            Parity::Even => 2 * k,
            Parity::Odd => 2 * k - 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

// α_k² / Γ(2λ+1)
fn alpha_sq_scaled(k: usize, l: f64) -> f64 {
    let kf = k as f64;
    let mut v = (2.0 * kf + l - 1.0) / (2.0 * kf - 1.0);
    for r in 1..=2 * k - 2 {
        let r = r as f64;
        v *= (r + 2.0 * l) / r;
    }
    v
}

// β_k² · Γ(2λ+1)
fn beta_sq_scaled(k: usize, l: f64) -> f64 {
    let kf = k as f64;
    let mut v = (2.0 * kf + l) * 2.0 * kf;
    for r in 1..2 * k {
        let r = r as f64;
        v *= r / (r + 2.0 * l);
    }
    v
}

// α̃_k² / Γ(2λ+1)
fn alpha_tilde_sq_scaled(k: usize, l: f64) -> f64 {
    if k == 1 {
        return 0.5;
    }
    let kf = k as f64;
    let mut v = (2.0 * kf + l - 2.0) / (2.0 * kf - 2.0);
    for r in 1..=2 * k - 3 {
        let r = r as f64;
        v *= (r + 2.0 * l) / r;
    }
    v
}

// β̃_k² · Γ(2λ+1)
fn beta_tilde_sq_scaled(k: usize, l: f64) -> f64 {
    let kf = k as f64;
    let mut v = (2.0 * kf + l - 1.0) * (2.0 * kf - 1.0);
    for r in 1..=2 * k - 2 {
        let r = r as f64;
        v *= r / (r + 2.0 * l);
    }
    v
}

/// `α_k², β_k², α̃_k², β̃_k²` for one index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientSet {
    pub k: usize,
    pub alpha_sq: f64,
    pub beta_sq: f64,
    pub alpha_tilde_sq: f64,
    pub beta_tilde_sq: f64,
}

/// The individual sequence values. These carry the scale `Γ(2λ+1)` of the
/// reduced normalization (the only Gamma evaluation in this module); all
/// products `α_k² β_i²` that enter the matrices are scale-free.
pub fn seq_coefficients(k: usize, lambda: Lambda) -> CoefficientSet {
    assert!(k >= 1, "coefficient index starts at 1");
    let l = lambda.value();
    let g = gamma(2.0 * l + 1.0);
    CoefficientSet {
        k,
        alpha_sq: alpha_sq_scaled(k, l) * g,
        beta_sq: beta_sq_scaled(k, l) / g,
        alpha_tilde_sq: alpha_tilde_sq_scaled(k, l) * g,
        beta_tilde_sq: beta_tilde_sq_scaled(k, l) / g,
    }
}

/// Prefix sums `S_k = Σ_{j≤k} α_j²` and diagonal factors `D_k = β_k² S_k`,
/// each by direct summation and by closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrefixDiag {
    pub k: usize,
    pub prefix: f64,
    pub prefix_closed: f64,
    pub diag: f64,
    pub diag_closed: f64,
    pub prefix_tilde: f64,
    pub prefix_tilde_closed: f64,
    pub diag_tilde: f64,
    pub diag_tilde_closed: f64,
}

impl PrefixDiag {
    /// Largest relative disagreement between a summed value and its closed form.
    pub fn max_rel_error(&self) -> f64 {
        [
            (self.prefix, self.prefix_closed),
            (self.diag, self.diag_closed),
            (self.prefix_tilde, self.prefix_tilde_closed),
            (self.diag_tilde, self.diag_tilde_closed),
        ]
        .iter()
        .map(|(a, b)| ((a - b) / b).abs())
        .fold(0.0, f64::max)
    }
}

pub fn diag_closed(k: usize, lambda: Lambda) -> f64 {
    let (k, l) = (k as f64, lambda.value());
    2.0 * k * (k + l) * (2.0 * k + l) / (2.0 * l + 1.0)
}

pub fn diag_tilde_closed(k: usize, lambda: Lambda) -> f64 {
    let (k, l) = (k as f64, lambda.value());
    (2.0 * k - 1.0) * (2.0 * k + l - 1.0) * (2.0 * k + 2.0 * l - 1.0) / (2.0 * (2.0 * l + 1.0))
}

// Γ(2k+2λ+1) / (2(2λ+1) Γ(2k)) / Γ(2λ+1)
fn prefix_closed_scaled(k: usize, l: f64) -> f64 {
    let mut v = (2.0 * k as f64 + 2.0 * l) / (2.0 * (2.0 * l + 1.0));
    for r in 1..2 * k {
        let r = r as f64;
        v *= (r + 2.0 * l) / r;
    }
    v
}

// Γ(2k+2λ) / (2(2λ+1) Γ(2k-1)) / Γ(2λ+1)
fn prefix_tilde_closed_scaled(k: usize, l: f64) -> f64 {
    let mut v = (2.0 * k as f64 - 1.0 + 2.0 * l) / (2.0 * (2.0 * l + 1.0));
    for r in 1..=2 * k - 2 {
        let r = r as f64;
        v *= (r + 2.0 * l) / r;
    }
    v
}

/// [`PrefixDiag`] for every `k = 1..=k_max`, sharing the running sums.
pub fn prefix_and_diag_table(k_max: usize, lambda: Lambda) -> Vec<PrefixDiag> {
    let l = lambda.value();
    let g = gamma(2.0 * l + 1.0);
    let mut sum = 0.0;
    let mut sum_tilde = 0.0;
    (1..=k_max)
        .map(|k| {
            sum += alpha_sq_scaled(k, l);
            sum_tilde += alpha_tilde_sq_scaled(k, l);
            PrefixDiag {
                k,
                prefix: sum * g,
                prefix_closed: prefix_closed_scaled(k, l) * g,
                diag: beta_sq_scaled(k, l) * sum,
                diag_closed: diag_closed(k, lambda),
                prefix_tilde: sum_tilde * g,
                prefix_tilde_closed: prefix_tilde_closed_scaled(k, l) * g,
                diag_tilde: beta_tilde_sq_scaled(k, l) * sum_tilde,
                diag_tilde_closed: diag_tilde_closed(k, lambda),
            }
        })
        .collect()
}

pub fn prefix_and_diag(k: usize, lambda: Lambda) -> PrefixDiag {
    assert!(k >= 1, "prefix index starts at 1");
    *prefix_and_diag_table(k, lambda).last().expect("k >= 1")
}

/// Upper-triangular factor `C_m` (even) or `C̃_m` (odd).
#[derive(Debug, Clone, PartialEq)]
pub struct TriFactor {
    pub m: usize,
    pub parity: Parity,
    pub lambda: Lambda,
    pub entries: DenseMatrix,
}

pub fn build_factor(m: usize, parity: Parity, lambda: Lambda) -> TriFactor {
    assert!(m >= 1, "empty factor");
    let l = lambda.value();
    type Sequence = fn(usize, f64) -> f64;
    let (alpha, beta): (Sequence, Sequence) = match parity {
        Parity::Even => (alpha_sq_scaled, beta_sq_scaled),
        Parity::Odd => (alpha_tilde_sq_scaled, beta_tilde_sq_scaled),
    };
    let mut entries = DenseMatrix::zeros(m);
    for k in 0..m {
        let ak = alpha(k + 1, l);
        for i in k..m {
            entries[(k, i)] = (ak * beta(i + 1, l)).sqrt();
        }
    }
    TriFactor {
        m,
        parity,
        lambda,
        entries,
    }
}

impl TriFactor {
    /// `CᵀC`, computed by direct multiplication.
    pub fn gram(&self) -> DenseMatrix {
        self.entries.transpose().matmul(&self.entries)
    }
}

/// Gram matrix `A_m` (even) or `Ã_m` (odd).
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    pub m: usize,
    pub parity: Parity,
    pub lambda: Lambda,
    pub entries: DenseMatrix,
}

/// `β_i² / β_k²` (even) or `β̃_i² / β̃_k²` (odd) for `i ≥ k`, as a product of
/// `2(i-k)` rational factors plus one linear ratio.
pub fn beta_sq_ratio(i: usize, k: usize, parity: Parity, lambda: Lambda) -> f64 {
    assert!(i >= k && k >= 1);
    let l = lambda.value();
    let (lin_i, lin_k, start) = match parity {
        Parity::Even => (2 * i, 2 * k, 2 * k + 1),
        Parity::Odd => (2 * i - 1, 2 * k - 1, 2 * k),
    };
    let mut v = (lin_i as f64 + l) / (lin_k as f64 + l);
    for r in start..start + 2 * (i - k) {
        let r = r as f64;
        v *= r / (r + 2.0 * l - 1.0);
    }
    v
}

pub fn build_matrix(m: usize, parity: Parity, lambda: Lambda) -> SpdMatrix {
    assert!(m >= 1, "empty matrix");
    let l = lambda.value();
    let mut entries = DenseMatrix::zeros(m);
    for k in 1..=m {
        let diag = match parity {
            Parity::Even => diag_closed(k, lambda),
            Parity::Odd => diag_tilde_closed(k, lambda),
        };
        entries[(k - 1, k - 1)] = diag;
        // Running product of β ratios along the row.
        let mut ratio = 1.0;
        for i in k + 1..=m {
            let (lin_prev, lin_next, r0) = match parity {
                Parity::Even => (2 * i - 2, 2 * i, 2 * i - 1),
                Parity::Odd => (2 * i - 3, 2 * i - 1, 2 * i - 2),
            };
            ratio *= (lin_next as f64 + l) / (lin_prev as f64 + l);
            for r in [r0, r0 + 1] {
                let r = r as f64;
                ratio *= r / (r + 2.0 * l - 1.0);
            }
            let v = diag * ratio.sqrt();
            entries[(k - 1, i - 1)] = v;
            entries[(i - 1, k - 1)] = v;
        }
    }
    SpdMatrix {
        m,
        parity,
        lambda,
        entries,
    }
}

impl SpdMatrix {
    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    /// Copy with entry `(0, 0)` scaled by `1 + relative`. Negative-control hook
    /// for the verification suite.
    pub fn perturbed(&self, relative: f64) -> Self {
        let mut out = self.clone();
        out.entries[(0, 0)] *= 1.0 + relative;
        out
    }
}

pub fn trace_even_closed(m: usize, lambda: Lambda) -> f64 {
    let (m, l) = (m as f64, lambda.value());
    m * (m + 1.0) * (m + l) * (m + l + 1.0) / (2.0 * l + 1.0)
}

pub fn trace_odd_closed(m: usize, lambda: Lambda) -> f64 {
    let (m, l) = (m as f64, lambda.value());
    m * (m + l) * (m * m + l * m - 0.5) / (2.0 * l + 1.0)
}

/// `tr(A_m)` and `tr(Ã_m)` by the defining sums `Σ_k β_k² Σ_{j≤k} α_j²` and by
/// closed form, plus `tr(Ã_{m+1})` for the ordering check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceReport {
    pub m: usize,
    pub tr_a_summed: f64,
    pub tr_a_closed: f64,
    pub tr_at_summed: f64,
    pub tr_at_closed: f64,
    pub tr_at_next_closed: f64,
}

impl TraceReport {
    pub fn max_rel_error(&self) -> f64 {
        let a = ((self.tr_a_summed - self.tr_a_closed) / self.tr_a_closed).abs();
        let b = ((self.tr_at_summed - self.tr_at_closed) / self.tr_at_closed).abs();
        a.max(b)
    }

    /// `tr(Ã_m) < tr(A_m) < tr(Ã_{m+1})`
    pub fn is_ordered(&self) -> bool {
        self.tr_at_closed < self.tr_a_closed && self.tr_a_closed < self.tr_at_next_closed
    }
}

pub fn traces(m: usize, lambda: Lambda) -> TraceReport {
    assert!(m >= 1, "empty matrix");
    let l = lambda.value();
    let mut prefix = 0.0;
    let mut prefix_tilde = 0.0;
    let mut tr_a = 0.0;
    let mut tr_at = 0.0;
    for k in 1..=m {
        prefix += alpha_sq_scaled(k, l);
        prefix_tilde += alpha_tilde_sq_scaled(k, l);
        tr_a += beta_sq_scaled(k, l) * prefix;
        tr_at += beta_tilde_sq_scaled(k, l) * prefix_tilde;
    }
    TraceReport {
        m,
        tr_a_summed: tr_a,
        tr_a_closed: trace_even_closed(m, lambda),
        tr_at_summed: tr_at,
        tr_at_closed: trace_odd_closed(m, lambda),
        tr_at_next_closed: trace_odd_closed(m + 1, lambda),
    }
}

/// Smallest margins in `ã_{k,i} < a_{k,i} < ã_{k+1,i+1}` over `1 ≤ k, i ≤ m`,
/// as `(min a/ã − 1, min ã_next/a − 1)`. Both are positive when the
/// domination holds.
pub fn entrywise_domination(m: usize, lambda: Lambda) -> (f64, f64) {
    let a = build_matrix(m, Parity::Even, lambda).entries;
    let at = build_matrix(m, Parity::Odd, lambda).entries;
    let at_next = build_matrix(m + 1, Parity::Odd, lambda).entries;
    let mut lower = f64::INFINITY;
    let mut upper = f64::INFINITY;
    for k in 0..m {
        for i in 0..m {
            lower = lower.min(a[(k, i)] / at[(k, i)] - 1.0);
            upper = upper.min(at_next[(k + 1, i + 1)] / a[(k, i)] - 1.0);
        }
    }
    (lower, upper)
}
