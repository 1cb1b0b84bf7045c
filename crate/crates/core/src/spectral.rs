//! Eigensolvers for small dense symmetric matrices.
//!
//! [`dominant_eig`] is the production path: power iteration started from the
//! normalized all-ones vector, which has a positive component along the
//! Perron vector of any matrix with positive entries. [`jacobi_eigen`] is the
//! cyclic Jacobi method, used for validation, for Gauss quadrature nodes and
//! as the fallback when power iteration stalls.

use serde::Serialize;

use crate::dense::{dot, norm, DenseMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerOptions {
    /// Relative residual `‖Av − νv‖ / ν` at which iteration stops.
    pub tol: f64,
    pub max_iter: usize,
    /// Iterations without a new best residual before falling back to Jacobi.
    pub stall_window: usize,
}

impl Default for PowerOptions {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_iter: 100_000,
            stall_window: 500,
        }
    }
}

impl PowerOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverPath {
    PowerIteration,
    JacobiFallback,
    Jacobi,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub eigenvalue: f64,
    /// Unit Euclidean norm, last component non-negative.
    pub eigenvector: Vec<f64>,
    pub iterations: usize,
    /// `‖Av − νv‖₂`
    pub residual: f64,
    pub path: SolverPath,
}

impl SpectralResult {
    pub fn relative_residual(&self) -> f64 {
        self.residual / self.eigenvalue.abs()
    }
}

fn normalize_sign(v: &mut [f64]) {
    if v.last().is_some_and(|&x| x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn residual(a: &DenseMatrix, nu: f64, v: &[f64]) -> f64 {
    let av = a.mul_vec(v);
    av.iter()
        .zip(v)
        .map(|(w, x)| (w - nu * x).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Dominant eigenpair of a symmetric matrix by power iteration.
pub fn dominant_eig(a: &DenseMatrix, opts: &PowerOptions) -> Result<SpectralResult> {
    let n = a.dim();
    assert!(n > 0, "empty matrix");
    assert!(opts.tol > 0.0, "tolerance must be positive");

    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut best = f64::INFINITY;
    let mut since_best = 0;
    let mut nu = 0.0;
    let mut rel = f64::INFINITY;

    for iter in 1..=opts.max_iter {
        let w = a.mul_vec(&v);
        nu = dot(&v, &w);
        let res = w
            .iter()
            .zip(&v)
            .map(|(wi, vi)| (wi - nu * vi).powi(2))
            .sum::<f64>()
            .sqrt();
        rel = res / nu.abs();
        if rel <= opts.tol {
            normalize_sign(&mut v);
            return Ok(SpectralResult {
                eigenvalue: nu,
                eigenvector: v,
                iterations: iter,
                residual: res,
                path: SolverPath::PowerIteration,
            });
        }
        if rel < best {
            best = rel;
            since_best = 0;
        } else {
            since_best += 1;
            if since_best >= opts.stall_window {
                return Ok(jacobi_dominant(a, iter));
            }
        }
        let wn = norm(&w);
        if wn == 0.0 {
            // v lies in the null space; nothing dominant to find from here.
            return Ok(jacobi_dominant(a, iter));
        }
        v = w.into_iter().map(|x| x / wn).collect();
    }

    normalize_sign(&mut v);
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        eigenvalue: nu,
        relative_residual: rel,
        eigenvector: v,
    })
}

fn jacobi_dominant(a: &DenseMatrix, iterations: usize) -> SpectralResult {
    let eig = jacobi_eigen(a, 1e-15);
    let last = eig.values.len() - 1;
    let nu = eig.values[last];
    let mut v = eig.vectors[last].clone();
    normalize_sign(&mut v);
    SpectralResult {
        eigenvalue: nu,
        residual: residual(a, nu, &v),
        eigenvector: v,
        iterations,
        path: SolverPath::JacobiFallback,
    }
}

/// Full eigen-decomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct JacobiEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[i]` is the unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
/// `tol` times the Frobenius norm of the diagonal.
pub fn jacobi_eigen(matrix: &DenseMatrix, tol: f64) -> JacobiEigen {
    let n = matrix.dim();
    let mut a = matrix.clone();
    let mut v = DenseMatrix::identity(n);
    let mut sweeps = 0;

    while sweeps < MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].powi(2))
            .sum::<f64>()
            .sqrt();
        let diag: f64 = (0..n).map(|i| a[(i, i)].powi(2)).sum::<f64>().sqrt();
        if off <= tol * diag || off == 0.0 {
            break;
        }
        sweeps += 1;

        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                // Negligible against both diagonal entries: zero it outright.
                if sweeps > 4 && apq.abs() * 1e18 < app.abs() && apq.abs() * 1e18 < aqq.abs() {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let arp = a[(r, p)];
                        let arq = a[(r, q)];
                        let new_rp = c * arp - s * arq;
                        let new_rq = s * arp + c * arq;
                        a[(r, p)] = new_rp;
                        a[(p, r)] = new_rp;
                        a[(r, q)] = new_rq;
                        a[(q, r)] = new_rq;
                    }
                    let vrp = v[(r, p)];
                    let vrq = v[(r, q)];
                    v[(r, p)] = c * vrp - s * vrq;
                    v[(r, q)] = s * vrp + c * vrq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    JacobiEigen {
        values: order.iter().map(|&i| a[(i, i)]).collect(),
        vectors: order
            .iter()
            .map(|&i| (0..n).map(|r| v[(r, i)]).collect())
            .collect(),
        sweeps,
    }
}

/// All eigenvalues, ascending.
pub fn full_spectrum_jacobi(matrix: &DenseMatrix, tol: f64) -> Vec<f64> {
    jacobi_eigen(matrix, tol).values
}

/// Lower-triangular `L` with `G = L Lᵀ`.
pub fn cholesky(g: &DenseMatrix) -> Result<DenseMatrix> {
    let n = g.dim();
    let mut l = DenseMatrix::zeros(n);
    for j in 0..n {
        let mut d = g[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d.is_nan() || d <= 0.0 {
            return Err(Error::NotPositiveDefinite { row: j, pivot: d });
        }
        let ljj = d.sqrt();
        l[(j, j)] = ljj;
        for i in j + 1..n {
            let mut s = g[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(l)
}

// Solves L x = b for lower-triangular L.
fn forward_solve(l: &DenseMatrix, b: &[f64]) -> Vec<f64> {
    let n = l.dim();
    let mut x = vec![0.0; n];
    for i in 0..n {
        let s: f64 = (0..i).map(|k| l[(i, k)] * x[k]).sum();
        x[i] = (b[i] - s) / l[(i, i)];
    }
    x
}

// Solves Lᵀ x = b for lower-triangular L.
fn backward_solve_transposed(l: &DenseMatrix, b: &[f64]) -> Vec<f64> {
    let n = l.dim();
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| l[(k, i)] * x[k]).sum();
        x[i] = (b[i] - s) / l[(i, i)];
    }
    x
}

/// Largest `θ = max xᵀHx / xᵀGx` for symmetric `H` and positive definite
/// `G`, via `G = LLᵀ` and a Jacobi decomposition of `L⁻¹ H L⁻ᵀ`.
///
/// The returned eigenvector is the maximizing `x`, scaled to unit Euclidean
/// norm; `residual` is `‖Hx − θGx‖`.
pub fn generalized_dominant(h: &DenseMatrix, g: &DenseMatrix) -> Result<SpectralResult> {
    let n = g.dim();
    assert_eq!(h.dim(), n, "H and G must have the same size");
    let l = cholesky(g)?;

    // X = L⁻¹ H column by column, then B = L⁻¹ Xᵀ.
    let mut x = DenseMatrix::zeros(n);
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| h[(i, j)]).collect();
        let solved = forward_solve(&l, &col);
        for i in 0..n {
            x[(i, j)] = solved[i];
        }
    }
    let mut b = DenseMatrix::zeros(n);
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| x[(j, i)]).collect();
        let solved = forward_solve(&l, &col);
        for i in 0..n {
            b[(i, j)] = solved[i];
        }
    }
    let b = DenseMatrix::symmetric_from_upper(n, |i, j| 0.5 * (b[(i, j)] + b[(j, i)]));

    let eig = jacobi_eigen(&b, 1e-15);
    let last = n - 1;
    let theta = eig.values[last];
    let mut xvec = backward_solve_transposed(&l, &eig.vectors[last]);
    let xn = norm(&xvec);
    xvec.iter_mut().for_each(|v| *v /= xn);
    normalize_sign(&mut xvec);

    let hx = h.mul_vec(&xvec);
    let gx = g.mul_vec(&xvec);
    let res = hx
        .iter()
        .zip(&gx)
        .map(|(a, b)| (a - theta * b).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(SpectralResult {
        eigenvalue: theta,
        eigenvector: xvec,
        iterations: eig.sweeps,
        residual: res,
        path: SolverPath::Jacobi,
    })
}
