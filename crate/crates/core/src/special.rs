//! Log-Gamma by upward recurrence into the Stirling regime.
//!
//! Used only for λ-dependent scale factors (total mass of the weight and the
//! `Γ(2λ+1)` anchor of the individual coefficient sequences). Everything the
//! sharp constant depends on is Gamma-free.

use std::f64::consts::PI;

const STIRLING_SHIFT: f64 = 20.0;

// Bernoulli-number coefficients B_{2k} / (2k (2k-1)) for k = 1..7.
const STIRLING_COEFFS: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

fn stirling(z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for &c in STIRLING_COEFFS.iter().rev() {
        series = series * inv2 + c;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series * inv
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument, got {x}");
    let mut z = x;
    let mut prod = 1.0;
    while z < STIRLING_SHIFT {
        prod *= z;
        z += 1.0;
    }
    stirling(z) - prod.ln()
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        let mut fact = 1.0;
        for k in 1..25 {
            let g = gamma(k as f64);
            assert!(
                (g - fact).abs() <= 1e-13 * fact,
                "Γ({k}) = {g}, expected {fact}"
            );
            fact *= k as f64;
        }
    }

    #[test]
    fn half_integers() {
        let sqrt_pi = PI.sqrt();
        assert!((gamma(0.5) - sqrt_pi).abs() < 1e-14);
        assert!((gamma(2.5) - 0.75 * sqrt_pi).abs() < 1e-14);
    }

    #[test]
    fn recurrence_holds_near_zero() {
        for &x in &[0.01, 0.02, 0.3, 0.77] {
            let lhs = ln_gamma(x + 1.0);
            let rhs = ln_gamma(x) + x.ln();
            assert!((lhs - rhs).abs() < 1e-13, "x = {x}");
        }
    }
}
