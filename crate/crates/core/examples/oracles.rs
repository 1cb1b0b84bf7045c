//! Three independent routes to the same constant: the parity-split blocks,
//! the full coefficient-space matrix, and a Gauss quadrature eigenproblem.
//!
//! cargo run --example oracles

use markov_gegenbauer::constant::sharp_constant;
use markov_gegenbauer::gegenbauer::Lambda;

fn main() -> markov_gegenbauer::error::Result<()> {
    for l in [-0.49, 0.0, 2.5] {
        let lambda = Lambda::new(l)?;
        for n in [4, 15, 30] {
            let r = sharp_constant(n, lambda)?.with_oracles()?;
            let o = r.oracle.expect("oracles were run");
            println!(
                "lambda={l:>5} n={n:>2} c={:.12} coefficient dev={:.1e} quadrature dev={:.1e}",
                r.sharp_constant, o.coefficient_deviation, o.quadrature_deviation
            );
        }
    }
    Ok(())
}
