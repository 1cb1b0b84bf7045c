//! The polynomial that attains the constant, in the Gegenbauer basis and on a grid.
//!
//! cargo run --example extremal_polynomial

use markov_gegenbauer::constant::{extremal_polynomial, uniform_grid};
use markov_gegenbauer::gegenbauer::Lambda;

fn main() -> markov_gegenbauer::error::Result<()> {
    let p = extremal_polynomial(7, Lambda::new(1.0)?, &uniform_grid(9))?;
    println!("n = {}, parity = {}", p.n, p.parity.as_str());
    println!(
        "c = {:.14}, achieved ratio = {:.14}",
        p.sharp_constant, p.achieved_ratio
    );
    for (degree, value) in &p.coefficients {
        println!("  C_{degree}: {value:.12e}");
    }
    println!("parity defect = {:.2e}", p.parity_defect());
    for (t, v) in &p.samples {
        println!("  p({t:+.3}) = {v:+.10e}");
    }
    Ok(())
}
