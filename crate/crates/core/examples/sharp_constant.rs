//! Sharp Markov constants for a few weights.
//!
//! cargo run --example sharp_constant

use markov_gegenbauer::constant::sharp_constant;
use markov_gegenbauer::gegenbauer::Lambda;

fn main() -> markov_gegenbauer::error::Result<()> {
    println!("{:>6} {:>4} {:>20} {:>6}", "lambda", "n", "c", "branch");
    for l in [0.0, 0.5, 1.0] {
        let lambda = Lambda::new(l)?;
        for n in [1, 2, 3, 10, 50] {
            let r = sharp_constant(n, lambda)?;
            println!(
                "{:>6} {:>4} {:>20.14} {:>6}",
                l,
                n,
                r.sharp_constant,
                r.branch.as_str()
            );
        }
    }
    Ok(())
}
