//! The sharp constant next to the two closed-form upper bounds.
//!
//! cargo run --example bounds

use markov_gegenbauer::constant::{sharp_constant, theorem_bound, trace_bound};
use markov_gegenbauer::gegenbauer::Lambda;

fn main() -> markov_gegenbauer::error::Result<()> {
    let lambda = Lambda::new(-0.25)?;
    println!("lambda = {lambda}");
    println!(
        "{:>4} {:>14} {:>14} {:>14} {:>8}",
        "n", "c", "2 sqrt(trace)", "bound", "c/bound"
    );
    for n in [1, 2, 5, 10, 20, 50, 100] {
        let c = sharp_constant(n, lambda)?.sharp_constant;
        let bound = theorem_bound(n, lambda);
        println!(
            "{:>4} {:>14.6} {:>14.6} {:>14.6} {:>8.5}",
            n,
            c,
            trace_bound(n, lambda),
            bound,
            c / bound
        );
    }
    Ok(())
}
