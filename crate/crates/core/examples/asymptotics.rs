//! How c/n^2 approaches its Bessel-zero limit.
//!
//! cargo run --example asymptotics

use markov_gegenbauer::asymptotics::asymptotic_report;
use markov_gegenbauer::gegenbauer::Lambda;

fn main() -> markov_gegenbauer::error::Result<()> {
    for l in [0.0, 0.5, 1.0] {
        let r = asymptotic_report(Lambda::new(l)?, &[10, 25, 50, 100, 200])?;
        println!(
            "lambda={l}: j = {:.12}, limit = {:.10}, bracket [{:.7}, {:.7}]",
            r.bessel_first_zero, r.limit_value, r.limit_lower, r.limit_upper
        );
        if let Some(b) = r.published_bracket {
            println!("  published bracket [{}, {}]", b.lower, b.upper);
        }
        for p in &r.trajectory {
            println!("  n={:>3}  c/n^2 = {:.10}", p.n, p.normalized);
        }
    }
    Ok(())
}
