//! A reduced run of the verification suite, printed as a table.
//!
//! cargo run --example verify

use markov_gegenbauer::verify::{run_verify, VerifyConfig};

fn main() -> markov_gegenbauer::error::Result<()> {
    let config = VerifyConfig {
        witnesses: 200,
        ..VerifyConfig::new(8)
    };
    let summary = run_verify(&config)?;
    print!("{}", summary.render_table());
    if !summary.all_passed() {
        std::process::exit(1);
    }
    Ok(())
}
