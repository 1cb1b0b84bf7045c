//! A parallel sweep written as CSV. Set MARKOV_GEGENBAUER_THREADS to cap workers.
//!
//! cargo run --example sweep

use markov_gegenbauer::gegenbauer::Lambda;
use markov_gegenbauer::report::{render_csv, sweep, SweepConfig};

fn main() -> markov_gegenbauer::error::Result<()> {
    let rows = sweep(&SweepConfig {
        n_min: 1,
        n_max: 8,
        lambdas: vec![Lambda::new(0.0)?, Lambda::new(0.5)?],
        oracle: false,
        parallel: true,
    })?;
    print!("{}", render_csv(&rows)?);
    Ok(())
}
