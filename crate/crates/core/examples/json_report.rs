//! Drive a verification run from code and print the JSON report.
//!
//! ```bash
//! cargo run --release --example json_report -- D4
//! ```

use orbit_hk::cli::{run, Command, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = RunConfig::new(Command::Verify);
    cfg.algebra = std::env::args().nth(1).unwrap_or_else(|| "A2".into()).parse()?;
    cfg.trials = Some(20);
    let report = run(&cfg)?;
    println!("{}", report.to_json());
    std::process::exit(report.exit_code());
}
