//! Runs a verification suite and writes its CSV.
//!
//! ```text
//! cargo run --release --example experiment_suite [suite] [q] [trials] [out.csv]
//! ```

use fq_incidence::harness::{run_suite, suite_names, to_csv_string, ExperimentConfig};

fn main() -> fq_incidence::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let config = ExperimentConfig {
        suite: args.first().cloned().unwrap_or_else(|| "unconditional".into()),
        q: args.get(1).and_then(|s| s.parse().ok()).unwrap_or(7),
        trials: args.get(2).and_then(|s| s.parse().ok()).unwrap_or(5),
        out: args.get(3).map(Into::into),
        ..Default::default()
    };
    println!("available suites: {}", suite_names().join(", "));
    let report = run_suite(&config)?;
    if config.out.is_none() {
        print!("{}", to_csv_string(&report)?);
    }
    println!(
        "{}: {} rows, {} failures, {} hypothesis violations, exit code {}",
        report.suite,
        report.rows.len(),
        report.failures(),
        report.hypothesis_violations(),
        report.exit_code()
    );
    Ok(())
}
