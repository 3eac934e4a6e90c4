//! Evaluates the incidence bounds for the built-in presets and reports which
//! one is smallest among those whose hypotheses hold.
//!
//! ```text
//! cargo run --release --example bound_regimes [q]
//! ```

use fq_incidence::bounds::regime_report;
use fq_incidence::harness::{smallest_realizable, PRESET_NAMES};

fn main() -> fq_incidence::Result<()> {
    let q: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    for name in PRESET_NAMES {
        let p = smallest_realizable(name, q, 0)?;
        let r = regime_report(&p.params)?;
        let actual = p.incidences()?;
        println!("{name} at q={} (alpha={:.3}): I = {actual}", p.q, p.alpha);
        for (label, nominal, realized) in &p.sizes {
            println!("  |{label}| = {realized} (nominal {nominal:.2})");
        }
        for b in &r.bounds {
            println!("  {:<16} {:>12.2}  hypotheses {}", b.bound_name, b.value, b.hypotheses_ok());
        }
        let flags: Vec<String> = r.range_flags.iter().map(|(n, v)| format!("{n}={v}")).collect();
        println!("  winner {}; hypotheses_ok {}; {}", r.winner, r.hypotheses_ok, flags.join(" "));
    }
    Ok(())
}
