//! Runs the oracle and inequality verification suites for small n.
use definetti::harness::run_verify;

fn main() -> definetti::Result<()> {
    let summary = run_verify(10, 3)?;
    for s in &summary.suites {
        println!(
            "{:<28} {:>8} checks  max deviation {:.3e}  tolerance {:.1e}  {}",
            s.name,
            s.checks,
            s.max_deviation,
            s.tolerance,
            if s.passed() { "PASS" } else { "FAIL" }
        );
    }
    Ok(())
}
