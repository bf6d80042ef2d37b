//! Searches point masses and random count laws for the largest divergence-to-bound ratio.
use definetti::harness::run_extremal;

fn main() -> definetti::Result<()> {
    let report = run_extremal(24, 6, 32, 0)?;
    println!(
        "scanned {} candidates at n = {}, k = {}",
        report.candidates, report.n, report.k
    );
    println!("argmax: {}", report.argmax);
    println!(
        "D = {:.6e}, bound = {:.6e}, ratio = {:.4e}, gap = {:.6e}",
        report.report.divergence_nats, report.report.theorem_bound, report.report.ratio, report.gap
    );
    Ok(())
}
