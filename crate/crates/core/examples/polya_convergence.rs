//! Pólya urn marginals approach their beta mixture as the urn horizon grows.
use definetti::harness::{decays_by, run_converge};

fn main() -> definetti::Result<()> {
    let rows = run_converge(2.0, 3.0, 4, &[8, 16, 32, 64, 128, 256, 512])?;
    for r in &rows {
        println!(
            "n = {:>4}: D = {:.6e}, bound = {:.6e}",
            r.n, r.divergence_nats, r.theorem_bound
        );
    }
    println!("decays by at least 10x: {:?}", decays_by(&rows, 10.0));
    Ok(())
}
