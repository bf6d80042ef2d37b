//! Log-log slope of total variation against n at fixed k.
use definetti::harness::{geometric_grid, run_rate};
use definetti::FamilySpec;

fn main() -> definetti::Result<()> {
    for family in [
        FamilySpec::Iid { p: 0.3 },
        FamilySpec::PointMass(definetti::Atom::Fraction(0.5)),
    ] {
        let outcome = run_rate(&family, 4, &geometric_grid(32, 1024))?;
        for r in &outcome.rows {
            println!("{} n = {:>5}: TV = {:.6e}", r.family, r.n, r.tv);
        }
        println!("slope: {:?}", outcome.slope);
    }
    Ok(())
}
