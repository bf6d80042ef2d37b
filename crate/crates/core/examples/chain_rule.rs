//! Conditional divergence equals the sum of conditional mutual informations.
use definetti::{
    averaged_conditional_divergence, conditional_divergence, conditional_mutual_information,
    divergence_to_mixture, FamilySpec,
};

fn main() -> definetti::Result<()> {
    let (n, k) = (40, 6);
    for ell in [3, 20, 37] {
        let direct = conditional_divergence(n, ell, k)?;
        let chain: f64 = (1..k)
            .map(|i| conditional_mutual_information(n, ell, i, k))
            .sum::<definetti::Result<f64>>()?;
        println!("ell = {ell:>2}: D = {direct:.15e}, sum of I = {chain:.15e}");
    }
    let pi = FamilySpec::Polya { a: 1.0, b: 1.0 }.generate(n)?;
    println!(
        "uniform mixture: D(Q_k || M_k) = {:.6e} <= averaged conditional divergence {:.6e}",
        divergence_to_mixture(&pi, k)?,
        averaged_conditional_divergence(&pi, k)?
    );
    Ok(())
}
