//! Closed-form engine values against brute-force enumeration of all 2^n sequences.
use definetti::oracle::{enumerate_joint, oracle_conditional_mi, oracle_divergence, oracle_tv};
use definetti::{conditional_mutual_information, divergence_to_mixture, tv_to_mixture, FamilySpec};

fn main() -> definetti::Result<()> {
    let n = 14;
    let pi = FamilySpec::RandomDirichlet { seed: 11 }.generate(n)?;
    let joint = enumerate_joint(&pi)?;
    println!(
        "max deviation under transpositions: {:.3e}",
        joint.max_transposition_deviation()
    );
    for k in [2, 5, 9] {
        let d = (divergence_to_mixture(&pi, k)?, oracle_divergence(&pi, k)?);
        let tv = (tv_to_mixture(&pi, k)?, oracle_tv(&pi, k)?);
        println!(
            "k = {k}: D {:.15e} vs {:.15e}, TV {:.15e} vs {:.15e}",
            d.0, d.1, tv.0, tv.1
        );
    }
    let (ell, i, k) = (5, 2, 6);
    println!(
        "I(X_{i}; X_{}..X_{k} | N = {ell}): {:.15e} vs {:.15e}",
        i + 1,
        conditional_mutual_information(n, ell, i, k)?,
        oracle_conditional_mi(&joint, i, k, ell)?
    );
    Ok(())
}
