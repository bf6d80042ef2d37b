//! Conditional mutual information given the number of ones, with its bound and terms.
use definetti::{bound_values, conditional_mutual_information, lemma_term_bounds};

fn main() -> definetti::Result<()> {
    let (n, k) = (64, 8);
    let lemma = bound_values(n, k)?.lemma;
    println!("n = {n}, k = {k}, bound 5 k log n / (n - k) = {lemma:.6}");
    for ell in [1, 8, 32, 63] {
        for i in [1, k / 2, k - 1] {
            let mi = conditional_mutual_information(n, ell, i, k)?;
            let t = lemma_term_bounds(n, ell, i, k)?;
            println!(
                "ell = {ell:>2}, i = {i}: I = {mi:.6e}  terms = {:.4e} + {:.4e} + {:.4e} = {:.4e}",
                t.interior_term, t.collision_term, t.boundary_term, t.total
            );
        }
    }
    Ok(())
}
