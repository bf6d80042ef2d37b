//! Entropy, relative entropy, total variation and the binary entropy gap bound.
use definetti::{
    binary_entropy, entropy_difference_bound, relative_entropy, total_variation, FinitePMF,
};

fn main() -> definetti::Result<()> {
    let p = FinitePMF::new(vec![0.5, 0.25, 0.25])?;
    let q = FinitePMF::new(vec![1.0 / 3.0; 3])?;
    println!("H(p)        = {:.12}", p.entropy());
    println!("D(p || q)   = {:.12}", relative_entropy(&p, &q)?);
    println!("||p - q||   = {:.12}", total_variation(&p, &q)?);

    let (a, b) = (0.3, 0.35);
    let gap = (binary_entropy(a)? - binary_entropy(b)?).abs();
    println!(
        "|h({a}) - h({b})| = {gap:.6e} <= {:.6e}",
        entropy_difference_bound(a, b)?
    );
    Ok(())
}
