//! Marginal of the first k coordinates versus its Bernoulli mixture approximation.
use definetti::{marginal_weight_pmf, mixing_measure, mixture_weight_pmf, FamilySpec};

fn main() -> definetti::Result<()> {
    let (n, k) = (12, 4);
    let pi = FamilySpec::PointMass(definetti::Atom::Count(6)).generate(n)?;
    let q = marginal_weight_pmf(&pi, k)?;
    let mu = mixing_measure(&pi);
    let m = mixture_weight_pmf(&mu, k)?;

    println!("n = {n}, k = {k}, mixing measure mean = {:.4}", mu.mean());
    println!(
        "{:>6} {:>14} {:>14}",
        "ones", "P(class) Q_k", "P(class) M_k"
    );
    for (s, (a, b)) in q.class_masses().iter().zip(m.class_masses()).enumerate() {
        println!("{s:>6} {a:>14.6e} {b:>14.6e}");
    }
    Ok(())
}
