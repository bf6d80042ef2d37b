//! Runs a sweep described by a JSON configuration and writes CSV to stdout.
use definetti::harness::{run_sweep, write_rows, SweepConfig};

fn main() -> definetti::Result<()> {
    let config: SweepConfig = serde_json::from_str(
        r#"{
            "families": [
                {"kind": "iid", "params": {"p": 0.3}},
                {"kind": "polya", "params": {"a": 2, "b": 5}},
                {"kind": "random_dirichlet", "seed": 1}
            ],
            "n_grid": [16, 64],
            "k_rule": {"fractions": [0.125, 0.25]},
            "format": "csv"
        }"#,
    )?;
    config.validate()?;
    let outcome = run_sweep(&config)?;
    write_rows(&outcome.rows, config.format, std::io::stdout().lock())?;
    eprintln!(
        "{} rows, {} violations, max ratio {:.4e}",
        outcome.rows.len(),
        outcome.violations,
        outcome.max_ratio()
    );
    Ok(())
}
