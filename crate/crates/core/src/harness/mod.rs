//! Batch experiments: bound sweeps, oracle verification, total-variation
//! rates, convergence of the finite mixtures, and worst-case search.
//!
//! Every command splits its work into independent cells, evaluates them on
//! the rayon pool, and sorts before returning, so outputs do not depend on
//! thread count.

pub mod config;
pub mod converge;
pub mod extremal;
pub mod output;
pub mod rate;
pub mod sweep;
pub mod verify;

pub use config::{KRule, OutputFormat, SweepConfig};
pub use converge::{decays_by, run_converge, ConvergeRow};
pub use extremal::{run_extremal, ExtremalReport};
pub use output::{format_float, write_rows, write_to, TableRow};
pub use rate::{geometric_grid, run_rate, RateOutcome, RateRow};
pub use sweep::{run_sweep, SweepOutcome, SweepRow};
pub use verify::{run_verify, SuiteResult, VerifySummary};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "DEFINETTI_THREADS";

/// Sizes the global rayon pool from `DEFINETTI_THREADS`, if set. Has no
/// effect once the pool has been built.
pub fn init_thread_pool() -> crate::Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            crate::Error::config(
                THREADS_ENV,
                format!("expected a positive integer, got `{value}`"),
            )
        })?;
    // an already-initialized pool is not an error here
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}
