//! One module per subcommand, each producing a deterministic CSV string and
//! optionally checking trend assertions after the output is written.

pub mod bench;
pub mod bounds;
pub mod derivatives;
pub mod derivatives2d;
pub mod interp;
pub mod sweep;
pub mod vandermonde;

/// k! as f64, exact for k ≤ 20.
pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k as u64).product::<u64>() as f64
}
