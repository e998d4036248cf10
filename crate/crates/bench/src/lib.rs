//! Benchmark, scaling and verification harness for `jointree`.
//!
//! The `jointree` binary is a thin clap front end over [`bench::run_bench`],
//! [`scaling::run_scaling`] and [`verify::verify`].

pub mod bench;
pub mod fault;
pub mod scaling;
pub mod verify;
pub mod workload;

use std::io;

pub use bench::{append_csv, run_bench, BenchConfig, BenchRecord, Op};
pub use workload::Distribution;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Scheme(#[from] jointree::ConfigError),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("correctness check failed: {0}")]
    Correctness(String),
}

impl BenchError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config(_) | BenchError::Scheme(_) => 2,
            BenchError::Io(_) | BenchError::Csv(_) => 3,
            BenchError::Correctness(_) => 4,
        }
    }
}

/// Seed used when neither a flag nor `JOINTREE_SEED` gives one.
pub const DEFAULT_SEED: u64 = 42;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(BenchError::Config("x".into()).exit_code(), 2);
        assert_eq!(
            BenchError::from(jointree::ConfigError::UnknownScheme("x".into())).exit_code(),
            2
        );
        assert_eq!(BenchError::from(io::Error::other("disk")).exit_code(), 3);
        assert_eq!(BenchError::Correctness("keys".into()).exit_code(), 4);
    }
}
