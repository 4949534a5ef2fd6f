use std::fmt;

use thiserror::Error;

/// Errors produced by parsing, validation, solving and benchmarking.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed token, missing header, or wrong row/column count.
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("asymmetric distances: d({i},{j}) = {ij} but d({j},{i}) = {ji}")]
    Asymmetry {
        i: usize,
        j: usize,
        ij: u64,
        ji: u64,
    },

    /// A value outside its permitted range.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    /// The instance is too large for the requested solver.
    #[error("{solver}: n = {n} exceeds the size cap of {cap}")]
    Size {
        solver: Solver,
        n: usize,
        cap: usize,
    },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

/// Which solver raised a size error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    BruteForce,
    HeldKarp,
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solver::BruteForce => f.write_str("brute force"),
            Solver::HeldKarp => f.write_str("held-karp"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
