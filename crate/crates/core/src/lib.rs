//! Exact solver for the fixed-endpoint travelling salesman path: the
//! shortest route from city 1 to city n that visits every other city once.
//!
//! [`heldkarp`] computes the optimum with the subset dynamic program and
//! counts the states it evaluates; [`oracle`] enumerates every ordering as
//! ground truth; [`bench`] measures how runtime grows with `n`.

pub mod bench;
pub mod cli;
pub mod error;
pub mod heldkarp;
pub mod instance;
pub mod oracle;
pub mod rng;

pub use bench::{doubling_ratios, emit_csv, run_scaling, ScalingRecord, ScalingReport};
pub use error::{Error, Result};
pub use heldkarp::{
    expected_state_count, reconstruct_path, solve, Solution, StateTable, SubsetMask,
};
pub use instance::{
    generate_random, parse_instance, relabel, serialize_instance, CityId, Instance, Permutation,
};
pub use oracle::{path_length, solve_brute_force, Path};
pub use rng::SplitMix64;

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::instance::Instance;

    /// Four cities where the ascending route is not optimal.
    pub(crate) fn instance_a() -> Instance {
        Instance::from_matrix(&[[0, 1, 2, 9], [1, 0, 4, 8], [2, 4, 0, 16], [9, 8, 16, 0]]).unwrap()
    }
}
