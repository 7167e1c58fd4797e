//! Exact hypersphere classification of binary data.
//!
//! Given red and blue training vectors over `{0,1}^d`, decide whether some
//! center and Hamming radius put every blue inside the ball and every red
//! outside, optionally under a budget on the number of ones in the center.
//! The crate bundles several exact solvers with complementary strengths, a
//! real-valued linear-programming variant, instance generators built from
//! classic problem reductions, and a benchmark harness; the `bhc` binary
//! exposes all of it on the command line.

pub mod bench;
pub mod bitvec;
pub mod branching;
pub mod csp3;
pub mod error;
pub mod format;
pub mod generators;
pub mod ilp;
pub mod instance;
pub mod oracle;
pub mod real_lp;
pub mod reductions;
pub mod treewidth;
pub mod twosat;

pub use bitvec::BitVector;
pub use error::{DimensionMismatch, ParseError, SolveError};
pub use instance::{Instance, OptimalSolution, Solution};
