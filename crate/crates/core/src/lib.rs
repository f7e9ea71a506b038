//! Two-way number partitioning with exact arithmetic.
//!
//! The main entry point is [`solver::solve`], a quadratic-time local search
//! whose output admits no improving relocation of one or two elements.
//! [`optimality`] verifies that property independently, [`oracle`] computes
//! exact optima for small inputs and [`baselines`] holds the greedy and
//! Karmarkar-Karp heuristics for comparison.

pub mod baselines;
pub mod error;
pub mod extended;
pub mod instance;
pub mod io;
pub mod optimality;
pub mod oracle;
pub mod partition;
pub mod solver;
pub mod value;

pub use error::{Error, Result};
pub use instance::Instance;
pub use partition::Side;
pub use solver::{solve, Engine, InitPolicy, SolverConfig, SolverReport, TieBreak};
pub use value::Value;
