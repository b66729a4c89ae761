//! Difference moving frames for matrix Lie group actions on lattice curves:
//! frames, invariants, discrete Euler-Lagrange equations, Noether-type
//! conservation laws, recurrence solvers, and a smooth comparison integrator.
//!
//! The crate is organized bottom-up:
//!
//! * [`matrix`]: dense matrices, exponentials, structure constants, adjoints;
//! * [`series`]: lattice curves, windows, scalar series;
//! * [`ops`]: difference operators, adjoints, summation by parts, the
//!   discrete Euler operator;
//! * [`actions`]: the three built-in group actions with their catalogues;
//! * [`solvers`]: frame recurrences, conservation-law reconstruction, and the
//!   discrete elastica stepper;
//! * [`smooth`]: the smooth elastica integrator and discrete-smooth
//!   comparison;
//! * [`checks`]: seeded property suites shared by tests and the CLI;
//! * [`cli`]: the batch command-line front end behind the `dmf` binary.

pub mod actions;
pub mod checks;
pub mod cli;
pub mod error;
pub mod matrix;
pub mod ops;
pub mod series;
pub mod smooth;
pub mod solvers;

pub use error::{Error, Result};
