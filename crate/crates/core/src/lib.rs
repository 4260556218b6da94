//! Bose representations of the Pauli spin operators on a truncated Fock space.
//!
//! The crate builds `σ₋ = cos^l(πN/2)/√(N+1) · a` and its companions as dense
//! complex matrices, checks the Pauli (anti)commutator catalog, certifies the
//! even/odd coherent-state resolutions by exact quadrature, and solves the
//! `σ₋` eigenproblem with a Grassmann eigenvalue.
//!
//! Module map:
//!
//! * [`fock`]: ladder operators and dense operator algebra on `|0⟩…|D−1⟩`.
//! * [`bosonization`]: the `cos^l` family of Pauli representations.
//! * [`coherent`]: coherent, even/odd and nonlinear coherent states.
//! * [`grassmann`]: one-generator Grassmann arithmetic and the `σ₋` eigenket.
//! * [`report`]: verification records and the suites driven by the CLI.

pub mod bosonization;
pub mod coherent;
mod error;
pub mod fock;
pub mod grassmann;
pub mod report;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
