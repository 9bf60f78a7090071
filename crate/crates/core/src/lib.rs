//! Exact generalized inverses of dual matrices.
//!
//! A dual matrix `M̂ = M + εM₀` (with `ε² = 0`) has a dual Drazin inverse and,
//! at index one, a dual group inverse only under extra conditions on `M₀`.
//! The weak dual Drazin inverse always exists and is unique; it agrees with
//! the dual Drazin inverse whenever the latter exists. The weak dual group
//! inverse plays the same role for matrices whose standard part has index
//! one, and it drives the solvers for `M̂x̂ = b̂` with and without the
//! restriction `x̂ ∈ R(M̂)`.
//!
//! All arithmetic is over arbitrary-precision rationals, so every identity is
//! checked by exact equality.
//!
//! Module map:
//! - [`matrix`]: rationals and dense rational matrices (RREF, rank, null space, inverse)
//! - [`dual`]: dual scalars and matrices, powers, inverses, dual linear systems
//! - [`kernel`]: real Moore–Penrose, index, core-nilpotent decomposition, Drazin and group inverses
//! - [`indices`]: appreciable/dual rank and index
//! - [`inverses`]: dual Drazin/group inverses, their weak versions, defining-equation checks
//! - [`decomp`]: dual block-diagonalization at appreciable index one
//! - [`solvers`]: consistency tests and solution families of `M̂x̂ = b̂`
//! - [`cli`]: JSON document format and command dispatch

#![forbid(unsafe_code)]

pub mod cli;
pub mod decomp;
pub mod dual;
pub mod error;
pub mod indices;
pub mod inverses;
pub mod kernel;
pub mod matrix;
pub mod solvers;

pub use dual::{DualMatrix, DualScalar, ParametricDualSolutions};
pub use error::{Error, Result};
pub use matrix::{Rational, RealMatrix};
