//! Numerical analysis of logical product operators on quantum error-detecting
//! codes.
//!
//! Given a code (stabilizer generators or an explicit codeword basis), this
//! crate builds the code-space projector, checks which errors the code
//! detects, computes the real-linear space of product Hamiltonians that
//! generate continuous logical families, and enumerates the finite group of
//! logical actions induced by transversal gate vocabularies.
//!
//! The pipeline, bottom to top:
//!
//! * [`operator_core`]: dense complex matrices over a generic real scalar,
//!   tensor/embedding helpers, Hermitian operator bases, a phase-invariant
//!   metric on unitaries, and SVD-based real nullspace extraction.
//! * [`code_model`]: subsystem layouts with block/part structure, Pauli
//!   strings, and code-space construction (projector + codeword basis).
//! * [`detection`]: the detectability condition `PEP ∝ P`, per error and
//!   part-by-part.
//! * [`tangent_space`]: the space of product Hamiltonians `D` with
//!   `(I−P)DP = 0`, classified trivial/nontrivial on the code space.
//! * [`gate_group`]: logical actions of transversal unitaries, closure
//!   enumeration, and approximation gaps to target gates.
//!
//! All numerics are generic over the real scalar via [`Scalar`] (`f32` or
//! `f64`); the [`defaults`] tolerances and the type aliases at the crate root
//! are `f64`-centric, which is what the CLI and the test suites use.

pub mod code_model;
pub mod detection;
mod error;
pub mod gate_group;
pub mod operator_core;
mod scalar;
pub mod tangent_space;

// downstream crates build vectors/matrices against the same linear-algebra
// version this crate was compiled with
pub use nalgebra;
pub use num_complex;

pub use error::Error;
pub use scalar::{real, Scalar};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Largest total Hilbert-space dimension the dense pipeline accepts.
pub const MAX_DIM: usize = 4096;

/// Default tolerances (calibrated for `f64`).
///
/// Every analysis function takes its tolerance explicitly; these are the
/// values the CLI and the bundled test suites pass. Reports must echo
/// whichever tolerance was actually used.
pub mod defaults {
    /// Relative singular-value cutoff for nullspace extraction.
    pub const NULLSPACE_TOL: f64 = 1e-9;
    /// Frobenius residual below which `PEP ∝ P` counts as detectable.
    pub const DETECTION_TOL: f64 = 1e-8;
    /// Frobenius threshold for classifying a logical Hamiltonian as trivial.
    pub const CLASSIFICATION_TOL: f64 = 1e-8;
    /// Frobenius residual below which `(I−P)UP = 0` counts as logical.
    pub const LOGICAL_TOL: f64 = 1e-8;
    /// Projective distance under which two logical actions are the same.
    pub const DEDUP_TOL: f64 = 1e-6;
    /// Element-count cutoff for group closure.
    pub const MAX_GROUP_SIZE: usize = 10_000;
}

// f64 aliases for the main domain types.
pub type DenseOperator64 = operator_core::DenseOperator<f64>;
pub type HermitianBasisSet64 = operator_core::HermitianBasisSet<f64>;
pub type CodeSpace64 = code_model::CodeSpace<f64>;
pub type TangentReport64 = tangent_space::TangentReport<f64>;
pub type LogicalAction64 = gate_group::LogicalAction<f64>;
pub type EnumeratedGroup64 = gate_group::EnumeratedGroup<f64>;

// f32 aliases; usable with proportionally looser tolerances.
pub type DenseOperator32 = operator_core::DenseOperator<f32>;
pub type CodeSpace32 = code_model::CodeSpace<f32>;
