//! Exact computations around the closed-string side of toric Fano manifolds:
//! Jacobian rings of Laurent superpotentials, quantum cohomology presentations,
//! local decompositions over prime fields, and finite A-infinity algebras.

pub mod ainfty;
pub mod algebra;
pub mod error;
pub mod grobner;
pub mod laurent;
pub mod quantum;
pub mod realgen;
pub mod scalar;
pub mod toric;

pub use error::{Error, Result, ValidationError};
pub use scalar::{Field, Scalar, UniPoly};

/// Seed for every randomized step (only equal-degree factorization is randomized).
pub const DEFAULT_SEED: u64 = 0x5eed_f10e;

/// Default cap on S-pair reductions in a single Groebner basis computation.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Knobs shared by the heavier computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub budget: u64,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { budget: DEFAULT_BUDGET, seed: DEFAULT_SEED }
    }
}
