//! Exact computations with weight-graded Lie algebras.
//!
//! Everything is computed over the rationals with exact arithmetic:
//! Lyndon bases and bracket rewriting in free Lie algebras, Chevalley-Eilenberg
//! cohomology of graded presentations, dimension tables for weighted
//! completions of Galois groups attached to number-field signatures, and
//! Ihara derivations of the free Lie algebra on two generators.

pub mod derivops;
pub mod error;
pub mod exactlin;
pub mod freelie;
pub mod lieco;
pub mod textfmt;
pub mod wcomp;

pub use error::{Error, Result};
