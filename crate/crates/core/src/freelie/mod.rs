//! Free Lie algebras on weighted generators.

mod algebra;
mod lyndon;
mod spec;
mod subalgebra;
mod witt;

pub use algebra::{FreeLieAlgebra, LieElement, Terms};
pub(crate) use algebra::add_scaled;
pub use lyndon::{
    count_lyndon_words, lyndon_basis, Bracketing, LyndonBasis, LyndonBasisElement, Word,
};
pub use spec::{DimensionTable, Generator, GeneratorSpec};
pub use subalgebra::{
    free_bound_report, generated_subalgebra, generated_subalgebra_dims, BracketOracle,
    FreenessReport, FreenessRow, GeneratedSubalgebra, Modulus, Provenance, Verdict,
};
pub use witt::witt_dims;
