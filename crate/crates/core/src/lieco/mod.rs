//! Graded presentations, their truncated quotients, Chevalley-Eilenberg
//! cohomology with trivial coefficients, and the correspondence between
//! extensions of the trivial module and 1-cocycles.

mod cohomology;
mod extension;
mod quotient;

pub use cohomology::{
    ce_cohomology, cohomology_of, completed_group_cohomology, CohomologyReport, EulerAudit, MAX_DEGREE,
};
pub use extension::{
    coboundary, cocycle_from_extension, cocycle_from_extension_with_lift, cocycle_space, cohomologous,
    extension_from_cocycle, is_trivial_extension, Cocycle, GradedModule, ModuleExtensionDatum,
};
pub use quotient::{build_quotient, GradedLiePresentation, GradedQuotientAlgebra, QuotientBasisElement};
