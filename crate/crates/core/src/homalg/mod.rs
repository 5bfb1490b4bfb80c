//! Homological algebra over finite-dimensional quiver algebras with
//! monomial relations.

mod algebra;
mod complex;
mod coeff;
mod derived;
mod ext;
mod module;
mod resolution;

pub use algebra::{Arrow, Path, PresentedAlgebra};
pub use complex::{BoundedComplex, LinCohomology, VectorComplex};
pub use module::{hom_space, padded_cover, projective_cover, subquotient, AModule, ModMap, ProjModule, Subquotient};
pub use resolution::{lift_cocycle, projective_resolution, ProjReplacement};
pub use ext::{compose, ext_dims, yoneda_compose, ExtElement, ExtGroups, HomComplex, HomGroup};
pub use derived::{
    actionphi_split, chain_endomorphisms, derived_end, dual_numbers_complex, induced_on_cohomology, is_splittable, ladder_sum_complex,
    ladder_triangular_check, min_poly, poly_of_chain_map, scindage_criterion, verify_phi_splitting, ActionPhiReport,
    ChainMap, DerivedEnd, PhiSplitting, SplitReport, TriangularReport,
};
pub use coeff::{poset_cochain_complex, simplex_chain_complex, Poset, PosetSystem, SimplexSystem};
