//! Exact scalars and linear algebra.
//!
//! Everything is exact: rationals are arbitrary precision and prime fields
//! are reduced residues. Subspaces carry canonical reduced echelon bases.

mod field;
mod matrix;
mod poly;
mod qmono;
mod subspace;

pub use field::{format_rational, int, parse_rational, rat, rat_pow, rat_sqrt, FieldSpec, Scalar};
pub use matrix::{Matrix, Rref, Vector};
pub use poly::Poly;
pub use qmono::QMonomial;
pub use subspace::Subspace;

/// Null-space basis of `m`.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    m.kernel_basis()
}

/// `A ∩ B` for subspaces of a common ambient space.
pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> crate::Result<Subspace> {
    a.intersect(b)
}
