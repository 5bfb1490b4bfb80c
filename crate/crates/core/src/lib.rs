//! Exact computations around Weil–Deligne representations and semistable
//! degenerations.
//!
//! * [`exactnum`]: rationals, prime fields, matrices, subspaces and the
//!   formal `c·t^m` eigenvalue tags.
//! * [`wd`]: Frobenius-semisimple Weil–Deligne representations, the `τ_I`
//!   family and the Ext-ladder realization.
//! * [`filtration`]: monodromy and weight filtrations, the monodromy-weight
//!   test in its two equivalent forms.
//! * [`homalg`]: quiver algebras with monomial relations, projective
//!   resolutions, Ext and Yoneda products, derived endomorphisms, splitting
//!   criteria and coefficient-system complexes.
//! * [`semistable`]: weight spectral sequence bookkeeping for strictly
//!   semistable configurations, Mumford-curve graphs, the `B^n` Betti
//!   recursion and the affine apartment.
//! * [`gen`]: seeded random instance generators.
//! * [`acceptance`]: the acceptance battery shared by the test suite and the
//!   command line.

pub mod acceptance;
mod error;
pub mod exactnum;
pub mod filtration;
pub mod gen;
pub mod homalg;
pub mod semistable;
pub mod wd;

pub use error::{Error, Result};
pub use exactnum::{FieldSpec, Matrix, QMonomial, Scalar, Subspace};
pub use filtration::Filtration;
pub use homalg::{AModule, BoundedComplex, PresentedAlgebra};
pub use semistable::{OrientedComplex, SemistableConfig};
pub use wd::{IndecompSummand, SubsetI, WDRep};
