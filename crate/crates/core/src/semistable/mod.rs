//! Weight spectral sequence bookkeeping for strictly semistable
//! configurations with Tate-type strata.

mod apartment;
mod betti;
mod config;
mod graph;
mod oriented;
mod spectral;

pub use apartment::{apartment, apartment_check, face_betti, Apartment, ApartmentCheck};
pub use betti::{bn_betti, gaussian_binomial, kunneth, BettiPoly, QPoly};
pub use config::{SemistableConfig, StratumCell};
pub use graph::{connected_multigraphs, enumerate_multigraphs, mumford_from_graph, Multigraph};
pub use oriented::{OrientedCell, OrientedComplex};
pub use spectral::{
    corner_complexes, e1_page, e2_page, nnonnul_check, CornerComplexes, E1Entry, E1Page, E1Piece, E2Page, NnonnulReport,
};
