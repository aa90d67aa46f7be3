//! Right-angled Coxeter groups built from full simplicial complexes, finite quotients of
//! their Davis complexes, and the homology and Euler characteristics of both.

mod bestvina;
mod complex;
mod coxeter;
mod homology;

pub use bestvina::{bestvina, is_moore_homology, moore_complex, BestvinaReport};
pub use complex::{barycentric_subdivision, ComplexJson, SimplicialComplex};
pub use coxeter::{
    chiswell_chi, chiswell_chi_unsigned, davis_quotient, euler_report, greedy_coloring, orbifold_chi,
    racg_from_complex, torsion_free_coloring, Coloring, DavisQuotient, EulerReport, GraphProduct, MAX_COLORS,
};
pub use homology::{boundary_smith, cohomology_degree, cohomology_from_homology, homology, HomologyGroup};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DavisError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("complex is not full; take a barycentric subdivision first")]
    NotFull,
    #[error("simplex {0:?} is not in the complex")]
    AbsentSimplex(Vec<u32>),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}
