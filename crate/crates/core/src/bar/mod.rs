//! Normalized bar-complex (co)homology of finite groups.

mod cochain;
mod complex;
mod homology;
mod massey;
pub mod morse;
mod transfer;

pub use cochain::Cochain;
pub use complex::{boundary_matrix, class_equal, coboundary_matrix, coboundary_witness, cohomology_basis, Coboundaries};
pub use homology::{
    cohomology_dims_mod_p, integral_cohomology, reduced_boundary, BarOptions, IntegralCohomology, ReducedBoundary,
    CACHE_ENV,
};
pub use massey::{massey, massey_with, matrix_massey, MasseyResult};
pub use transfer::Embedding;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BarError {
    #[error("cochains live on different groups")]
    GroupMismatch,
    #[error("coefficient rings differ")]
    RingMismatch,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("resource limit exceeded: {needed} cells needed, limit {limit}")]
    ResourceLimit { needed: u128, limit: u128 },
    #[error("Massey product hypotheses fail: {0}")]
    Hypotheses(String),
    #[error("subgroup mismatch: {0}")]
    SubgroupMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}


/// A cocycle standing for its cohomology class.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    rep: Cochain,
}

impl CohomologyClass {
    pub fn new(rep: Cochain) -> Result<Self, BarError> {
        if !rep.is_cocycle() {
            return Err(BarError::NotCocycle);
        }
        Ok(CohomologyClass { rep })
    }

    pub fn cochain(&self) -> &Cochain {
        &self.rep
    }

    pub fn degree(&self) -> usize {
        self.rep.degree()
    }

    pub fn equals(&self, other: &CohomologyClass) -> Result<bool, BarError> {
        class_equal(&self.rep, &other.rep)
    }
}
