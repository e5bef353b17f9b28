//! Exact homological algebra for finite-dimensional quotients of path
//! algebras: bases, representations, resolutions, higher Auslander-Reiten
//! translations and cluster-tilting checks.
//!
//! Modules are left modules given as quiver representations. An arrow
//! `a: i -> j` acts as a linear map `M_j -> M_i`, stored as a
//! `dims[i] x dims[j]` matrix, and the path `a1·…·ak` acts as the product
//! `M_{a1}···M_{ak}`.

pub mod basis;
pub mod cluster;
pub mod field;
pub mod iso;
pub mod matrix;
pub mod module;
pub mod resolution;
pub mod translate;

use thiserror::Error;

use crate::quiver::PresentationError;

pub use basis::{Algebra, BasisElement, GradedBasis, SparseVec};
pub use cluster::{
    cluster_tilting_candidate, end_global_dimension, endomorphism_presentation, is_napr_tiltable, is_self_injective,
    verify_nrf, EndomorphismPresentation, NrfReport, Summand,
};
pub use field::{Field, Fp, Rational};
pub use iso::{is_isomorphic, AlgebraSignature};
pub use matrix::Matrix;
pub use module::{ModuleMap, Representation};
pub use resolution::{ext_dim, global_dimension, injective_dimension, projective_dimension, GlobalDimension};
pub use translate::{dual, tau_n, tau_n_minus, transpose};

pub const DEFAULT_RESOLUTION_BOUND: usize = 20;
pub const DEFAULT_ORBIT_BOUND: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomalgError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("algebra has nonzero paths beyond degree {bound}")]
    NotFiniteDimensionalWithinBound { bound: usize },
    #[error("a relation coefficient is not defined over the chosen field")]
    CoefficientNotInField,
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("projective resolution longer than {bound}")]
    ResolutionBoundExceeded { bound: usize },
    #[error("translate orbit longer than {bound}")]
    OrbitBoundExceeded { bound: usize },
    #[error("summand {index} is not indecomposable")]
    DecomposableSummand { index: usize },
}
