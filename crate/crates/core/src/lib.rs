//! n-APR tilting for type-A n-representation-finite algebras: the quivers
//! `Q^(n,s)`, cuts, slices and mutation, with an exact homological engine
//! to check the resulting algebras.

pub mod apr;
pub mod covering;
pub mod dot;
pub mod homalg;
pub mod json;
pub mod quiver;
pub mod suite;
pub mod typea;

pub use apr::{two_apr_cotilt_presentation, two_apr_tilt_presentation, AprError};
pub use covering::{CoveringVertex, CoveringWindow, Slice};
pub use homalg::{Algebra, AlgebraSignature, GlobalDimension, HomalgError, NrfReport, Rational, Representation};
pub use quiver::{AlgebraPresentation, Path, Quiver, RelationElement, Walk};
pub use typea::{Cut, Dir, MutationGraph, TypeA, TypeAError};
