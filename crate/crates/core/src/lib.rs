//! Exact integral cohomology of moment-angle complexes, duality checks and
//! polyhedral joins of simplicial complexes.

pub mod duality;
pub mod homology;
pub mod moment_angle;
pub mod polyjoin;
pub mod products;
pub mod simplicial;

pub use simplicial::{
    named, shuffle_sign, ComplexError, SimplicialComplex, SimplicialPair, VertexSet, MAX_VERTICES,
};
