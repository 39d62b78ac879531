//! Exact combinatorics of discrete manifolds.
//!
//! A discrete d-manifold here is a finite simple graph in which the subgraph
//! induced by the neighbors of every vertex (its unit sphere) is a
//! (d-1)-sphere. On top of that recursive notion the crate provides
//!
//! - recognition of contractible graphs, spheres and manifolds with
//!   certified verdicts,
//! - exact arboricity via graphic-matroid partition, together with the exact
//!   maximum of the density `|E_W| / (|W| - 1)` over induced subgraphs,
//! - curvature, Euler characteristic, Gauss-Bonnet and Dehn-Sommerville
//!   identities in exact rational arithmetic,
//! - deterministic generators for the standard families (cross polytopes,
//!   surfaces, a Freudenthal 3-torus, barycentric refinements of simplicial
//!   complexes),
//! - barycentric refinement and the edge-subdivision procedure that drives
//!   the density of a 3-manifold above any target,
//! - planarity and the Whitney classification of 4-connected maximal planar
//!   graphs.
//!
//! All arithmetic that feeds a verdict is exact; floating point never
//! decides anything.

pub mod arboricity;
pub mod error;
pub(crate) mod flow;
pub mod generators;
pub mod graph;
pub mod io;
pub mod ratio;
pub mod rng;
pub mod topology;
pub mod transforms;
pub mod whitney;

pub use error::{Error, Result};
pub use graph::{FVector, Graph, VertexSet};
pub use ratio::ExactRatio;
pub use topology::{Budget, ManifoldReport, RecognitionResult, Verdict};
