//! Exact-arithmetic toolkit for lattice polytopes.
//!
//! Everything here runs over arbitrary-precision integers and rationals; no
//! floating point touches any geometric predicate. The crate provides
//!
//! * vertex/facet representations of lattice polytopes and exact conversions
//!   between them ([`polytope`], [`dd`]),
//! * lattice point enumeration and Ehrhart data (h\*-polynomials, degrees,
//!   normalized volumes),
//! * a constructive Cayley decomposition pipeline for small-degree polytopes,
//! * Gorenstein duality for reflexive-like polytopes, and
//! * explicit (astronomically large, exactly evaluated) volume bounds.

pub mod affine;
pub mod bounds;
pub mod cayley;
pub mod dd;
pub mod ehrhart;
pub mod enumerate;
pub mod error;
pub mod gorenstein;
pub mod io;
pub mod matrix;
pub mod polytope;
pub mod vector;

pub use error::{Error, Result};
pub use polytope::{cayley_sum, minkowski_sum, FacetSystem, LatticePolytope};
pub use vector::{LatticeVector, RationalVector};
