//! Unconditional reflexive polytopes from perfect graphs.
//!
//! Exact constructions and counters for stable-set polytopes, their signed
//! lifts, Ehrhart data, pulling triangulations, the signed Birkhoff family,
//! Gröbner bases of (unconditional) chain polytopes and a perfect-graph census.

pub mod birkhoff;
pub mod census;
pub mod ehrhart;
pub mod error;
pub mod graph;
pub mod groebner;
pub mod lattice;
pub mod polytope;
pub mod triangulate;

pub use birkhoff::{BirkhoffFamily, Family};
pub use census::{CanonicalCode, CensusRecord};
pub use ehrhart::{Budget, CountSpec, EhrhartProfile, HStarVector};
pub use error::{Error, Result};
pub use graph::{Graph, GraphKind, Poset, VertexSet};
pub use groebner::{Basis, MarkedBinomial};
pub use lattice::{AntiBlockingPolytope, UnconditionalPolytope};
pub use polytope::{HRep, LatticePoint, Rational, Row, VRep};
pub use triangulate::{Simplex, Triangulation};
