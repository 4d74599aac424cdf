//! Exact computations on intersecting uniform set families: diversity and
//! covering functionals, canonical forms, named constructions, big-integer
//! counting formulas, isomorph-free search and branching certificates.

pub mod bits;
pub mod branching;
pub mod canon;
pub mod certify;
pub mod constructions;
pub mod corpus;
pub mod counting;
pub mod error;
pub mod json;
pub mod search;
pub mod setfam;

pub use bits::{VertexSet, MAX_VERTICES};
pub use error::{Error, Result};
pub use setfam::{Family, FamilyStats, SetSystem, SubsetQuery};
