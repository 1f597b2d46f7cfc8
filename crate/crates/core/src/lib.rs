//! Oriented matroids given by covector sets, their tope posets, and the
//! Varchenko matrix with its determinant and factorization.

pub mod arrangement;
pub mod fixtures;
pub mod io;
pub mod matroid;
pub mod om;
pub mod poly;
pub mod sign;
pub mod topology;
pub mod varchenko;

pub use om::{GroundSet, OmError, OrientedMatroid};
pub use sign::{ElemSet, Sign, SignVector};
