//! Poset topology on tope posets: Möbius functions, order complexes,
//! integral homology and supertopes.

mod homology;
mod poset;
mod supertope;
mod tope;

use thiserror::Error;

use crate::om::OmError;
use crate::sign::ElemSet;

pub use homology::{
    chains, order_complex, poset_homology, poset_is_homology_contractible, HomologyGroup,
    SimplicialComplex, DEFAULT_FACE_LIMIT,
};
pub use poset::{FinitePoset, SignPoset};
pub use supertope::{
    crucial_class, crucial_sum, crucial_sums, fiber_check, is_closed_supertope, supertope,
    supertope_homology, supertope_poset, trichotomy_witness, Supertope, Witness,
};
pub(crate) use tope::half_mobius_unchecked;
pub use tope::{
    alpha_map, f_r_filter, half_interval, half_mobius_all, half_topes, interval_star,
    mobius_half, open_lower_interval, precedes, tope_poset, triangle_subposet, w_set, TopePoset,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error(transparent)]
    Om(#[from] OmError),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("not a partial order: {0}")]
    InvalidRelation(String),
    #[error("complex has more than {limit} faces")]
    SizeGuard { size: usize, limit: usize },
    #[error("tope {tope} lies on the same side of element {element} as the base tope")]
    SameSide { element: usize, tope: String },
    #[error("sign pattern assigns both signs to {0}")]
    OverlappingPattern(ElemSet),
    #[error("sign pattern is empty")]
    EmptyPattern,
    #[error("no tope matches the sign pattern")]
    EmptySupertope,
    #[error("{0} is not in the triangle subposet")]
    NotInTriangle(String),
    #[error("element {0} must not belong to the given set")]
    ElementInPattern(usize),
    #[error("the three parts must be nonempty and partition the ground set")]
    InvalidPartition,
    #[error("no tope of the required pattern exists for element {0}")]
    MissingTope(usize),
    #[error("no extremal tope and no covector witness exists")]
    NoWitness,
}
