//! The Varchenko matrix of an oriented matroid, its factorization into
//! Möbius-weighted matrices, and the determinant formulas.

mod blocks;
mod cone;
mod formula;
mod matrices;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::matroid::MatroidError;
use crate::om::OmError;
use crate::poly::{PolyError, PrimeField, DEFAULT_PRIME, DEFAULT_SYMBOLIC_LIMIT};
use crate::sign::ElemSet;
use crate::topology::TopologyError;

pub use blocks::{block_det, block_layout, prop54_check, verify_block_structure, Block, BlockLayout};
pub use cone::{cone_matrix, verify_cone_det, ConeFactor, ConeReport};
pub use formula::{
    aggregate_by_zero_set, b_f_e, det_formula, eval_formula_modp, expand_formula,
    refined_formula, t_f_e, verify_matroid_invariance, verify_refined_formula, FactorTerm,
    RefinedTerm,
};
pub use matrices::{
    build_cal_me, build_me, build_varchenko, paired_order, varchenko, verify_factorization,
    MobiusTable, VarchenkoMatrix,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarchenkoError {
    #[error(transparent)]
    Om(#[from] OmError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("tope order is not a permutation of the topes")]
    BadTopeOrder,
    #[error("element order is not a permutation of the ground set")]
    BadElementOrder,
    #[error("covector {covector} is nonzero at element {element}")]
    NotAZero { covector: String, element: usize },
    #[error("no tope has {0} as its maximal face at the given element")]
    EmptyBlock(String),
    #[error("{0} is a tope and has no zeros")]
    IsTope(String),
    #[error("the sign pattern does not define a closed supertope")]
    NotClosed,
}

/// A linear order `e₁ ≺ … ≺ e_r` on the ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementOrder {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl ElementOrder {
    /// Index order.
    pub fn natural(n: usize) -> Self {
        ElementOrder {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    /// `order` lists the elements from smallest to largest.
    pub fn new(order: Vec<usize>) -> Result<Self, VarchenkoError> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &e) in order.iter().enumerate() {
            if e >= n || position[e] != usize::MAX {
                return Err(VarchenkoError::BadElementOrder);
            }
            position[e] = i;
        }
        Ok(ElementOrder { order, position })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn elements(&self) -> &[usize] {
        &self.order
    }

    pub fn largest(&self) -> Option<usize> {
        self.order.last().copied()
    }

    pub fn max_of(&self, s: ElemSet) -> Option<usize> {
        s.iter().max_by_key(|&e| self.position[e])
    }

    pub(crate) fn check(&self, n: usize) -> Result<(), VarchenkoError> {
        if self.order.len() != n {
            return Err(VarchenkoError::BadElementOrder);
        }
        Ok(())
    }
}

/// Parameters for randomized and guarded verification.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub field: PrimeField,
    pub trials: usize,
    pub seed: u64,
    pub max_symbolic: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            field: PrimeField::default(),
            trials: 20,
            seed: 0,
            max_symbolic: DEFAULT_SYMBOLIC_LIMIT,
        }
    }
}

impl VerifyConfig {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn modular_method(&self) -> String {
        let p = self.field.modulus();
        let name = if p == DEFAULT_PRIME {
            "2^61-1".to_string()
        } else {
            p.to_string()
        };
        format!("modular, {} random points mod {name}", self.trials)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of a verification: the claim, pass/fail and any witnesses.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub claim: String,
    pub method: String,
    pub status: Status,
    pub witnesses: Vec<serde_json::Value>,
}

impl Report {
    pub fn new(claim: impl Into<String>, method: impl Into<String>) -> Self {
        Report {
            claim: claim.into(),
            method: method.into(),
            status: Status::Pass,
            witnesses: Vec::new(),
        }
    }

    pub fn fail(&mut self, witness: serde_json::Value) {
        self.status = Status::Fail;
        self.witnesses.push(witness);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Folds another report's failures into this one.
    pub fn absorb(&mut self, other: Report) {
        if !other.passed() {
            self.status = Status::Fail;
        }
        self.witnesses.extend(other.witnesses);
    }
}
