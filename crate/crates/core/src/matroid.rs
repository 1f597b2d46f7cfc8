//! The matroid underlying an oriented matroid: flats, closure, rank and
//! Crapo's beta invariant.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::om::{GroundSet, OmError, OrientedMatroid};
use crate::sign::ElemSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("beta invariant is undefined on the empty ground set")]
    EmptyGroundSet,
    #[error("element {0} is not in the ground set")]
    NoSuchElement(usize),
}

/// Flats are the zero sets of covectors; the rank of `z(F)` is
/// `rank(ℒ) − rank_ℒ(F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderlyingMatroid {
    ground: GroundSet,
    flats: BTreeMap<u64, usize>,
}

impl UnderlyingMatroid {
    pub fn new(m: &OrientedMatroid) -> Self {
        let mut flats = BTreeMap::new();
        for x in m.covectors() {
            let r = m.rank() - m.covector_rank(x).expect("own covector");
            flats.insert(x.zero_set().0, r);
        }
        flats.insert(m.ground().all().0, m.rank());
        UnderlyingMatroid {
            ground: m.ground().clone(),
            flats,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Flats with their ranks, ordered by rank and then by bit pattern.
    pub fn flats(&self) -> Vec<(ElemSet, usize)> {
        let mut v: Vec<(ElemSet, usize)> =
            self.flats.iter().map(|(&a, &r)| (ElemSet(a), r)).collect();
        v.sort_by_key(|(a, r)| (*r, a.len(), a.0));
        v
    }

    pub fn is_flat(&self, a: ElemSet) -> bool {
        self.flats.contains_key(&a.0)
    }

    /// Smallest flat containing `a`.
    pub fn closure(&self, a: ElemSet) -> ElemSet {
        self.flats
            .keys()
            .map(|&f| ElemSet(f))
            .filter(|f| a.is_subset(*f))
            .fold(self.ground.all(), |acc, f| acc.intersection(f))
    }

    pub fn rank_of(&self, a: ElemSet) -> usize {
        self.flats[&self.closure(a).0]
    }

    pub fn rank(&self) -> usize {
        self.rank_of(self.ground.all())
    }

    /// `β(M|_A) = (−1)^{r(A)} Σ_{B ⊆ A} (−1)^{|B|} r(B)`.
    pub fn beta_restricted(&self, a: ElemSet) -> Result<u64, MatroidError> {
        if a.is_empty() {
            return Err(MatroidError::EmptyGroundSet);
        }
        if let Some(e) = a.difference(self.ground.all()).iter().next() {
            return Err(MatroidError::NoSuchElement(e));
        }
        let sum: i64 = a
            .subsets()
            .map(|b| {
                let r = self.rank_of(b) as i64;
                if b.len() % 2 == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum();
        let signed = if self.rank_of(a) % 2 == 0 { sum } else { -sum };
        debug_assert!(signed >= 0, "beta invariant is nonnegative");
        Ok(signed as u64)
    }

    pub fn beta(&self) -> Result<u64, MatroidError> {
        self.beta_restricted(self.ground.all())
    }
}

pub fn underlying(m: &OrientedMatroid) -> UnderlyingMatroid {
    UnderlyingMatroid::new(m)
}

/// Number of topes `P` for which `e` does not define a proper face.
pub fn bounded_tope_count(m: &OrientedMatroid, e: usize) -> Result<usize, OmError> {
    if e >= m.num_elements() {
        return Err(OmError::NoSuchElement(e));
    }
    Ok(m
        .topes()
        .iter()
        .filter(|t| m.max_face_at(t, e).is_zero())
        .count())
}

/// JSON view of the underlying matroid.
#[derive(Debug, Serialize)]
pub struct MatroidSummary {
    pub rank: usize,
    pub beta: Option<u64>,
    pub flats: Vec<FlatEntry>,
}

#[derive(Debug, Serialize)]
pub struct FlatEntry {
    pub elements: Vec<usize>,
    pub rank: usize,
}

impl UnderlyingMatroid {
    pub fn summary(&self) -> MatroidSummary {
        MatroidSummary {
            rank: self.rank(),
            beta: self.beta().ok(),
            flats: self
                .flats()
                .into_iter()
                .map(|(a, rank)| FlatEntry {
                    elements: a.to_vec(),
                    rank,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::fixtures;

    fn set(v: &[usize]) -> ElemSet {
        ElemSet::from_elems(v.iter().copied())
    }

    #[test]
    fn flats_of_fixtures() {
        let um = underlying(&fixtures::f2());
        assert_eq!(
            um.flats(),
            vec![(set(&[]), 0), (set(&[0]), 1), (set(&[1]), 1), (set(&[0, 1]), 2)]
        );
        let um = underlying(&fixtures::f3());
        assert_eq!(
            um.flats(),
            vec![
                (set(&[]), 0),
                (set(&[0]), 1),
                (set(&[1]), 1),
                (set(&[2]), 1),
                (set(&[0, 1, 2]), 2)
            ]
        );
        let um = underlying(&fixtures::f1());
        assert_eq!(um.flats(), vec![(set(&[]), 0), (set(&[0]), 1)]);
    }

    #[test]
    fn closure_and_rank() {
        let um = underlying(&fixtures::f3());
        assert_eq!(um.closure(ElemSet::EMPTY), ElemSet::EMPTY);
        assert_eq!(um.closure(set(&[0])), set(&[0]));
        assert_eq!(um.closure(set(&[0, 1])), set(&[0, 1, 2]));
        assert_eq!(um.rank_of(ElemSet::EMPTY), 0);
        assert_eq!(um.rank_of(set(&[0, 1])), 2);
        assert_eq!(underlying(&fixtures::f4()).rank_of(set(&[0, 1, 2])), 3);
    }

    #[test]
    fn beta_examples() {
        assert_eq!(underlying(&fixtures::f1()).beta(), Ok(1));
        assert_eq!(underlying(&fixtures::f2()).beta(), Ok(0));
        assert_eq!(underlying(&fixtures::f3()).beta(), Ok(1));
        assert_eq!(
            underlying(&fixtures::f3()).beta_restricted(ElemSet::EMPTY),
            Err(MatroidError::EmptyGroundSet)
        );
    }

    #[test]
    fn beta_of_uniform_matroids_matches_binomial() {
        // β(U(r,n)) = C(n−2, r−1) for generic arrangements.
        let arr = Arrangement::from_integers(&[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 1],
            vec![1, 2, 3],
        ])
        .unwrap();
        let m = arr.oriented_matroid().unwrap();
        assert_eq!(underlying(&m).beta(), Ok(3));
    }

    #[test]
    fn bounded_topes_are_twice_beta() {
        for m in [fixtures::f1(), fixtures::f2(), fixtures::f3(), fixtures::f4()] {
            let beta = underlying(&m).beta().unwrap() as usize;
            for e in 0..m.num_elements() {
                assert_eq!(bounded_tope_count(&m, e).unwrap(), 2 * beta);
            }
        }
        assert_eq!(bounded_tope_count(&fixtures::f3(), 1).unwrap(), 2);
        assert_eq!(bounded_tope_count(&fixtures::f4(), 2).unwrap(), 0);
    }

    #[test]
    fn flats_are_closed_under_intersection_and_graded() {
        for m in [fixtures::f2(), fixtures::f3(), fixtures::f4()] {
            let um = underlying(&m);
            let flats = um.flats();
            for (a, _) in &flats {
                for (b, _) in &flats {
                    assert!(um.is_flat(a.intersection(*b)));
                }
            }
            for (a, ra) in &flats {
                for (b, rb) in &flats {
                    let covers = a != b
                        && a.is_subset(*b)
                        && !flats
                            .iter()
                            .any(|(c, _)| c != a && c != b && a.is_subset(*c) && c.is_subset(*b));
                    if covers {
                        assert_eq!(*rb, ra + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn reorientation_keeps_flats() {
        let f3 = fixtures::f3();
        let r = f3.reorient(set(&[0])).unwrap();
        assert_eq!(underlying(&f3), underlying(&r));
    }

    #[test]
    fn contraction_rank_adds_up() {
        for m in [fixtures::f2(), fixtures::f3(), fixtures::f4()] {
            let um = underlying(&m);
            for (a, r) in um.flats() {
                let c = m.contraction(a).unwrap();
                assert_eq!(c.rank() + r, m.rank());
            }
        }
    }
}
