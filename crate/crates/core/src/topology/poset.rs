//! Finite posets with an explicit order relation and their Möbius functions.

use serde::Serialize;

use super::TopologyError;
use crate::sign::SignVector;

/// A finite poset stored as a reflexive, transitive bit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds a poset from a relation, checking the partial order axioms.
    pub fn from_relation(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, TopologyError> {
        let p = Self::from_relation_unchecked(labels, leq);
        p.validate()?;
        Ok(p)
    }

    /// Same as [`FinitePoset::from_relation`] without validation; for
    /// relations that are partial orders by construction.
    pub fn from_relation_unchecked(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let mut m = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = leq(i, j);
            }
        }
        FinitePoset { labels, leq: m }
    }

    /// Poset generated by the given cover pairs `(lower, upper)`.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, TopologyError> {
        let n = labels.len();
        let mut m = vec![false; n * n];
        for i in 0..n {
            m[i * n + i] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(TopologyError::InvalidRelation(format!(
                    "cover ({a},{b}) out of range"
                )));
            }
            m[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i * n + k] {
                    for j in 0..n {
                        if m[k * n + j] {
                            m[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let p = FinitePoset { labels, leq: m };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), TopologyError> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(TopologyError::InvalidRelation(format!("not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(TopologyError::InvalidRelation(format!(
                        "not antisymmetric at ({i},{j})"
                    )));
                }
                if self.leq(i, j) {
                    for k in 0..n {
                        if self.leq(j, k) && !self.leq(i, k) {
                            return Err(TopologyError::InvalidRelation(format!(
                                "not transitive at ({i},{j},{k})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// `a ⋖ b`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !(0..self.len()).any(|c| self.lt(a, c) && self.lt(c, b))
    }

    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.covers(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| !(0..self.len()).any(|b| self.lt(b, a)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| !(0..self.len()).any(|b| self.lt(a, b)))
            .collect()
    }

    /// Induced subposet on `keep`, in the given order.
    pub fn subposet(&self, keep: &[usize]) -> FinitePoset {
        FinitePoset::from_relation_unchecked(
            keep.iter().map(|&i| self.labels[i].clone()).collect(),
            |i, j| self.leq(keep[i], keep[j]),
        )
    }

    /// Indices of the open interval `(a, b)`.
    pub fn open_interval(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&c| self.lt(a, c) && self.lt(c, b))
            .collect()
    }

    /// Indices sorted so that `a < b` implies `a` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        let below: Vec<usize> = (0..n).map(|b| (0..n).filter(|&a| self.leq(a, b)).count()).collect();
        order.sort_by_key(|&i| (below[i], i));
        order
    }

    /// `μ(a, b)` with `μ(a,a) = 1` and `μ(a,b) = −Σ_{a≤c<b} μ(a,c)`.
    pub fn mobius(&self, a: usize, b: usize) -> Result<i64, TopologyError> {
        if !self.leq(a, b) {
            return Err(TopologyError::NotComparable(a, b));
        }
        let n = self.len();
        let mut mu: Vec<Option<i64>> = vec![None; n];
        for c in self.linear_extension() {
            if !(self.leq(a, c) && self.leq(c, b)) {
                continue;
            }
            let v = if c == a {
                1
            } else {
                -(0..n)
                    .filter(|&d| self.lt(d, c))
                    .filter_map(|d| mu[d])
                    .sum::<i64>()
            };
            mu[c] = Some(v);
        }
        Ok(mu[b].expect("b lies in [a, b]"))
    }

    /// Values `μ(0̂, x)` in the poset with a bottom element adjoined.
    pub fn mobius_from_bottom(&self) -> Vec<i64> {
        let n = self.len();
        let mut mu = vec![0i64; n];
        for x in self.linear_extension() {
            mu[x] = -1 - (0..n).filter(|&y| self.lt(y, x)).map(|y| mu[y]).sum::<i64>();
        }
        mu
    }

    /// Möbius number `μ(0̂, 1̂)` of the poset with both bounds adjoined;
    /// the reduced Euler characteristic of the order complex.
    pub fn mobius_number(&self) -> i64 {
        -(1 + self.mobius_from_bottom().iter().sum::<i64>())
    }

    /// JSON form: labels and cover relations.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct View<'a> {
            elements: &'a [String],
            covers: Vec<(usize, usize)>,
        }
        serde_json::to_value(View {
            elements: &self.labels,
            covers: self.cover_relations(),
        })
        .expect("serializable")
    }
}

/// A poset whose elements are sign vectors (topes or covectors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPoset {
    pub elements: Vec<SignVector>,
    pub poset: FinitePoset,
}

impl SignPoset {
    pub fn new(elements: Vec<SignVector>, leq: impl Fn(&SignVector, &SignVector) -> bool) -> Self {
        let poset = FinitePoset::from_relation_unchecked(
            elements.iter().map(SignVector::to_string).collect(),
            |i, j| leq(&elements[i], &elements[j]),
        );
        SignPoset { elements, poset }
    }

    /// Sub-poset of covectors under the product order `0 < +, −`.
    pub fn covectors(elements: Vec<SignVector>) -> Self {
        Self::new(elements, |a, b| a.conforms_to(b))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn mobius_number(&self) -> i64 {
        self.poset.mobius_number()
    }

    pub fn maximal(&self) -> Vec<SignVector> {
        self.poset
            .maximal_elements()
            .into_iter()
            .map(|i| self.elements[i])
            .collect()
    }

    pub fn minimal(&self) -> Vec<SignVector> {
        self.poset
            .minimal_elements()
            .into_iter()
            .map(|i| self.elements[i])
            .collect()
    }

    pub fn position(&self, x: &SignVector) -> Option<usize> {
        self.elements.iter().position(|y| y == x)
    }
}
