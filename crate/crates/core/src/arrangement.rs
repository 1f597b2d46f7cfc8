//! Central hyperplane arrangements with rational normals.
//!
//! The covectors of `x ↦ (sign⟨x, n_e⟩)_e` are produced from the cocircuits
//! (one line per hyperplane flat of the normal configuration) by closing
//! under composition.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::om::{GroundSet, OmError, OrientedMatroid};
use crate::sign::{ElemSet, Sign, SignVector};

pub type Rational = BigRational;

/// Parses `"p"` or `"p/q"` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational, OmError> {
    let s = s.trim();
    let bad = || OmError::Arrangement(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A central arrangement given by its normal vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    pub dimension: usize,
    pub normals: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct ArrangementFile {
    dimension: usize,
    normals: Vec<Vec<String>>,
}

impl Arrangement {
    pub fn new(dimension: usize, normals: Vec<Vec<Rational>>) -> Result<Self, OmError> {
        if normals.is_empty() {
            return Err(OmError::Arrangement("no normals given".into()));
        }
        for (e, n) in normals.iter().enumerate() {
            if n.len() != dimension {
                return Err(OmError::Arrangement(format!(
                    "normal {e} has {} coordinates, expected {dimension}",
                    n.len()
                )));
            }
            if n.iter().all(Zero::is_zero) {
                return Err(OmError::Loop(e));
            }
        }
        Ok(Arrangement { dimension, normals })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self, OmError> {
        let dimension = rows.first().map_or(0, Vec::len);
        let normals = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        Arrangement::new(dimension, normals)
    }

    /// Reads `{"dimension": d, "normals": [["p/q", ...], ...]}`.
    pub fn from_json(text: &str) -> Result<Self, OmError> {
        let file: ArrangementFile = serde_json::from_str(text)
            .map_err(|e| OmError::Arrangement(format!("malformed arrangement file: {e}")))?;
        let normals = file
            .normals
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect())
            .collect::<Result<Vec<_>, _>>()?;
        Arrangement::new(file.dimension, normals)
    }

    pub fn to_json(&self) -> String {
        let file = ArrangementFile {
            dimension: self.dimension,
            normals: self
                .normals
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        };
        serde_json::to_string(&file).expect("arrangement serializes")
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    /// Rank of the normals indexed by `a`.
    pub fn rank_of(&self, a: ElemSet) -> usize {
        let rows: Vec<Vec<Rational>> = a.iter().map(|e| self.normals[e].clone()).collect();
        row_reduce(rows, self.dimension).len()
    }

    /// Sign vector of the point `x`.
    pub fn sign_vector(&self, x: &[Rational]) -> SignVector {
        let signs: Vec<Sign> = self
            .normals
            .iter()
            .map(|n| {
                let dot = n
                    .iter()
                    .zip(x)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
                if dot.is_zero() {
                    Sign::Zero
                } else if dot.is_positive() {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect();
        SignVector::from_signs(&signs).expect("arrangement size checked")
    }

    /// Cocircuits: sign vectors of the lines cut out by hyperplane flats.
    pub fn cocircuits(&self) -> Vec<SignVector> {
        let n = self.len();
        let all = ElemSet::full(n);
        let r = self.rank_of(all);
        let mut out: HashSet<SignVector> = HashSet::new();
        for basis in subsets_of_size(n, r - 1) {
            if self.rank_of(basis) != r - 1 {
                continue;
            }
            let rows: Vec<Vec<Rational>> =
                basis.iter().map(|e| self.normals[e].clone()).collect();
            // Any null-space vector outside the common kernel gives the
            // cocircuit up to sign.
            for v in null_space(rows, self.dimension) {
                let x = self.sign_vector(&v);
                if !x.is_zero() {
                    out.insert(x);
                    out.insert(-x);
                    break;
                }
            }
        }
        let mut v: Vec<SignVector> = out.into_iter().collect();
        v.sort();
        v
    }

    pub fn oriented_matroid(&self) -> Result<OrientedMatroid, OmError> {
        let n = self.len();
        let cocircuits = self.cocircuits();
        let zero = SignVector::zero(n)?;
        let mut seen: HashSet<SignVector> = HashSet::from([zero]);
        let mut queue = vec![zero];
        // Every covector is a composition of cocircuits, so composing on the
        // right with cocircuits reaches the whole covector set.
        while let Some(x) = queue.pop() {
            for c in &cocircuits {
                let y = x.compose_unchecked(c);
                if seen.insert(y) {
                    queue.push(y);
                }
            }
        }
        OrientedMatroid::from_covectors(GroundSet::new(n)?, seen)
    }
}

/// Covectors of the central arrangement with the given normals.
pub fn from_arrangement(arr: &Arrangement) -> Result<OrientedMatroid, OmError> {
    arr.oriented_matroid()
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = ElemSet> {
    ElemSet::full(n).subsets().filter(move |s| s.len() == k)
}

/// Reduced row echelon form; returns the nonzero rows.
fn row_reduce(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut pivot_row = 0;
    for c in 0..cols {
        let Some(p) = (pivot_row..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][c].recip();
        for v in rows[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != pivot_row && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    let sub = &factor * &rows[pivot_row][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

/// Basis of `{x : ⟨row, x⟩ = 0 for all rows}`.
fn null_space(rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let rref = row_reduce(rows, cols);
    let pivots: Vec<usize> = rref
        .iter()
        .map(|r| r.iter().position(|v| !v.is_zero()).expect("nonzero row"))
        .collect();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &p) in rref.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}
