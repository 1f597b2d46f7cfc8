//! Exponents `b_{F,e}`, `b_F` and `m_A` of the determinant formula.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use serde_json::json;

use super::{ElementOrder, Report, VarchenkoError};
use crate::matroid::UnderlyingMatroid;
use crate::om::{OmError, OrientedMatroid};
use crate::poly::{MultiPoly, PolyError, PrimeField};
use crate::sign::{ElemSet, Sign, SignVector};

fn check_face(m: &OrientedMatroid, f: &SignVector, e: usize) -> Result<(), VarchenkoError> {
    if e >= m.num_elements() {
        return Err(OmError::NoSuchElement(e).into());
    }
    if !m.contains(f) {
        return Err(OmError::NotACovector(f.to_string()).into());
    }
    if f.get(e) != Sign::Zero {
        return Err(VarchenkoError::NotAZero {
            covector: f.to_string(),
            element: e,
        });
    }
    Ok(())
}

/// `𝒯^{F,e}`: topes `P` whose largest face vanishing at `e` is `F`.
pub fn t_f_e(
    m: &OrientedMatroid,
    f: &SignVector,
    e: usize,
) -> Result<Vec<SignVector>, VarchenkoError> {
    check_face(m, f, e)?;
    Ok(m
        .topes()
        .iter()
        .filter(|p| f.conforms_to(p) && m.max_face_at(p, e) == *f)
        .copied()
        .collect())
}

/// `½ #𝒯^{F,e}` if `e` is the largest element of `z(F)`, else 0.
pub fn b_f_e(
    m: &OrientedMatroid,
    f: &SignVector,
    e: usize,
    order: &ElementOrder,
) -> Result<u64, VarchenkoError> {
    order.check(m.num_elements())?;
    let t = t_f_e(m, f, e)?;
    if order.max_of(f.zero_set()) == Some(e) {
        Ok(t.len() as u64 / 2)
    } else {
        Ok(0)
    }
}

/// One factor `(1 − a(F)²)^{b_F}` of the determinant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorTerm {
    pub covector: SignVector,
    pub zeros: ElemSet,
    pub exponent: u64,
}

impl FactorTerm {
    /// `1 − Π_{e∈z(F)} U_e²`.
    pub fn factor(&self, nvars: usize) -> MultiPoly {
        one_minus_square(nvars, self.zeros)
    }
}

pub(crate) fn one_minus_square(nvars: usize, a: ElemSet) -> MultiPoly {
    MultiPoly::one(nvars)
        .checked_sub(&MultiPoly::set_monomial(nvars, a, 2))
        .expect("same universe")
}

/// The factors of `det 𝔙` with positive exponent, in canonical covector
/// order.
pub fn det_formula(
    m: &OrientedMatroid,
    order: &ElementOrder,
) -> Result<Vec<FactorTerm>, VarchenkoError> {
    order.check(m.num_elements())?;
    let mut count: HashMap<SignVector, u64> = HashMap::new();
    for p in m.topes() {
        for e in 0..m.num_elements() {
            let f = m.max_face_at(p, e);
            if order.max_of(f.zero_set()) == Some(e) {
                *count.entry(f).or_default() += 1;
            }
        }
    }
    let mut terms: Vec<FactorTerm> = count
        .into_iter()
        .map(|(f, c)| {
            debug_assert!(c % 2 == 0, "odd block size at {f}");
            FactorTerm {
                covector: f,
                zeros: f.zero_set(),
                exponent: c / 2,
            }
        })
        .filter(|t| t.exponent > 0)
        .collect();
    terms.sort_by(|a, b| a.covector.cmp(&b.covector));
    Ok(terms)
}

/// `Π (1 − a(F)²)^{b_F}` as a polynomial.
pub fn expand_formula(
    terms: impl IntoIterator<Item = (ElemSet, u64)>,
    nvars: usize,
) -> Result<MultiPoly, PolyError> {
    let mut acc = MultiPoly::one(nvars);
    for (zeros, k) in terms {
        let pow = one_minus_square(nvars, zeros).pow(k as u32)?;
        acc = acc.checked_mul(&pow)?;
    }
    Ok(acc)
}

/// `Π (1 − a(F)²)^{b_F}` evaluated at `point`.
pub fn eval_formula_modp(
    terms: impl IntoIterator<Item = (ElemSet, u64)>,
    field: &PrimeField,
    point: &[u64],
) -> Result<u64, PolyError> {
    let mut acc = 1;
    for (zeros, k) in terms {
        let mut a = 1;
        for e in zeros.iter() {
            let x = *point.get(e).ok_or(PolyError::MissingCoordinate(point.len()))?;
            a = field.mul(a, x);
        }
        let base = field.sub(1, field.mul(a, a));
        acc = field.mul(acc, field.pow(base, k));
    }
    Ok(acc)
}

/// `Σ_{z(F)=A} b_F` for every zero set `A` that occurs.
pub fn aggregate_by_zero_set(terms: &[FactorTerm]) -> BTreeMap<ElemSet, u64> {
    let mut out = BTreeMap::new();
    for t in terms {
        *out.entry(t.zeros).or_default() += t.exponent;
    }
    out
}

/// `m_A = #topes(ℒ/A) · β(Mat(ℒ|_A))` for a nonempty flat `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinedTerm {
    pub zeros: ElemSet,
    pub exponent: u64,
    pub contraction_topes: u64,
    pub beta: u64,
}

/// The refined exponents over all nonempty flats with `β ≠ 0`, ordered by
/// flat.
pub fn refined_formula(m: &OrientedMatroid) -> Result<Vec<RefinedTerm>, VarchenkoError> {
    let mat = UnderlyingMatroid::new(m);
    let mut out = Vec::new();
    for (a, _) in mat.flats() {
        if a.is_empty() {
            continue;
        }
        let beta = mat.beta_restricted(a)?;
        if beta == 0 {
            continue;
        }
        let topes = m.contraction(a)?.topes().len() as u64;
        out.push(RefinedTerm {
            zeros: a,
            exponent: topes * beta,
            contraction_topes: topes,
            beta,
        });
    }
    out.sort_by_key(|t| t.zeros);
    Ok(out)
}

fn refined_map(terms: &[RefinedTerm]) -> BTreeMap<ElemSet, u64> {
    terms.iter().map(|t| (t.zeros, t.exponent)).collect()
}

/// Checks `m_A = Σ_{z(F)=A} b_F` for every nonempty flat `A`.
pub fn verify_refined_formula(
    m: &OrientedMatroid,
    order: &ElementOrder,
) -> Result<Report, VarchenkoError> {
    let mut report = Report::new("m_A = #topes(L/A) * beta(L|A) = sum of b_F over z(F) = A", "exact");
    let agg = aggregate_by_zero_set(&det_formula(m, order)?);
    let refined = refined_map(&refined_formula(m)?);
    let mut keys: Vec<ElemSet> = agg.keys().chain(refined.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    for a in keys {
        let (x, y) = (agg.get(&a).copied().unwrap_or(0), refined.get(&a).copied().unwrap_or(0));
        if x != y {
            report.fail(json!({ "zeros": a, "sum_b_F": x, "m_A": y }));
        }
    }
    Ok(report)
}

/// Compares the determinant formula of `M` with that of `_{A}M`.
pub fn verify_matroid_invariance(
    m: &OrientedMatroid,
    a: ElemSet,
    order: &ElementOrder,
) -> Result<Report, VarchenkoError> {
    let mut report = Report::new("det formula is unchanged by reorientation", "exact");
    let r = m.reorient(a)?;
    let multiset = |terms: &[FactorTerm]| {
        let mut v: Vec<(ElemSet, u64)> = terms.iter().map(|t| (t.zeros, t.exponent)).collect();
        v.sort();
        v
    };
    let (t1, t2) = (det_formula(m, order)?, det_formula(&r, order)?);
    if multiset(&t1) != multiset(&t2) {
        report.fail(json!({ "reorient": a, "original": multiset(&t1), "reoriented": multiset(&t2) }));
    }
    let (a1, a2) = (aggregate_by_zero_set(&t1), aggregate_by_zero_set(&t2));
    if a1 != a2 {
        report.fail(json!({ "reorient": a, "aggregate": "differs" }));
    }
    let (r1, r2) = (refined_formula(m)?, refined_formula(&r)?);
    if r1 != r2 || refined_map(&r1) != a1 {
        report.fail(json!({ "reorient": a, "refined": "differs" }));
    }
    Ok(report)
}
