//! Tope posets `𝒯_R`, the half posets `𝒯_{R,e}` and the covector posets
//! attached to their intervals.

use std::collections::HashMap;

use super::poset::SignPoset;
use super::TopologyError;
use crate::om::{OmError, OrientedMatroid};
use crate::sign::{ElemSet, Sign, SignVector};

/// `P ⪯_R Q` iff `Sep(R,P) ⊆ Sep(R,Q)`.
pub fn precedes(r: &SignVector, p: &SignVector, q: &SignVector) -> bool {
    r.sep(p).is_subset(r.sep(q))
}

/// The tope poset `𝒯_R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopePoset {
    pub base: SignVector,
    pub topes: SignPoset,
}

pub fn tope_poset(m: &OrientedMatroid, r: &SignVector) -> Result<TopePoset, TopologyError> {
    m.require_tope(r)?;
    Ok(TopePoset {
        base: *r,
        topes: SignPoset::new(m.topes().to_vec(), |p, q| precedes(r, p, q)),
    })
}

fn check_element(m: &OrientedMatroid, e: usize) -> Result<(), TopologyError> {
    if e >= m.num_elements() {
        return Err(OmError::NoSuchElement(e).into());
    }
    Ok(())
}

/// Checks `R, P ∈ 𝒯` and `P_e = −R_e`.
pub(crate) fn check_half(
    m: &OrientedMatroid,
    r: &SignVector,
    e: usize,
    p: &SignVector,
) -> Result<(), TopologyError> {
    check_element(m, e)?;
    m.require_tope(r)?;
    m.require_tope(p)?;
    if p.get(e) != -r.get(e) {
        return Err(TopologyError::SameSide {
            element: e,
            tope: p.to_string(),
        });
    }
    Ok(())
}

/// Topes `T` with `T_e = −R_e`, in canonical order.
pub fn half_topes(m: &OrientedMatroid, r: &SignVector, e: usize) -> Vec<SignVector> {
    let side = -r.get(e);
    m.topes().iter().filter(|t| t.get(e) == side).copied().collect()
}

/// The open interval `(0̂, P)` in `𝒯_{R,e}`.
pub fn half_interval(
    m: &OrientedMatroid,
    r: &SignVector,
    e: usize,
    p: &SignVector,
) -> Result<SignPoset, TopologyError> {
    check_half(m, r, e, p)?;
    let below: Vec<SignVector> = half_topes(m, r, e)
        .into_iter()
        .filter(|q| q != p && precedes(r, q, p))
        .collect();
    Ok(SignPoset::new(below, |a, b| precedes(r, a, b)))
}

/// `μ(0̂, P)` in `𝒯_{R,e}`, i.e. the Möbius number of `(0̂, P)_{R,e}`.
pub fn mobius_half(
    m: &OrientedMatroid,
    r: &SignVector,
    e: usize,
    p: &SignVector,
) -> Result<i64, TopologyError> {
    Ok(half_interval(m, r, e, p)?.mobius_number())
}

/// `μ(0̂, Q)` in `𝒯_{R,e}` for every `Q` with `Q_e = −R_e`, in one pass.
pub fn half_mobius_all(
    m: &OrientedMatroid,
    r: &SignVector,
    e: usize,
) -> Result<HashMap<SignVector, i64>, TopologyError> {
    check_element(m, e)?;
    m.require_tope(r)?;
    Ok(half_mobius_unchecked(m, r, e))
}

pub(crate) fn half_mobius_unchecked(
    m: &OrientedMatroid,
    r: &SignVector,
    e: usize,
) -> HashMap<SignVector, i64> {
    let mut topes = half_topes(m, r, e);
    topes.sort_by_key(|q| (r.sep(q).len(), *q));
    let seps: Vec<ElemSet> = topes.iter().map(|q| r.sep(q)).collect();
    let mut mu = vec![0i64; topes.len()];
    for i in 0..topes.len() {
        let below: i64 = (0..i)
            .filter(|&j| seps[j].is_subset(seps[i]))
            .map(|j| mu[j])
            .sum();
        mu[i] = -1 - below;
    }
    topes.into_iter().zip(mu).collect()
}

/// Sign-wise meet: the common signs of `a` and `b`, zero where they differ.
pub(crate) fn meet(a: &SignVector, b: &SignVector) -> SignVector {
    let mut x = *a;
    for f in a.sep(b).iter() {
        x.set(f, Sign::Zero);
    }
    for f in a.support().difference(b.support()).iter() {
        x.set(f, Sign::Zero);
    }
    x
}

/// The covector `X` with `[Q, P]_R = star(X)`, if one exists.
///
/// Such an `X` satisfies `X ∘ R = Q` and `X ∘ (−R) = P`, so it must be the
/// sign-wise meet of `Q` and `P`.
pub fn interval_star(
    m: &OrientedMatroid,
    r: &SignVector,
    q: &SignVector,
    p: &SignVector,
) -> Option<SignVector> {
    if !precedes(r, q, p) {
        return None;
    }
    let x = meet(q, p);
    if !m.contains(&x) {
        return None;
    }
    let interval: Vec<SignVector> = m
        .topes()
        .iter()
        .filter(|t| precedes(r, q, t) && precedes(r, t, p))
        .copied()
        .collect();
    (interval == m.star_unchecked(&x)).then_some(x)
}

/// `(0̂, P)^△_{R,e}`: the `Q` in `(0̂, P)_{R,e}` with `[Q, P]_R` a star.
pub fn triangle_subposet(
    m: &OrientedMatroid,
    r: &SignVector,
    e: usize,
    p: &SignVector,
) -> Result<SignPoset, TopologyError> {
    let full = half_interval(m, r, e, p)?;
    let keep: Vec<SignVector> = full
        .elements
        .into_iter()
        .filter(|q| interval_star(m, r, q, p).is_some())
        .collect();
    Ok(SignPoset::new(keep, |a, b| precedes(r, a, b)))
}

/// `α_P(C)`: the covector whose star is `[C, P]_R`.
pub fn alpha_map(
    m: &OrientedMatroid,
    r: &SignVector,
    e: usize,
    p: &SignVector,
    c: &SignVector,
) -> Result<SignVector, TopologyError> {
    check_half(m, r, e, p)?;
    m.require_tope(c)?;
    if c == p || c.get(e) != p.get(e) || !precedes(r, c, p) {
        return Err(TopologyError::NotInTriangle(c.to_string()));
    }
    interval_star(m, r, c, p).ok_or_else(|| TopologyError::NotInTriangle(c.to_string()))
}

/// `(𝟎, P)_ℒ`: the nonzero covectors strictly below `P`.
pub fn open_lower_interval(m: &OrientedMatroid, p: &SignVector) -> Vec<SignVector> {
    m.covectors()
        .iter()
        .filter(|x| !x.is_zero() && x != &p && x.conforms_to(p))
        .copied()
        .collect()
}

/// `F_R(P) = {X ∈ (𝟎, P)_ℒ : z(X) ⊆ Sep(P, R)}`.
pub fn f_r_filter(
    m: &OrientedMatroid,
    r: &SignVector,
    p: &SignVector,
) -> Result<SignPoset, TopologyError> {
    m.require_tope(r)?;
    m.require_tope(p)?;
    let sep = p.sep(r);
    Ok(SignPoset::covectors(
        open_lower_interval(m, p)
            .into_iter()
            .filter(|x| x.zero_set().is_subset(sep))
            .collect(),
    ))
}

/// `W_{R,e}(P)`: covectors `F ∈ (𝟎, P)_ℒ` with `F_e = −R_e`, no zeros
/// outside `Sep(P,R)`, and `F ≤ P` on `Sep(P,R) ∖ {e}`.
pub fn w_set(
    m: &OrientedMatroid,
    r: &SignVector,
    e: usize,
    p: &SignVector,
) -> Result<SignPoset, TopologyError> {
    check_half(m, r, e, p)?;
    let mut allowed = p.sep(r);
    allowed.remove(e);
    Ok(SignPoset::covectors(
        open_lower_interval(m, p)
            .into_iter()
            .filter(|x| x.zero_set().is_subset(allowed))
            .collect(),
    ))
}
