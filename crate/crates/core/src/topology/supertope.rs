//! Supertopes `𝒯(S⁺, S⁻)`, their closedness and contractibility, and the
//! Möbius sums over the classes `{Q : Sep(P,Q) ∩ Sep(Q,R) = S}`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::homology::{poset_homology, HomologyGroup};
use super::poset::SignPoset;
use super::tope::{check_half, half_mobius_unchecked, precedes};
use super::TopologyError;
use crate::om::{OmError, OrientedMatroid};
use crate::sign::{ElemSet, SignVector};

/// The topes agreeing with a partial sign pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Supertope {
    pub plus: ElemSet,
    pub minus: ElemSet,
    pub topes: Vec<SignVector>,
}

fn check_pattern(m: &OrientedMatroid, plus: ElemSet, minus: ElemSet) -> Result<(), TopologyError> {
    if let Some(e) = plus.union(minus).difference(m.ground().all()).iter().next() {
        return Err(OmError::NoSuchElement(e).into());
    }
    let overlap = plus.intersection(minus);
    if !overlap.is_empty() {
        return Err(TopologyError::OverlappingPattern(overlap));
    }
    Ok(())
}

pub fn supertope(
    m: &OrientedMatroid,
    plus: ElemSet,
    minus: ElemSet,
) -> Result<Supertope, TopologyError> {
    check_pattern(m, plus, minus)?;
    if plus.union(minus).is_empty() {
        return Err(TopologyError::EmptyPattern);
    }
    let topes = m.topes_matching(plus, minus);
    if topes.is_empty() {
        return Err(TopologyError::EmptySupertope);
    }
    Ok(Supertope { plus, minus, topes })
}

/// True iff every strict extension of the pattern loses topes.
///
/// Topes have full support, so this holds iff the supertope meets both
/// sides of every element outside the pattern.
pub fn is_closed_supertope(
    m: &OrientedMatroid,
    plus: ElemSet,
    minus: ElemSet,
) -> Result<bool, TopologyError> {
    let st = supertope(m, plus, minus)?;
    let free = m.ground().all().difference(plus.union(minus));
    Ok(free.iter().all(|f| {
        st.topes.iter().any(|t| t.positive().contains(f))
            && st.topes.iter().any(|t| t.negative().contains(f))
    }))
}

/// The supertope as a subposet of `𝒯_R`.
pub fn supertope_poset(
    m: &OrientedMatroid,
    r: &SignVector,
    plus: ElemSet,
    minus: ElemSet,
) -> Result<SignPoset, TopologyError> {
    m.require_tope(r)?;
    let st = supertope(m, plus, minus)?;
    Ok(SignPoset::new(st.topes, |p, q| precedes(r, p, q)))
}

/// Reduced homology of the supertope's order complex inside `𝒯_R`.
pub fn supertope_homology(
    m: &OrientedMatroid,
    r: &SignVector,
    plus: ElemSet,
    minus: ElemSet,
    limit: usize,
) -> Result<Vec<HomologyGroup>, TopologyError> {
    poset_homology(&supertope_poset(m, r, plus, minus)?.poset, limit)
}

/// The three possible outcomes of the extremal-tope search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vector", rename_all = "snake_case")]
pub enum Witness {
    MaxTope(SignVector),
    MinTope(SignVector),
    Covector(SignVector),
}

/// Given `E = S⁺ ⊔ S⁻ ⊔ S*` with every `T^f` present, finds a tope that
/// is `−` on all of `S*`, a tope that is `+` on all of `S*`, or a covector
/// vanishing on a nonempty part of `S*` and `−` on the rest of it.
pub fn trichotomy_witness(
    m: &OrientedMatroid,
    plus: ElemSet,
    minus: ElemSet,
    star: ElemSet,
) -> Result<Witness, TopologyError> {
    check_pattern(m, plus, minus)?;
    let all = m.ground().all();
    if plus.is_empty()
        || minus.is_empty()
        || star.is_empty()
        || !star.intersection(plus.union(minus)).is_empty()
        || plus.union(minus).union(star) != all
    {
        return Err(TopologyError::InvalidPartition);
    }
    for f in star.iter() {
        let mut m_minus = minus.union(star);
        m_minus.remove(f);
        let mut m_plus = plus;
        m_plus.insert(f);
        if m.topes_matching(m_plus, m_minus).is_empty() {
            return Err(TopologyError::MissingTope(f));
        }
    }
    if let Some(t) = m.topes_matching(plus, minus.union(star)).first() {
        return Ok(Witness::MaxTope(*t));
    }
    if let Some(t) = m.topes_matching(plus.union(star), minus).first() {
        return Ok(Witness::MinTope(*t));
    }
    m.covectors()
        .iter()
        .find(|y| {
            y.positive() == plus
                && y.negative().intersection(plus.union(minus)) == minus
                && y.negative().union(y.zero_set()) == minus.union(star)
                && !y.zero_set().is_empty()
        })
        .map(|y| Witness::Covector(*y))
        .ok_or(TopologyError::NoWitness)
}

fn expand(set: ElemSet, f: usize) -> ElemSet {
    let low = set.0 & ((1u64 << f) - 1);
    let high = (set.0 >> f) << (f + 1);
    ElemSet(low | high)
}

fn compress(set: ElemSet, f: usize) -> ElemSet {
    let low = set.0 & ((1u64 << f) - 1);
    let high = (set.0 >> (f + 1)) << f;
    ElemSet(low | high)
}

/// Checks `(π^f)⁻¹(𝒯^f_{⪯Q}) = 𝒯(Q⁺, S⁻)` for every `Q` in the deleted
/// supertope, after reorienting so that the base tope `R` is all plus.
pub fn fiber_check(
    m: &OrientedMatroid,
    r: &SignVector,
    plus: ElemSet,
    minus: ElemSet,
    f: usize,
) -> Result<bool, TopologyError> {
    m.require_tope(r)?;
    check_pattern(m, plus, minus)?;
    if f >= m.num_elements() {
        return Err(OmError::NoSuchElement(f).into());
    }
    if plus.union(minus).contains(f) {
        return Err(TopologyError::ElementInPattern(f));
    }
    if m.num_elements() < 2 {
        return Err(OmError::SingletonDeletion.into());
    }
    let flip = r.negative();
    let mm = m.reorient(flip)?;
    let sp = plus.difference(flip).union(minus.intersection(flip));
    let sm = minus.difference(flip).union(plus.intersection(flip));

    let keep = mm.ground().all().difference(ElemSet::singleton(f));
    let domain = mm.topes_matching(sp, sm);
    let deleted = mm.deletion(f)?;
    let (dp, dm) = (compress(sp, f), compress(sm, f));
    for q in deleted.topes_matching(dp, dm) {
        // base R∖f is all plus, so Q' ⪯ Q iff Q'⁻ ⊆ Q⁻
        let fiber: Vec<SignVector> = domain
            .iter()
            .filter(|t| t.restrict(keep).negative().is_subset(q.negative()))
            .copied()
            .collect();
        let expected = mm.topes_matching(expand(q.positive(), f), sm);
        if fiber != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ μ((0̂,Q)_{R,e})` over `Q` with `Q_e = −R_e`, grouped by
/// `S = Sep(P,Q) ∩ Sep(Q,R)`.
pub fn crucial_sums(
    m: &OrientedMatroid,
    r: &SignVector,
    e: usize,
    p: &SignVector,
) -> Result<BTreeMap<ElemSet, i64>, TopologyError> {
    check_half(m, r, e, p)?;
    let mut sums = BTreeMap::new();
    for (q, mu) in half_mobius_unchecked(m, r, e) {
        let s = p.sep(&q).intersection(q.sep(r));
        *sums.entry(s).or_insert(0) += mu;
    }
    Ok(sums)
}

pub fn crucial_sum(
    m: &OrientedMatroid,
    r: &SignVector,
    e: usize,
    p: &SignVector,
    s: ElemSet,
) -> Result<i64, TopologyError> {
    if s.contains(e) {
        return Err(TopologyError::ElementInPattern(e));
    }
    if let Some(x) = s.difference(m.ground().all()).iter().next() {
        return Err(OmError::NoSuchElement(x).into());
    }
    Ok(crucial_sums(m, r, e, p)?.get(&s).copied().unwrap_or(0))
}

/// `{Q : Q_e = −R_e, Sep(P,Q) ∩ Sep(Q,R) = S}` as a subposet of `𝒯_R`.
pub fn crucial_class(
    m: &OrientedMatroid,
    r: &SignVector,
    e: usize,
    p: &SignVector,
    s: ElemSet,
) -> Result<SignPoset, TopologyError> {
    check_half(m, r, e, p)?;
    let side = -r.get(e);
    let members: Vec<SignVector> = m
        .topes()
        .iter()
        .filter(|q| q.get(e) == side && p.sep(q).intersection(q.sep(r)) == s)
        .copied()
        .collect();
    Ok(SignPoset::new(members, |a, b| precedes(r, a, b)))
}
