//! Oriented matroids given by their covector sets, and their minors.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::sign::{ElemSet, SignError, SignVector, MAX_ELEMENTS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OmError {
    #[error(transparent)]
    Sign(#[from] SignError),
    #[error("covector {vector} has length {len}, expected {expected}")]
    LengthMismatch {
        vector: String,
        len: usize,
        expected: usize,
    },
    #[error("element {0} is a loop (zero in every covector)")]
    Loop(usize),
    #[error("the all-zero covector is missing")]
    MissingZero,
    #[error("ground set labels must be unique and match the ground set size")]
    BadLabels,
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("element {0} is not in the ground set")]
    NoSuchElement(usize),
    #[error("cannot delete from a ground set with fewer than two elements")]
    SingletonDeletion,
    #[error("{0} is not a covector")]
    NotACovector(String),
    #[error("{0} is not a tope")]
    NotATope(String),
    #[error("arrangement error: {0}")]
    Arrangement(String),
}

/// The ground set `E = {e₀ ≺ … ≺ e_{n−1}}`, ordered by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self, OmError> {
        if size > MAX_ELEMENTS {
            return Err(SignError::TooLarge(size).into());
        }
        Ok(GroundSet { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self, OmError> {
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(OmError::BadLabels);
        }
        let mut g = GroundSet::new(labels.len())?;
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, e: usize) -> String {
        match &self.labels {
            Some(l) => l[e].clone(),
            None => e.to_string(),
        }
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.size)
    }

    fn restrict(&self, a: ElemSet) -> GroundSet {
        GroundSet {
            size: a.len(),
            labels: self
                .labels
                .as_ref()
                .map(|l| a.iter().map(|e| l[e].clone()).collect()),
        }
    }
}

/// An oriented matroid given as a canonically sorted set of covectors.
///
/// Construction validates the cheap invariants (zero vector, lengths, no
/// loops) and caches ranks and topes; the covector axioms themselves are
/// checked by [`OrientedMatroid::check_axioms`].
#[derive(Debug, Clone)]
pub struct OrientedMatroid {
    ground: GroundSet,
    covectors: Vec<SignVector>,
    index: HashMap<SignVector, usize>,
    /// Rank of each covector in the graded covector poset.
    covector_rank: Vec<usize>,
    rank: usize,
    topes: Vec<SignVector>,
    tope_index: HashMap<SignVector, usize>,
}

impl PartialEq for OrientedMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground.size == other.ground.size && self.covectors == other.covectors
    }
}

impl Eq for OrientedMatroid {}

impl OrientedMatroid {
    pub fn from_covectors(
        ground: GroundSet,
        vectors: impl IntoIterator<Item = SignVector>,
    ) -> Result<Self, OmError> {
        let n = ground.size();
        let mut covectors: Vec<SignVector> = Vec::new();
        for v in vectors {
            if v.len() != n {
                return Err(OmError::LengthMismatch {
                    vector: v.to_string(),
                    len: v.len(),
                    expected: n,
                });
            }
            covectors.push(v);
        }
        covectors.sort();
        covectors.dedup();
        if !covectors.first().is_some_and(|x| x.is_zero()) {
            return Err(OmError::MissingZero);
        }
        let support = covectors
            .iter()
            .fold(ElemSet::EMPTY, |acc, x| acc.union(x.support()));
        if let Some(e) = ground.all().difference(support).iter().next() {
            return Err(OmError::Loop(e));
        }
        Ok(Self::assemble(ground, covectors))
    }

    /// Builds the cached data for an already sorted, deduplicated set.
    fn assemble(ground: GroundSet, covectors: Vec<SignVector>) -> Self {
        let index: HashMap<SignVector, usize> =
            covectors.iter().enumerate().map(|(i, x)| (*x, i)).collect();

        // Strictly smaller covectors have strictly smaller support, so
        // processing by support size visits every lower covector first.
        let mut by_support: Vec<usize> = (0..covectors.len()).collect();
        by_support.sort_by_key(|&i| covectors[i].support().len());
        let mut covector_rank = vec![0usize; covectors.len()];
        for (pos, &i) in by_support.iter().enumerate() {
            let x = covectors[i];
            let r = by_support[..pos]
                .iter()
                .filter(|&&j| covectors[j] != x && covectors[j].conforms_to(&x))
                .map(|&j| covector_rank[j] + 1)
                .max()
                .unwrap_or(0);
            covector_rank[i] = r;
        }
        let rank = covector_rank.iter().copied().max().unwrap_or(0);

        let topes: Vec<SignVector> = covectors
            .iter()
            .filter(|x| {
                !covectors
                    .iter()
                    .any(|y| y != *x && x.conforms_to(y))
            })
            .copied()
            .collect();
        let tope_index = topes.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        OrientedMatroid {
            ground,
            covectors,
            index,
            covector_rank,
            rank,
            topes,
            tope_index,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn num_elements(&self) -> usize {
        self.ground.size()
    }

    pub fn covectors(&self) -> &[SignVector] {
        &self.covectors
    }

    pub fn topes(&self) -> &[SignVector] {
        &self.topes
    }

    /// Length of a maximal chain from `0` to a tope.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, x: &SignVector) -> bool {
        self.index.contains_key(x)
    }

    pub fn covector_index(&self, x: &SignVector) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn tope_index(&self, t: &SignVector) -> Option<usize> {
        self.tope_index.get(t).copied()
    }

    pub fn is_tope(&self, t: &SignVector) -> bool {
        self.tope_index.contains_key(t)
    }

    /// Rank of a covector in the graded covector poset.
    pub fn covector_rank(&self, x: &SignVector) -> Result<usize, OmError> {
        self.covector_index(x)
            .map(|i| self.covector_rank[i])
            .ok_or_else(|| OmError::NotACovector(x.to_string()))
    }

    pub(crate) fn require_tope(&self, t: &SignVector) -> Result<(), OmError> {
        if self.is_tope(t) {
            Ok(())
        } else {
            Err(OmError::NotATope(t.to_string()))
        }
    }

    fn check_subset(&self, a: ElemSet) -> Result<(), OmError> {
        match a.difference(self.ground.all()).iter().next() {
            Some(e) => Err(OmError::NoSuchElement(e)),
            None => Ok(()),
        }
    }

    /// Brute-force validation of the covector axioms.
    pub fn check_axioms(&self) -> AxiomReport {
        let set = &self.index;
        let mut report = AxiomReport::default();

        if !self.covectors.iter().any(|x| x.is_zero()) {
            report.zero_vector = Some("the zero vector is missing".into());
        }
        report.symmetry = self
            .covectors
            .iter()
            .find(|x| !set.contains_key(&-**x))
            .map(|x| format!("-{x} is missing"));
        'comp: for x in &self.covectors {
            for y in &self.covectors {
                let z = x.compose_unchecked(y);
                if !set.contains_key(&z) {
                    report.composition = Some(format!("{x} o {y} = {z} is missing"));
                    break 'comp;
                }
            }
        }
        'elim: for (i, x) in self.covectors.iter().enumerate() {
            for y in &self.covectors[i + 1..] {
                let sep = x.sep(y);
                if sep.is_empty() {
                    continue;
                }
                let xy = x.compose_unchecked(y);
                let keep = ElemSet::full(x.len()).difference(sep);
                for e in sep.iter() {
                    let found = self.covectors.iter().any(|z| {
                        !z.support().contains(e)
                            && z.restrict_eq(&xy, keep)
                    });
                    if !found {
                        report.elimination =
                            Some(format!("no elimination of {x} and {y} at element {e}"));
                        break 'elim;
                    }
                }
            }
        }
        report
    }

    /// `ℒ|_A`
    pub fn restriction(&self, a: ElemSet) -> Result<OrientedMatroid, OmError> {
        if a.is_empty() {
            return Err(OmError::EmptySubset);
        }
        self.check_subset(a)?;
        let ground = self.ground.restrict(a);
        let vectors: Vec<SignVector> = self.covectors.iter().map(|x| x.restrict(a)).collect();
        OrientedMatroid::from_covectors(ground, vectors)
    }

    /// `ℒ/A = {F|_{E∖A} : F ∈ ℒ, A ⊆ z(F)}`.
    ///
    /// Fails with [`OmError::Loop`] when `A` is not closed in the underlying
    /// matroid, since the contraction would then have loops.
    pub fn contraction(&self, a: ElemSet) -> Result<OrientedMatroid, OmError> {
        self.check_subset(a)?;
        let rest = self.ground.all().difference(a);
        let ground = self.ground.restrict(rest);
        let vectors: Vec<SignVector> = self
            .covectors
            .iter()
            .filter(|x| a.is_subset(x.zero_set()))
            .map(|x| x.restrict(rest))
            .collect();
        OrientedMatroid::from_covectors(ground, vectors).map_err(|err| match err {
            OmError::Loop(i) => OmError::Loop(rest.to_vec()[i]),
            other => other,
        })
    }

    /// `ℒ ∖ f`, the restriction to `E ∖ {f}`.
    pub fn deletion(&self, f: usize) -> Result<OrientedMatroid, OmError> {
        if f >= self.num_elements() {
            return Err(OmError::NoSuchElement(f));
        }
        if self.num_elements() < 2 {
            return Err(OmError::SingletonDeletion);
        }
        let mut a = self.ground.all();
        a.remove(f);
        self.restriction(a)
    }

    /// Negates every covector on `A`.
    pub fn reorient(&self, a: ElemSet) -> Result<OrientedMatroid, OmError> {
        self.check_subset(a)?;
        let mut vectors: Vec<SignVector> = self.covectors.iter().map(|x| x.reorient(a)).collect();
        vectors.sort();
        Ok(Self::assemble(self.ground.clone(), vectors))
    }

    /// `star(X) = {T ∈ 𝒯 : X ≤ T}`.
    pub fn star(&self, x: &SignVector) -> Result<Vec<SignVector>, OmError> {
        if !self.contains(x) {
            return Err(OmError::NotACovector(x.to_string()));
        }
        Ok(self.star_unchecked(x))
    }

    pub(crate) fn star_unchecked(&self, x: &SignVector) -> Vec<SignVector> {
        self.topes
            .iter()
            .filter(|t| x.conforms_to(t))
            .copied()
            .collect()
    }

    /// True iff some nonzero covector `F ≤ P` has `F_e = 0`.
    pub fn defines_proper_face(&self, e: usize, p: &SignVector) -> Result<bool, OmError> {
        self.require_tope(p)?;
        if e >= self.num_elements() {
            return Err(OmError::NoSuchElement(e));
        }
        Ok(!self.max_face_at(p, e).is_zero())
    }

    /// The largest covector `F ≤ P` with `F_e = 0`.
    ///
    /// Covectors below `P` vanishing at `e` are closed under composition,
    /// so their composition is the unique maximum.
    pub fn max_face_at(&self, p: &SignVector, e: usize) -> SignVector {
        self.covectors
            .iter()
            .filter(|f| !f.support().contains(e) && f.conforms_to(p))
            .fold(SignVector::zero(p.len()).unwrap(), |acc, f| {
                acc.compose_unchecked(f)
            })
    }

    /// Topes of the supertope pattern `(S⁺, S⁻)`, possibly empty.
    pub fn topes_matching(&self, plus: ElemSet, minus: ElemSet) -> Vec<SignVector> {
        self.topes
            .iter()
            .filter(|t| plus.is_subset(t.positive()) && minus.is_subset(t.negative()))
            .copied()
            .collect()
    }

    /// Rational-free textual form: one sign vector per line.
    pub fn to_covector_text(&self) -> String {
        let mut s = String::new();
        for x in &self.covectors {
            s.push_str(&x.to_string());
            s.push('\n');
        }
        s
    }
}

impl SignVector {
    fn restrict_eq(&self, other: &SignVector, on: ElemSet) -> bool {
        self.positive().intersection(on) == other.positive().intersection(on)
            && self.negative().intersection(on) == other.negative().intersection(on)
    }
}

/// Outcome of [`OrientedMatroid::check_axioms`]; `None` means the axiom holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub zero_vector: Option<String>,
    pub symmetry: Option<String>,
    pub composition: Option<String>,
    pub elimination: Option<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// Names of the failing axioms with their witnesses.
    pub fn failures(&self) -> Vec<(&'static str, &str)> {
        [
            ("zero_vector", &self.zero_vector),
            ("symmetry", &self.symmetry),
            ("composition", &self.composition),
            ("elimination", &self.elimination),
        ]
        .into_iter()
        .filter_map(|(name, v)| v.as_deref().map(|w| (name, w)))
        .collect()
    }
}
