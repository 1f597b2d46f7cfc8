//! Signs, sign vectors and element sets.
//!
//! A [`SignVector`] stores its entries as two bit-planes (`plus`, `minus`),
//! so every entry costs two bits and separators, compositions and the
//! product order reduce to a handful of word operations. Ground sets are
//! limited to [`MAX_ELEMENTS`] elements.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignError {
    #[error("sign vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("ground set of size {0} exceeds the supported maximum of {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("invalid sign character {0:?}")]
    BadChar(char),
    #[error("element {0} out of range for a ground set of size {1}")]
    OutOfRange(usize, usize),
}

/// One entry of a sign vector. The derived order is the canonical
/// `0 < + < −` used for sorting covectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Zero,
    Plus,
    Minus,
}

impl Sign {
    pub fn to_char(self) -> char {
        match self {
            Sign::Zero => '0',
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Result<Self, SignError> {
        match c {
            '0' => Ok(Sign::Zero),
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            other => Err(SignError::BadChar(other)),
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Zero => Sign::Zero,
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A subset of the ground set `{0, …, n−1}` as a bit mask.
///
/// Ordered by the bit pattern; serializes as the sorted element list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElemSet(pub u64);

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    /// The full ground set of size `n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        ElemSet(1u64 << e)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        ElemSet(elems.into_iter().fold(0u64, |acc, e| acc | (1u64 << e)))
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1u64 << e;
    }

    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1u64 << e);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, starting with the empty set.
    pub fn subsets(self) -> impl Iterator<Item = ElemSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(ElemSet(cur))
        })
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// An element of `{+, −, 0}^E`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: u8,
    plus: u64,
    minus: u64,
}

impl SignVector {
    pub fn zero(len: usize) -> Result<Self, SignError> {
        if len > MAX_ELEMENTS {
            return Err(SignError::TooLarge(len));
        }
        Ok(SignVector {
            len: len as u8,
            plus: 0,
            minus: 0,
        })
    }

    pub fn from_signs(signs: &[Sign]) -> Result<Self, SignError> {
        let mut v = Self::zero(signs.len())?;
        for (e, s) in signs.iter().enumerate() {
            v.set(e, *s);
        }
        Ok(v)
    }

    /// Builds a sign vector from its positive and negative parts.
    pub fn from_parts(len: usize, plus: ElemSet, minus: ElemSet) -> Result<Self, SignError> {
        let full = ElemSet::full(len);
        if len > MAX_ELEMENTS {
            return Err(SignError::TooLarge(len));
        }
        if let Some(e) = plus.union(minus).difference(full).iter().next() {
            return Err(SignError::OutOfRange(e, len));
        }
        assert!(plus.intersection(minus).is_empty(), "positive and negative parts overlap");
        Ok(SignVector {
            len: len as u8,
            plus: plus.0,
            minus: minus.0,
        })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, e: usize) -> Sign {
        debug_assert!(e < self.len());
        if self.plus >> e & 1 == 1 {
            Sign::Plus
        } else if self.minus >> e & 1 == 1 {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, e: usize, s: Sign) {
        debug_assert!(e < self.len());
        let bit = 1u64 << e;
        self.plus &= !bit;
        self.minus &= !bit;
        match s {
            Sign::Plus => self.plus |= bit,
            Sign::Minus => self.minus |= bit,
            Sign::Zero => {}
        }
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len()).map(move |e| self.get(e))
    }

    /// `X⁺`
    pub fn positive(&self) -> ElemSet {
        ElemSet(self.plus)
    }

    /// `X⁻`
    pub fn negative(&self) -> ElemSet {
        ElemSet(self.minus)
    }

    pub fn support(&self) -> ElemSet {
        ElemSet(self.plus | self.minus)
    }

    /// `z(X)`
    pub fn zero_set(&self) -> ElemSet {
        ElemSet::full(self.len()).difference(self.support())
    }

    pub fn is_zero(&self) -> bool {
        self.plus | self.minus == 0
    }

    fn check_len(&self, other: &SignVector) -> Result<(), SignError> {
        if self.len != other.len {
            Err(SignError::LengthMismatch(self.len(), other.len()))
        } else {
            Ok(())
        }
    }

    /// `X ∘ Y`: the entry of `X` where it is nonzero, otherwise that of `Y`.
    pub fn compose(&self, other: &SignVector) -> Result<SignVector, SignError> {
        self.check_len(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &SignVector) -> SignVector {
        let supp = self.plus | self.minus;
        SignVector {
            len: self.len,
            plus: self.plus | (other.plus & !supp),
            minus: self.minus | (other.minus & !supp),
        }
    }

    /// `Sep(X, Y) = {e : X_e = −Y_e ≠ 0}`.
    pub fn separator(&self, other: &SignVector) -> Result<ElemSet, SignError> {
        self.check_len(other)?;
        Ok(self.sep(other))
    }

    pub(crate) fn sep(&self, other: &SignVector) -> ElemSet {
        ElemSet((self.plus & other.minus) | (self.minus & other.plus))
    }

    /// Product order with `0 < +` and `0 < −`.
    pub fn conforms_to(&self, other: &SignVector) -> bool {
        self.len == other.len && self.plus & !other.plus == 0 && self.minus & !other.minus == 0
    }

    /// Restriction `X|_A`, re-indexed to `0..|A|` in increasing order.
    pub fn restrict(&self, a: ElemSet) -> SignVector {
        let mut out = SignVector {
            len: a.len() as u8,
            plus: 0,
            minus: 0,
        };
        for (i, e) in a.iter().enumerate() {
            out.set(i, self.get(e));
        }
        out
    }

    /// Negates the entries indexed by `a`.
    pub fn reorient(&self, a: ElemSet) -> SignVector {
        let flip = a.0;
        SignVector {
            len: self.len,
            plus: (self.plus & !flip) | (self.minus & flip),
            minus: (self.minus & !flip) | (self.plus & flip),
        }
    }
}

impl Neg for SignVector {
    type Output = SignVector;

    fn neg(self) -> SignVector {
        SignVector {
            len: self.len,
            plus: self.minus,
            minus: self.plus,
        }
    }
}

impl Ord for SignVector {
    /// Lexicographic on entries with `0 < + < −`; shorter vectors first.
    fn cmp(&self, other: &Self) -> Ordering {
        if self.len != other.len {
            return self.len.cmp(&other.len);
        }
        let diff = (self.plus ^ other.plus) | (self.minus ^ other.minus);
        if diff == 0 {
            return Ordering::Equal;
        }
        let e = diff.trailing_zeros() as usize;
        self.get(e).cmp(&other.get(e))
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.signs() {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = SignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let signs = s
            .chars()
            .map(Sign::from_char)
            .collect::<Result<Vec<_>, _>>()?;
        SignVector::from_signs(&signs)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn compose_follows_first_nonzero_entry() {
        assert_eq!(sv("0+-").compose(&sv("--+")).unwrap(), sv("-+-"));
        let x = sv("+0-0");
        assert_eq!(x.compose(&x).unwrap(), x);
        assert_eq!(sv("000").compose(&sv("+-0")).unwrap(), sv("+-0"));
    }

    #[test]
    fn compose_rejects_length_mismatch() {
        assert_eq!(
            sv("+").compose(&sv("++")),
            Err(SignError::LengthMismatch(1, 2))
        );
        assert!(sv("+").separator(&sv("++")).is_err());
    }

    #[test]
    fn separator_cases() {
        assert_eq!(sv("++").separator(&sv("+-")).unwrap(), ElemSet::singleton(1));
        let p = sv("+-+");
        assert_eq!(p.separator(&p).unwrap(), ElemSet::EMPTY);
        assert_eq!(p.separator(&-p).unwrap(), ElemSet::full(3));
        assert_eq!(sv("+0-").separator(&sv("-+0")).unwrap(), ElemSet::singleton(0));
    }

    #[test]
    fn canonical_order_is_zero_plus_minus() {
        let mut v = vec![sv("-0"), sv("+-"), sv("00"), sv("0+"), sv("++")];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, vec!["00", "0+", "++", "+-", "-0"]);
    }

    #[test]
    fn negation_is_an_involution_fixing_zero() {
        assert_eq!(-Sign::Zero, Sign::Zero);
        assert_eq!(-(-Sign::Plus), Sign::Plus);
        let x = sv("+-0");
        assert_eq!(-x, sv("-+0"));
        assert_eq!(-(-x), x);
    }

    #[test]
    fn restrict_and_reorient() {
        let x = sv("+-0+");
        assert_eq!(x.restrict(ElemSet::from_elems([1, 3])), sv("-+"));
        assert_eq!(x.reorient(ElemSet::from_elems([0, 2])), sv("--0+"));
        assert_eq!(x.zero_set(), ElemSet::singleton(2));
        assert_eq!(x.positive(), ElemSet::from_elems([0, 3]));
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let a = ElemSet::from_elems([1, 4, 5]);
        let subs: Vec<ElemSet> = a.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(a)));
        assert_eq!(ElemSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn bad_char_is_rejected() {
        assert_eq!("+x".parse::<SignVector>(), Err(SignError::BadChar('x')));
    }
}
