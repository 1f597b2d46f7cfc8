//! Sparse multivariate polynomials in `U_0, …, U_{n−1}` with big-integer
//! coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::PrimeField;
use super::PolyError;
use crate::sign::ElemSet;

/// Exponent vector, one 8-bit exponent per variable.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `U_0`, `U_1`, … with the larger exponent of the earlier variable
/// ranking lower, so that `1 < U0 < U1 < U0^2 < U0*U1 < U1^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .map(|(v, (a, b))| a.checked_add(*b).ok_or(PolyError::ExponentOverflow(v)))
            .collect::<Result<Vec<u8>, _>>()
            .map(Monomial)
    }

    fn divide(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u8>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The variable `U_v`.
    pub fn var(nvars: usize, v: usize) -> Self {
        let mut exps = vec![0u8; nvars];
        exps[v] = 1;
        Self::monomial(nvars, exps, 1)
    }

    pub fn monomial(nvars: usize, exponents: Vec<u8>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exponents.len(), nvars);
        let mut p = Self::zero(nvars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Monomial(exponents), c);
        }
        p
    }

    /// `Π_{e ∈ A} U_e^power`.
    pub fn set_monomial(nvars: usize, a: ElemSet, power: u8) -> Self {
        let mut exps = vec![0u8; nvars];
        for e in a.iter() {
            exps[e] = power;
        }
        Self::monomial(nvars, exps, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: usize) -> Option<u8> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    fn check_universe(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            Err(PolyError::UniverseMismatch(self.nvars, other.nvars))
        } else {
            Ok(())
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_universe(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.checked_mul(mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<MultiPoly, PolyError> {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Sets `U_v = 0`: drops every term with a positive exponent at `v`.
    pub fn substitute_zero(&self, v: usize) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[v] == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at `point` (one residue per variable) modulo `field.p`.
    pub fn eval_modp(&self, field: &PrimeField, point: &[u64]) -> Result<u64, PolyError> {
        if point.len() < self.nvars {
            return Err(PolyError::MissingCoordinate(point.len()));
        }
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut term = field.from_bigint(c);
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = field.mul(term, field.pow(point[v], e as u64));
                }
            }
            acc = field.add(acc, term);
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<Option<MultiPoly>, PolyError> {
        self.check_universe(divisor)?;
        let (lead_m, lead_c) = divisor
            .terms
            .iter()
            .next_back()
            .ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            let Some(qm) = m.divide(lead_m) else {
                return Ok(None);
            };
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Ok(None);
            }
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.checked_mul(&qm)?, -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text such as `1 - U0^2*U1^2`, terms in increasing order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("U{v}")
                    } else {
                        format!("U{v}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl MultiPoly {
    /// Parses the canonical text form over `nvars` variables.
    pub fn parse(text: &str, nvars: usize) -> Result<MultiPoly, PolyError> {
        let bad = || PolyError::Parse(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = MultiPoly::zero(nvars);
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                chunks.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                negative = ch == '-';
            } else if ch == '+' || ch == '-' {
                return Err(bad());
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad());
        }
        chunks.push((negative, cur));
        for (negative, chunk) in chunks {
            let mut coeff = BigInt::one();
            let mut exps = vec![0u8; nvars];
            for factor in chunk.split('*') {
                if let Some(var) = factor.strip_prefix('U') {
                    let (v, e) = match var.split_once('^') {
                        Some((v, e)) => (v, e.parse::<u8>().map_err(|_| bad())?),
                        None => (var, 1),
                    };
                    let v: usize = v.parse().map_err(|_| bad())?;
                    if v >= nvars {
                        return Err(PolyError::UniverseMismatch(v + 1, nvars));
                    }
                    exps[v] = exps[v].checked_add(e).ok_or(PolyError::ExponentOverflow(v))?;
                } else {
                    coeff *= BigInt::from_str(factor).map_err(|_| bad())?;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Monomial(exps), coeff);
        }
        Ok(out)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
