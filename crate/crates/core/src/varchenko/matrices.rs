//! `𝔙`, `M^e`, `𝓜^e` and the factorization `𝔙 = 𝓜^{e₁}⋯𝓜^{e_r}`.

use std::collections::HashMap;

use rand::Rng;
use serde_json::json;

use super::{ElementOrder, Report, VarchenkoError, VerifyConfig};
use crate::om::{OmError, OrientedMatroid};
use crate::poly::{MultiPoly, PolyError, PolyMatrix, PrimeField};
use crate::sign::{ElemSet, Sign, SignVector};
use crate::topology::half_mobius_unchecked;

/// `𝔙` together with the tope order labelling its rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarchenkoMatrix {
    pub matrix: PolyMatrix,
    pub tope_order: Vec<SignVector>,
}

pub(crate) fn labels(topes: &[SignVector]) -> Vec<String> {
    topes.iter().map(SignVector::to_string).collect()
}

pub(crate) fn labelled(
    m: PolyMatrix,
    rows: &[SignVector],
    cols: &[SignVector],
) -> Result<PolyMatrix, VarchenkoError> {
    Ok(m.with_labels(labels(rows), labels(cols))?)
}

/// `c · Π_{e∈s} U_e`.
pub(crate) fn scaled_monomial(nvars: usize, s: ElemSet, c: i64) -> MultiPoly {
    let mut exps = vec![0u8; nvars];
    for e in s.iter() {
        exps[e] = 1;
    }
    MultiPoly::monomial(nvars, exps, c)
}

fn check_tope_order(m: &OrientedMatroid, topes: &[SignVector]) -> Result<(), VarchenkoError> {
    let mut sorted = topes.to_vec();
    sorted.sort();
    if sorted != m.topes() {
        return Err(VarchenkoError::BadTopeOrder);
    }
    Ok(())
}

fn check_element(m: &OrientedMatroid, e: usize) -> Result<(), VarchenkoError> {
    if e >= m.num_elements() {
        return Err(OmError::NoSuchElement(e).into());
    }
    Ok(())
}

/// `𝔙` with rows and columns in the given order of all topes.
pub fn build_varchenko(
    m: &OrientedMatroid,
    topes: &[SignVector],
) -> Result<VarchenkoMatrix, VarchenkoError> {
    check_tope_order(m, topes)?;
    let n = m.num_elements();
    let matrix = PolyMatrix::from_fn(topes.len(), topes.len(), |i, j| {
        MultiPoly::set_monomial(n, topes[i].sep(&topes[j]), 1)
    });
    Ok(VarchenkoMatrix {
        matrix: labelled(matrix, topes, topes)?,
        tope_order: topes.to_vec(),
    })
}

/// `𝔙` in canonical tope order.
pub fn varchenko(m: &OrientedMatroid) -> VarchenkoMatrix {
    build_varchenko(m, m.topes()).expect("canonical order is a tope order")
}

/// `μ_{R,e}(0̂, Q)` for every tope `R` and every `Q` with `Q_e = −R_e`.
#[derive(Debug, Clone)]
pub struct MobiusTable {
    pub element: usize,
    values: HashMap<SignVector, HashMap<SignVector, i64>>,
}

impl MobiusTable {
    pub fn new(m: &OrientedMatroid, e: usize) -> Result<Self, VarchenkoError> {
        check_element(m, e)?;
        let values = m
            .topes()
            .iter()
            .map(|r| (*r, half_mobius_unchecked(m, r, e)))
            .collect();
        Ok(MobiusTable { element: e, values })
    }

    /// `μ_{R,e}(0̂, Q)`.
    ///
    /// # Panics
    /// If `R` is not a tope or `Q_e ≠ −R_e`.
    pub fn get(&self, r: &SignVector, q: &SignVector) -> i64 {
        self.values[r][q]
    }
}

/// Entry `(Q, R)` of `𝓜^e`, valid for any tope order.
pub(crate) fn cal_me_entry(
    table: &MobiusTable,
    order: &ElementOrder,
    nvars: usize,
    q: &SignVector,
    r: &SignVector,
) -> MultiPoly {
    if q == r {
        return MultiPoly::one(nvars);
    }
    let s = q.sep(r);
    if order.max_of(s) != Some(table.element) {
        return MultiPoly::zero(nvars);
    }
    let mu = if r.get(table.element) == Sign::Plus {
        table.get(r, q)
    } else {
        table.get(&-*r, &-*q)
    };
    scaled_monomial(nvars, s, -mu)
}

/// `M^e`: rows `𝒯(∅,{e})`, columns `𝒯({e},∅)`, both in canonical order.
pub fn build_me(
    m: &OrientedMatroid,
    e: usize,
    order: &ElementOrder,
) -> Result<PolyMatrix, VarchenkoError> {
    order.check(m.num_elements())?;
    let table = MobiusTable::new(m, e)?;
    let rows = m.topes_matching(ElemSet::EMPTY, ElemSet::singleton(e));
    let cols = m.topes_matching(ElemSet::singleton(e), ElemSet::EMPTY);
    let n = m.num_elements();
    let mat = PolyMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        cal_me_entry(&table, order, n, &rows[i], &cols[j])
    });
    labelled(mat, &rows, &cols)
}

/// `𝓜^e` with rows and columns in the given order of all topes.
pub fn build_cal_me(
    m: &OrientedMatroid,
    e: usize,
    order: &ElementOrder,
    topes: &[SignVector],
) -> Result<PolyMatrix, VarchenkoError> {
    order.check(m.num_elements())?;
    check_tope_order(m, topes)?;
    let table = MobiusTable::new(m, e)?;
    Ok(cal_me_with(&table, order, m.num_elements(), topes, topes))
}

pub(crate) fn cal_me_with(
    table: &MobiusTable,
    order: &ElementOrder,
    nvars: usize,
    rows: &[SignVector],
    cols: &[SignVector],
) -> PolyMatrix {
    let mat = PolyMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        cal_me_entry(table, order, nvars, &rows[i], &cols[j])
    });
    labelled(mat, rows, cols).expect("distinct topes")
}

/// `P₁, …, P_ℓ` (the topes with `P_e = −`) followed by `−P₁, …, −P_ℓ`.
pub fn paired_order(m: &OrientedMatroid, e: usize) -> Result<Vec<SignVector>, VarchenkoError> {
    check_element(m, e)?;
    let neg = m.topes_matching(ElemSet::EMPTY, ElemSet::singleton(e));
    let mut out = neg.clone();
    out.extend(neg.iter().map(|p| -*p));
    Ok(out)
}

fn same_entries(a: &PolyMatrix, b: &PolyMatrix) -> bool {
    a.rows() == b.rows() && a.cols() == b.cols() && a.to_rows() == b.to_rows()
}

/// Checks `lhs = rhs[0]·rhs[1]⋯` exactly, or at random points mod p.
pub(crate) fn check_product(
    name: &str,
    lhs: &PolyMatrix,
    rhs: &[PolyMatrix],
    symbolic: bool,
    cfg: &VerifyConfig,
    nvars: usize,
    rng: &mut impl Rng,
    report: &mut Report,
) -> Result<(), PolyError> {
    if symbolic {
        let mut prod = rhs[0].clone();
        for f in &rhs[1..] {
            prod = prod.mat_mul(f)?;
        }
        if !same_entries(lhs, &prod) {
            report.fail(json!({ "identity": name, "mode": "symbolic" }));
        }
        return Ok(());
    }
    let field: &PrimeField = &cfg.field;
    for trial in 0..cfg.trials {
        let point = field.random_point(rng, nvars);
        let mut prod = rhs[0].eval_modp(field, &point)?;
        for f in &rhs[1..] {
            prod = prod.mat_mul(&f.eval_modp(field, &point)?)?;
        }
        let l = lhs.eval_modp(field, &point)?;
        if l.m.to_rows() != prod.m.to_rows() {
            report.fail(json!({ "identity": name, "mode": "modular", "trial": trial, "point": point }));
        }
    }
    Ok(())
}

/// Checks `𝔙 = 𝓜^{e₁}⋯𝓜^{e_r}` together with, for `e = max E`,
/// `𝔙 = 𝔙_{U_e=0}·𝓜^e` and `𝔙^{e,(−,+)} = 𝔙^{e,(−,−)}·M^e`.
pub fn verify_factorization(
    m: &OrientedMatroid,
    order: &ElementOrder,
    cfg: &VerifyConfig,
) -> Result<Report, VarchenkoError> {
    order.check(m.num_elements())?;
    let n = m.num_elements();
    let topes = m.topes();
    let symbolic = topes.len() <= cfg.max_symbolic;
    let method = if symbolic {
        "symbolic".to_string()
    } else {
        cfg.modular_method()
    };
    let mut report = Report::new("V = M^{e_1} ... M^{e_r}; V = V_{U_e=0} M^e and V^{(-,+)} = V^{(-,-)} M^e for e = max E", method);
    let mut rng = cfg.rng();
    let v = varchenko(m).matrix;

    if n == 0 {
        if !v.is_identity() {
            report.fail(json!({ "identity": "product" }));
        }
        return Ok(report);
    }

    let factors = order
        .elements()
        .iter()
        .map(|&e| build_cal_me(m, e, order, topes))
        .collect::<Result<Vec<_>, _>>()?;
    check_product("product", &v, &factors, symbolic, cfg, n, &mut rng, &mut report)?;

    let e = order.largest().expect("nonempty ground set");
    let last = factors.last().expect("nonempty").clone();
    check_product(
        "deletion step",
        &v,
        &[v.substitute_zero(e), last],
        symbolic,
        cfg,
        n,
        &mut rng,
        &mut report,
    )?;

    let idx = |t: &SignVector| m.tope_index(t).expect("tope");
    let neg: Vec<usize> = m
        .topes_matching(ElemSet::EMPTY, ElemSet::singleton(e))
        .iter()
        .map(idx)
        .collect();
    let pos: Vec<usize> = m
        .topes_matching(ElemSet::singleton(e), ElemSet::EMPTY)
        .iter()
        .map(idx)
        .collect();
    let me = build_me(m, e, order)?;
    check_product(
        "half blocks",
        &v.submatrix(&neg, &pos),
        &[v.submatrix(&neg, &neg), me],
        symbolic,
        cfg,
        n,
        &mut rng,
        &mut report,
    )?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::integer_matrix;

    fn p(s: &str, n: usize) -> MultiPoly {
        MultiPoly::parse(s, n).unwrap()
    }

    #[test]
    fn f1_matrices() {
        let m = fixtures::f1();
        let v = varchenko(&m).matrix;
        assert_eq!(v.to_rows(), vec![vec![p("1", 1), p("U0", 1)], vec![p("U0", 1), p("1", 1)]]);
        let order = ElementOrder::natural(1);
        assert_eq!(build_me(&m, 0, &order).unwrap().to_rows(), vec![vec![p("U0", 1)]]);
        let cal = build_cal_me(&m, 0, &order, m.topes()).unwrap();
        assert_eq!(cal.to_rows(), v.to_rows());
    }

    // Kronecker product of the two 2x2 Varchenko matrices, built by hand.
    #[test]
    fn f2_kronecker() {
        let m = fixtures::f2();
        let order = ["++", "+-", "-+", "--"].map(|s| s.parse::<SignVector>().unwrap());
        let v = build_varchenko(&m, &order).unwrap().matrix;
        let a = [["1", "U0"], ["U0", "1"]];
        let b = [["1", "U1"], ["U1", "1"]];
        for i in 0..4 {
            for j in 0..4 {
                let expected = p(a[i / 2][j / 2], 2).checked_mul(&p(b[i % 2][j % 2], 2)).unwrap();
                assert_eq!(v.get(i, j), &expected);
            }
        }
        assert!(build_varchenko(&m, &order[..3]).is_err());
    }

    #[test]
    fn antipodal_symmetry() {
        let m = fixtures::f3();
        let v = varchenko(&m);
        for (i, a) in v.tope_order.iter().enumerate() {
            for (j, b) in v.tope_order.iter().enumerate() {
                let (ni, nj) = (m.tope_index(&-*a).unwrap(), m.tope_index(&-*b).unwrap());
                assert_eq!(v.matrix.get(i, j), v.matrix.get(ni, nj));
                assert_eq!(v.matrix.get(i, j), v.matrix.get(j, i));
            }
            assert!(v.matrix.get(i, i).is_one());
        }
    }

    #[test]
    fn me_zero_pattern() {
        for m in [fixtures::f2(), fixtures::f3(), fixtures::f4()] {
            let n = m.num_elements();
            let order = ElementOrder::natural(n);
            for e in 0..n {
                let me = build_me(&m, e, &order).unwrap();
                let rows = m.topes_matching(ElemSet::EMPTY, ElemSet::singleton(e));
                let cols = m.topes_matching(ElemSet::singleton(e), ElemSet::EMPTY);
                for (i, q) in rows.iter().enumerate() {
                    for (j, r) in cols.iter().enumerate() {
                        if order.max_of(q.sep(r)) != Some(e) {
                            assert!(me.get(i, j).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn paired_block_form() {
        for m in [fixtures::f2(), fixtures::f3(), fixtures::f4()] {
            let n = m.num_elements();
            let order = ElementOrder::natural(n);
            for e in 0..n {
                let po = paired_order(&m, e).unwrap();
                let l = po.len() / 2;
                let cal = build_cal_me(&m, e, &order, &po).unwrap();
                let me = build_me(&m, e, &order).unwrap();
                let cols = m.topes_matching(ElemSet::singleton(e), ElemSet::EMPTY);
                for i in 0..l {
                    for j in 0..l {
                        let c = cols.iter().position(|r| *r == -po[j]).unwrap();
                        let id = if i == j { p("1", n) } else { p("0", n) };
                        assert_eq!(cal.get(i, j), &id);
                        assert_eq!(cal.get(l + i, l + j), &id);
                        assert_eq!(cal.get(i, l + j), me.get(i, c));
                        assert_eq!(cal.get(l + i, j), me.get(i, c));
                    }
                }
            }
        }
    }

    #[test]
    fn f2_two_step_product() {
        let m = fixtures::f2();
        let order = ElementOrder::natural(2);
        let a = build_cal_me(&m, 0, &order, m.topes()).unwrap();
        let b = build_cal_me(&m, 1, &order, m.topes()).unwrap();
        assert_eq!(a.mat_mul(&b).unwrap().to_rows(), varchenko(&m).matrix.to_rows());
    }

    #[test]
    fn factorization_on_fixtures() {
        let cfg = VerifyConfig::default();
        for m in [fixtures::f1(), fixtures::f2(), fixtures::f3(), fixtures::f4()] {
            let n = m.num_elements();
            let r = verify_factorization(&m, &ElementOrder::natural(n), &cfg).unwrap();
            assert!(r.passed(), "{r:?}");
            let rev = ElementOrder::new((0..n).rev().collect()).unwrap();
            assert!(verify_factorization(&m, &rev, &cfg).unwrap().passed());
        }
        let small = VerifyConfig { max_symbolic: 2, ..VerifyConfig::default() };
        let r = verify_factorization(&fixtures::f3(), &ElementOrder::natural(3), &small).unwrap();
        assert!(r.passed());
        assert!(r.method.starts_with("modular"));
    }

    #[test]
    fn wrong_product_is_caught() {
        let cfg = VerifyConfig::default();
        let id = integer_matrix(&[vec![1, 0], vec![0, 1]], 1);
        let v = varchenko(&fixtures::f1()).matrix;
        let mut r = Report::new("x", "y");
        let mut rng = cfg.rng();
        check_product("t", &v, &[id.clone(), id.clone()], true, &cfg, 1, &mut rng, &mut r).unwrap();
        assert!(!r.passed());
        let mut r = Report::new("x", "y");
        check_product("t", &v, &[id.clone(), id], false, &cfg, 1, &mut rng, &mut r).unwrap();
        assert_eq!(r.witnesses.len(), cfg.trials);
    }
}
