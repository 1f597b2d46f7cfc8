//! Varchenko matrices of closed supertopes and their determinants.

use serde::Serialize;
use serde_json::json;

use super::formula::{aggregate_by_zero_set, det_formula, expand_formula, one_minus_square};
use super::matrices::varchenko;
use super::{ElementOrder, Report, VarchenkoError, VerifyConfig};
use crate::om::OrientedMatroid;
use crate::poly::{det_symbolic, PolyMatrix};
use crate::sign::ElemSet;
use crate::topology::{is_closed_supertope, supertope};

/// `𝔙_ε`: rows and columns of `𝔙` for the topes of the closed supertope
/// `𝒯(ε⁺, ε⁻)`, in canonical order.
pub fn cone_matrix(
    m: &OrientedMatroid,
    plus: ElemSet,
    minus: ElemSet,
) -> Result<PolyMatrix, VarchenkoError> {
    if !is_closed_supertope(m, plus, minus)? {
        return Err(VarchenkoError::NotClosed);
    }
    let topes = supertope(m, plus, minus)?.topes;
    let idx: Vec<usize> = topes.iter().map(|t| m.tope_index(t).expect("tope")).collect();
    Ok(varchenko(m).matrix.submatrix(&idx, &idx))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeFactor {
    pub zeros: ElemSet,
    pub exponent: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConeReport {
    #[serde(flatten)]
    pub report: Report,
    pub size: usize,
    pub determinant: String,
    pub factors: Vec<ConeFactor>,
}

/// Computes `det 𝔙_ε` and recovers its exponents by repeated exact
/// division by `1 − a(F)²` over the zero sets of covectors `F` that do not
/// vanish on the pattern. Checks that nothing is left over, that the
/// constant term is `+1`, that `det 𝔙_ε` divides the determinant of `𝔙`
/// with `U_e = 0` for every patterned `e`, and for a one-element pattern
/// that each exponent is half the corresponding exponent of `det 𝔙`.
pub fn verify_cone_det(
    m: &OrientedMatroid,
    plus: ElemSet,
    minus: ElemSet,
    cfg: &VerifyConfig,
) -> Result<ConeReport, VarchenkoError> {
    let n = m.num_elements();
    let cone = cone_matrix(m, plus, minus)?;
    let det = det_symbolic(&cone, cfg.max_symbolic)?;
    let pattern = plus.union(minus);
    let mut report = Report::new(
        "det V_eps = prod over F nonzero on E' of (1 - a(F)^2)^{b_F,eps} with constant term +1",
        "symbolic",
    );

    if det.constant_term() != 1.into() {
        report.fail(json!({ "check": "constant term", "determinant": det.to_string() }));
    }

    let mut candidates: Vec<ElemSet> = m
        .covectors()
        .iter()
        .map(|f| f.zero_set())
        .filter(|a| !a.is_empty() && a.intersection(pattern).is_empty())
        .collect();
    candidates.sort();
    candidates.dedup();

    let mut residual = det.clone();
    let mut factors = Vec::new();
    for &a in &candidates {
        let factor = one_minus_square(n, a);
        let mut k = 0;
        while let Some(q) = residual.div_exact(&factor)? {
            residual = q;
            k += 1;
        }
        if k > 0 {
            factors.push(ConeFactor { zeros: a, exponent: k });
        }
    }
    if !residual.is_one() {
        report.fail(json!({ "check": "residual", "residual": residual.to_string() }));
    }

    let terms = det_formula(m, &ElementOrder::natural(n))?;
    let agg = aggregate_by_zero_set(&terms);
    let surviving: Vec<(ElemSet, u64)> = agg
        .iter()
        .filter(|(a, _)| a.intersection(pattern).is_empty())
        .map(|(a, k)| (*a, *k))
        .collect();
    let full = expand_formula(surviving, n)?;
    if full.div_exact(&det)?.is_none() {
        report.fail(json!({ "check": "divides det V with U_e = 0 on E'" }));
    }

    if pattern.len() == 1 {
        for &a in &candidates {
            let b = agg.get(&a).copied().unwrap_or(0);
            let got = factors.iter().find(|f| f.zeros == a).map_or(0, |f| f.exponent);
            if b % 2 != 0 || got * 2 != b {
                report.fail(json!({ "check": "half exponent", "zeros": a, "cone": got, "full": b }));
            }
        }
    }

    Ok(ConeReport {
        report,
        size: cone.rows(),
        determinant: det.to_string(),
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::MultiPoly;
    use crate::topology::TopologyError;

    fn e(v: &[usize]) -> ElemSet {
        ElemSet::from_elems(v.iter().copied())
    }

    #[test]
    fn f2_halfplane() {
        let m = fixtures::f2();
        let c = cone_matrix(&m, e(&[0]), ElemSet::EMPTY).unwrap();
        let p = |s: &str| MultiPoly::parse(s, 2).unwrap();
        assert_eq!(c.to_rows(), vec![vec![p("1"), p("U1")], vec![p("U1"), p("1")]]);
        let r = verify_cone_det(&m, e(&[0]), ElemSet::EMPTY, &VerifyConfig::default()).unwrap();
        assert!(r.report.passed(), "{r:?}");
        assert_eq!(r.determinant, "1 - U1^2");
        assert_eq!(r.factors, vec![ConeFactor { zeros: e(&[1]), exponent: 1 }]);
    }

    #[test]
    fn f3_halfplane() {
        let m = fixtures::f3();
        let r = verify_cone_det(&m, e(&[0]), ElemSet::EMPTY, &VerifyConfig::default()).unwrap();
        assert!(r.report.passed(), "{r:?}");
        assert_eq!(r.size, 3);
        assert_eq!(
            r.factors,
            vec![ConeFactor { zeros: e(&[1]), exponent: 1 }, ConeFactor { zeros: e(&[2]), exponent: 1 }]
        );
    }

    #[test]
    fn single_tope_pattern() {
        let m = fixtures::f3();
        let r = verify_cone_det(&m, e(&[0, 2]), e(&[1]), &VerifyConfig::default()).unwrap();
        assert!(r.report.passed());
        assert_eq!(r.size, 1);
        assert_eq!(r.determinant, "1");
        assert!(r.factors.is_empty());
    }

    #[test]
    fn rejects_open_and_empty_patterns() {
        let m = fixtures::f3();
        // +,+ on {0,1} forces element 2 positive
        assert_eq!(cone_matrix(&m, e(&[0, 1]), ElemSet::EMPTY), Err(VarchenkoError::NotClosed));
        // +,+ on {0,2} leaves +++ and +-+
        assert_eq!(cone_matrix(&m, e(&[0, 2]), ElemSet::EMPTY).unwrap().rows(), 2);
        assert_eq!(
            cone_matrix(&m, e(&[0]), e(&[0])),
            Err(VarchenkoError::Topology(TopologyError::OverlappingPattern(e(&[0]))))
        );
    }

    #[test]
    fn f4_quadrants() {
        let m = fixtures::f4();
        let cfg = VerifyConfig::default();
        for plus in ElemSet::full(3).subsets() {
            for minus in ElemSet::full(3).difference(plus).subsets() {
                if plus.union(minus).is_empty() {
                    continue;
                }
                let r = verify_cone_det(&m, plus, minus, &cfg).unwrap();
                assert!(r.report.passed(), "{plus:?} {minus:?}: {r:?}");
                assert_eq!(r.size, 1 << (3 - plus.union(minus).len()));
            }
        }
    }
}
