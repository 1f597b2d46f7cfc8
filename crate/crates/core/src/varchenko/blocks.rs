//! The `𝒯^{F,e}` block decomposition of `𝓜^e` and the Möbius values on
//! each block.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use super::formula::{one_minus_square, t_f_e};
use super::matrices::{cal_me_with, MobiusTable};
use super::{ElementOrder, Report, VarchenkoError, VerifyConfig};
use crate::om::{OmError, OrientedMatroid};
use crate::poly::{det_modp, det_symbolic, MultiPoly, DEFAULT_SYMBOLIC_LIMIT};
use crate::sign::SignVector;

/// The topes `𝒯^{F,e}`, occupying positions `start..start+topes.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub covector: SignVector,
    pub element: usize,
    pub start: usize,
    pub topes: Vec<SignVector>,
}

/// A tope order in which every `𝒯^{F,e}` is an interval and smaller
/// covectors come first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub element: usize,
    pub blocks: Vec<Block>,
    pub order: Vec<SignVector>,
}

/// Groups the topes by `F = max{X ≤ P : X_e = 0}`, blocks sorted by the
/// rank of `F` and then canonically.
pub fn block_layout(m: &OrientedMatroid, e: usize) -> Result<BlockLayout, VarchenkoError> {
    if e >= m.num_elements() {
        return Err(OmError::NoSuchElement(e).into());
    }
    let mut groups: BTreeMap<(usize, SignVector), Vec<SignVector>> = BTreeMap::new();
    for p in m.topes() {
        let f = m.max_face_at(p, e);
        groups.entry((m.covector_rank(&f)?, f)).or_default().push(*p);
    }
    let mut blocks = Vec::new();
    let mut order = Vec::new();
    for ((_, f), topes) in groups {
        blocks.push(Block {
            covector: f,
            element: e,
            start: order.len(),
            topes: topes.clone(),
        });
        order.extend(topes);
    }
    Ok(BlockLayout {
        element: e,
        blocks,
        order,
    })
}

fn block_exponent(block: &Block, order: &ElementOrder) -> u64 {
    if order.max_of(block.covector.zero_set()) == Some(block.element) {
        block.topes.len() as u64 / 2
    } else {
        0
    }
}

/// Checks that `𝓜^e` is block lower triangular in [`block_layout`] order,
/// that `#𝒯^{F,e}` is even, and that each diagonal block has determinant
/// `(1 − a(F)²)^{b_{F,e}}`; also compares `det 𝓜^e` with the product of the
/// block determinants at random points.
pub fn verify_block_structure(
    m: &OrientedMatroid,
    e: usize,
    order: &ElementOrder,
    cfg: &VerifyConfig,
) -> Result<(BlockLayout, Report), VarchenkoError> {
    order.check(m.num_elements())?;
    let n = m.num_elements();
    let layout = block_layout(m, e)?;
    let table = MobiusTable::new(m, e)?;
    let mat = cal_me_with(&table, order, n, &layout.order, &layout.order);
    let mut report = Report::new(
        "M^e is block lower triangular with det of block F equal to (1 - a(F)^2)^{b_{F,e}}",
        format!("symbolic blocks up to size {}, {}", cfg.max_symbolic, cfg.modular_method()),
    );

    let mut block_of = vec![0; layout.order.len()];
    for (k, b) in layout.blocks.iter().enumerate() {
        for i in b.start..b.start + b.topes.len() {
            block_of[i] = k;
        }
    }
    for i in 0..mat.rows() {
        for j in 0..mat.cols() {
            if block_of[i] < block_of[j] && !mat.get(i, j).is_zero() {
                report.fail(json!({
                    "check": "above block diagonal",
                    "row": layout.order[i],
                    "col": layout.order[j],
                    "entry": mat.get(i, j).to_string(),
                }));
            }
        }
    }

    let mut rng = cfg.rng();
    let mut blocks = Vec::new();
    for b in &layout.blocks {
        let idx: Vec<usize> = (b.start..b.start + b.topes.len()).collect();
        let sub = mat.submatrix(&idx, &idx);
        let direct = t_f_e(m, &b.covector, e)?;
        if direct != b.topes {
            report.fail(json!({ "check": "block tope set", "covector": b.covector }));
        }
        let k = block_exponent(b, order);
        if k > 0 && b.topes.len() % 2 != 0 {
            report.fail(json!({ "check": "even block", "covector": b.covector }));
        }
        if k == 0 && !sub.is_identity() {
            report.fail(json!({ "check": "identity block", "covector": b.covector }));
        }
        let expected = one_minus_square(n, b.covector.zero_set()).pow(k as u32)?;
        if b.topes.len() <= cfg.max_symbolic {
            let det = det_symbolic(&sub, cfg.max_symbolic)?;
            if det != expected {
                report.fail(json!({
                    "check": "block determinant",
                    "covector": b.covector,
                    "det": det.to_string(),
                    "expected": expected.to_string(),
                }));
            }
        } else {
            for _ in 0..cfg.trials {
                let point = cfg.field.random_point(&mut rng, n);
                if det_modp(&sub, &cfg.field, &point)? != expected.eval_modp(&cfg.field, &point)? {
                    report.fail(json!({ "check": "block determinant", "covector": b.covector, "point": point }));
                    break;
                }
            }
        }
        blocks.push((sub, expected));
    }

    for _ in 0..cfg.trials {
        let point = cfg.field.random_point(&mut rng, n);
        let whole = det_modp(&mat, &cfg.field, &point)?;
        let mut prod = 1;
        for (sub, _) in &blocks {
            prod = cfg.field.mul(prod, det_modp(sub, &cfg.field, &point)?);
        }
        if whole != prod {
            report.fail(json!({ "check": "det is product of block dets", "point": point }));
        }
    }
    Ok((layout, report))
}

/// `det 𝓜^{F,e}`, the determinant of `𝓜^e` restricted to `𝒯^{F,e}`.
pub fn block_det(
    m: &OrientedMatroid,
    f: &SignVector,
    e: usize,
    order: &ElementOrder,
) -> Result<MultiPoly, VarchenkoError> {
    order.check(m.num_elements())?;
    let topes = t_f_e(m, f, e)?;
    if topes.is_empty() {
        return Err(VarchenkoError::EmptyBlock(f.to_string()));
    }
    let table = MobiusTable::new(m, e)?;
    let sub = cal_me_with(&table, order, m.num_elements(), &topes, &topes);
    Ok(det_symbolic(&sub, DEFAULT_SYMBOLIC_LIMIT)?)
}

/// For `e = max z(F)` and all `Q, R ∈ 𝒯^{F,e}` on opposite sides of `e`,
/// compares `μ_{R,e}(0̂,Q)` and `μ_{−R,e}(0̂,−Q)` with the same values in
/// `ℒ|_{z(F)}` and with `(−1)^{rank ℒ|_{z(F)}}` if `Q|_{z(F)} = −R|_{z(F)}`,
/// 0 otherwise.
pub fn prop54_check(
    m: &OrientedMatroid,
    f: &SignVector,
    order: &ElementOrder,
) -> Result<Report, VarchenkoError> {
    order.check(m.num_elements())?;
    let a = f.zero_set();
    let e = order.max_of(a).ok_or_else(|| VarchenkoError::IsTope(f.to_string()))?;
    let topes = t_f_e(m, f, e)?;
    if topes.is_empty() {
        return Err(VarchenkoError::EmptyBlock(f.to_string()));
    }
    let rest = m.restriction(a)?;
    let rank = rest.rank();
    let e_rest = a.iter().position(|x| x == e).expect("e in z(F)");
    let sign = if rank % 2 == 0 { 1 } else { -1 };
    let full = MobiusTable::new(m, e)?;
    let small = MobiusTable::new(&rest, e_rest)?;
    let mut report = Report::new(
        "mu_{R,e}(0,Q) = (-1)^{rank L|z(F)} if Q|z(F) = -R|z(F), else 0, for Q, R in T^{F,e}",
        "exact",
    );
    for q in &topes {
        for r in &topes {
            if q.get(e) != -r.get(e) {
                continue;
            }
            let (qa, ra) = (q.restrict(a), r.restrict(a));
            let closed = if qa == -ra { sign } else { 0 };
            let values = [
                full.get(r, q),
                full.get(&-*r, &-*q),
                small.get(&ra, &qa),
                small.get(&-ra, &-qa),
            ];
            if values.iter().any(|&v| v != closed) {
                report.fail(json!({
                    "Q": q,
                    "R": r,
                    "mu": values[0],
                    "mu_negated": values[1],
                    "mu_restriction": values[2],
                    "mu_restriction_negated": values[3],
                    "closed_form": closed,
                }));
            }
        }
    }
    Ok(report)
}
