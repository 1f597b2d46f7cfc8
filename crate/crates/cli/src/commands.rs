use std::fmt;
use std::fs;

use serde::Serialize;
use serde_json::{json, Map, Value};

use omvar::arrangement::Arrangement;
use omvar::io::parse_covectors;
use omvar::matroid::{bounded_tope_count, MatroidError, UnderlyingMatroid};
use omvar::poly::{det_modp, det_symbolic, PolyError, PrimeField};
use omvar::topology::{
    is_closed_supertope, supertope, supertope_homology, TopologyError, DEFAULT_FACE_LIMIT,
};
use omvar::varchenko::{
    det_formula, eval_formula_modp, expand_formula, refined_formula, varchenko,
    verify_cone_det, verify_factorization, verify_matroid_invariance, ElementOrder, Report,
    VarchenkoError, VerifyConfig,
};
use omvar::{ElemSet, OmError, OrientedMatroid, SignVector};

use crate::{Cli, Command, DetMode, InputKind};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Guard(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(s) => write!(f, "input error: {s}"),
            CliError::Guard(s) => write!(f, "resource guard: {s}"),
        }
    }
}

impl From<OmError> for CliError {
    fn from(e: OmError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<MatroidError> for CliError {
    fn from(e: MatroidError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::SizeGuard { .. } => CliError::Guard(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<TopologyError> for CliError {
    fn from(e: TopologyError) -> Self {
        match e {
            TopologyError::SizeGuard { .. } => CliError::Guard(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<VarchenkoError> for CliError {
    fn from(e: VarchenkoError) -> Self {
        match e {
            VarchenkoError::Poly(p) => p.into(),
            VarchenkoError::Topology(t) => t.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub json: Value,
    pub passed: bool,
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// The report's fields merged with extra result data.
fn with_report(report: &Report, extra: Value) -> Outcome {
    let mut obj = match to_value(report) {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    if let Value::Object(e) = extra {
        obj.extend(e);
    }
    Outcome {
        json: Value::Object(obj),
        passed: report.passed(),
    }
}

pub fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.json_out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(cli: &Cli) -> Result<OrientedMatroid, CliError> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| CliError::Input("--input is required".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let kind = cli.kind.unwrap_or_else(|| {
        if path.extension().is_some_and(|x| x == "json") {
            InputKind::Arrangement
        } else {
            InputKind::Covectors
        }
    });
    Ok(match kind {
        InputKind::Arrangement => Arrangement::from_json(&text)?.oriented_matroid()?,
        InputKind::Covectors => parse_covectors(&text)?,
    })
}

fn config(cli: &Cli) -> Result<VerifyConfig, CliError> {
    if cli.trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    Ok(VerifyConfig {
        field: PrimeField::new(cli.prime)?,
        trials: cli.trials,
        seed: cli.seed,
        max_symbolic: cli.max_symbolic,
    })
}

fn element_order(cli: &Cli, n: usize) -> Result<ElementOrder, CliError> {
    let Some(s) = &cli.element_order else {
        return Ok(ElementOrder::natural(n));
    };
    let listed = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Input(format!("bad element {t:?}"))))
        .collect::<Result<Vec<usize>, _>>()?;
    if listed.len() != n {
        return Err(CliError::Input(format!("--element-order must list all {n} elements")));
    }
    Ok(ElementOrder::new(listed)?)
}

fn parse_elements(s: &str) -> Result<ElemSet, CliError> {
    let mut out = ElemSet::EMPTY;
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let e: usize = t
            .parse()
            .map_err(|_| CliError::Input(format!("bad element {t:?}")))?;
        if e >= 64 {
            return Err(CliError::Input(format!("element {e} out of range")));
        }
        out.insert(e);
    }
    Ok(out)
}

/// `"0:+,2:-"` into `(plus, minus)`.
fn parse_signs(s: &str) -> Result<(ElemSet, ElemSet), CliError> {
    let (mut plus, mut minus) = (ElemSet::EMPTY, ElemSet::EMPTY);
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (e, sign) = t
            .split_once(':')
            .ok_or_else(|| CliError::Input(format!("bad sign entry {t:?}")))?;
        let e = parse_elements(e)?;
        match sign.trim() {
            "+" => plus = plus.union(e),
            "-" => minus = minus.union(e),
            other => return Err(CliError::Input(format!("bad sign {other:?}"))),
        }
    }
    Ok((plus, minus))
}

fn require_om(m: &OrientedMatroid) -> Result<(), CliError> {
    let r = m.check_axioms();
    match r.failures().first() {
        None => Ok(()),
        Some((name, w)) => Err(CliError::Input(format!("not an oriented matroid: {name} fails at {w}"))),
    }
}

fn check_range(m: &OrientedMatroid, s: ElemSet) -> Result<(), CliError> {
    match s.difference(m.ground().all()).iter().next() {
        Some(e) => Err(OmError::NoSuchElement(e).into()),
        None => Ok(()),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let m = load(cli)?;
    if let Command::Axioms = cli.command {
        return Ok(axioms(&m));
    }
    require_om(&m)?;
    let cfg = config(cli)?;
    let order = element_order(cli, m.num_elements())?;
    match &cli.command {
        Command::Axioms => unreachable!(),
        Command::Det { mode } => det(&m, mode, &order, &cfg),
        Command::Factorize => {
            let r = verify_factorization(&m, &order, &cfg)?;
            Ok(with_report(&r, json!({ "topes": m.topes().len() })))
        }
        Command::Supertope { plus, minus, base } => {
            supertope_cmd(&m, parse_elements(plus)?, parse_elements(minus)?, base.as_deref())
        }
        Command::Cone { signs } => {
            let (plus, minus) = parse_signs(signs)?;
            check_range(&m, plus.union(minus))?;
            let r = verify_cone_det(&m, plus, minus, &cfg)?;
            Ok(Outcome {
                passed: r.report.passed(),
                json: to_value(&r),
            })
        }
        Command::Invariance { reorient } => {
            let a = parse_elements(reorient)?;
            check_range(&m, a)?;
            let r = verify_matroid_invariance(&m, a, &order)?;
            Ok(with_report(
                &r,
                json!({
                    "reorient": a,
                    "factors": det_formula(&m, &order)?,
                    "refined": refined_formula(&m)?,
                }),
            ))
        }
        Command::Matroid => matroid(&m),
    }
}

fn axioms(m: &OrientedMatroid) -> Outcome {
    let r = m.check_axioms();
    let mut report = Report::new("covector axioms", "exhaustive");
    for (name, w) in r.failures() {
        report.fail(json!({ "axiom": name, "witness": w }));
    }
    with_report(
        &report,
        json!({
            "elements": m.num_elements(),
            "covectors": m.covectors().len(),
            "topes": m.topes().len(),
        }),
    )
}

fn det(
    m: &OrientedMatroid,
    modes: &[DetMode],
    order: &ElementOrder,
    cfg: &VerifyConfig,
) -> Result<Outcome, CliError> {
    let n = m.num_elements();
    let v = varchenko(m).matrix;
    let t = v.rows();
    let mut modes = modes.to_vec();
    if modes.is_empty() {
        modes = vec![DetMode::Formula, DetMode::Modp];
        if t <= cfg.max_symbolic {
            modes.push(DetMode::Symbolic);
        }
    }
    modes.sort();
    modes.dedup();
    let has = |d| modes.contains(&d);

    let mut report = Report::new("det V = prod over F of (1 - a(F)^2)^{b_F}", {
        let names: Vec<&str> = modes
            .iter()
            .map(|d| match d {
                DetMode::Symbolic => "symbolic",
                DetMode::Modp => "modp",
                DetMode::Formula => "formula",
            })
            .collect();
        names.join("+")
    });
    let mut out = Map::new();
    out.insert("topes".into(), json!(t));

    let terms = det_formula(m, order)?;
    let pairs: Vec<(ElemSet, u64)> = terms.iter().map(|f| (f.zeros, f.exponent)).collect();
    let symbolic = if has(DetMode::Symbolic) {
        let d = det_symbolic(&v, cfg.max_symbolic)?;
        out.insert("symbolic".into(), json!(d.to_string()));
        Some(d)
    } else {
        None
    };
    if has(DetMode::Formula) {
        let mut f = json!({ "factors": terms });
        if let Some(d) = &symbolic {
            let expanded = expand_formula(pairs.clone(), n)?;
            if &expanded != d {
                report.fail(json!({ "compare": "symbolic vs formula", "formula": expanded.to_string() }));
            }
            f["expanded"] = json!(expanded.to_string());
        }
        out.insert("formula".into(), f);
    }
    if has(DetMode::Modp) {
        let mut rng = cfg.rng();
        let mut values = Vec::new();
        for trial in 0..cfg.trials {
            let point = cfg.field.random_point(&mut rng, n);
            let d = det_modp(&v, &cfg.field, &point)?;
            if has(DetMode::Formula) && eval_formula_modp(pairs.clone(), &cfg.field, &point)? != d {
                report.fail(json!({ "compare": "modp vs formula", "trial": trial, "point": point }));
            }
            if let Some(s) = &symbolic {
                if s.eval_modp(&cfg.field, &point)? != d {
                    report.fail(json!({ "compare": "modp vs symbolic", "trial": trial, "point": point }));
                }
            }
            values.push(d);
        }
        out.insert(
            "modp".into(),
            json!({
                "prime": cfg.field.modulus(),
                "seed": cfg.seed,
                "trials": cfg.trials,
                "values": values,
            }),
        );
    }
    Ok(with_report(&report, Value::Object(out)))
}

fn supertope_cmd(
    m: &OrientedMatroid,
    plus: ElemSet,
    minus: ElemSet,
    base: Option<&str>,
) -> Result<Outcome, CliError> {
    let base: SignVector = match base {
        Some(s) => s
            .parse()
            .map_err(|e| CliError::Input(format!("bad base tope {s:?}: {e}")))?,
        None => m.topes()[0],
    };
    if !m.is_tope(&base) {
        return Err(OmError::NotATope(base.to_string()).into());
    }
    let mut report = Report::new("supertope has trivial reduced homology", "Smith normal form");
    let st = match supertope(m, plus, minus) {
        Ok(st) => st,
        Err(TopologyError::EmptySupertope) => {
            report.fail(json!({ "plus": plus, "minus": minus, "reason": "no tope matches the pattern" }));
            return Ok(with_report(&report, json!({ "base": base, "topes": [] })));
        }
        Err(e) => return Err(e.into()),
    };
    let closed = is_closed_supertope(m, plus, minus)?;
    let homology = supertope_homology(m, &base, plus, minus, DEFAULT_FACE_LIMIT)?;
    for h in homology.iter().filter(|h| !h.is_trivial()) {
        report.fail(to_value(h));
    }
    Ok(with_report(
        &report,
        json!({
            "base": base,
            "plus": plus,
            "minus": minus,
            "topes": st.topes,
            "closed": closed,
            "homology": homology,
            "contractible": homology.iter().all(|h| h.is_trivial()),
        }),
    ))
}

fn matroid(m: &OrientedMatroid) -> Result<Outcome, CliError> {
    let mat = UnderlyingMatroid::new(m);
    let mut report = Report::new("bounded tope count at e equals 2 beta", "exhaustive");
    let beta = mat.beta().ok();
    let mut bounded = Vec::new();
    for e in 0..m.num_elements() {
        let b = bounded_tope_count(m, e)?;
        if let Some(beta) = beta {
            if b as u64 != 2 * beta {
                report.fail(json!({ "element": e, "bounded": b, "beta": beta }));
            }
        }
        bounded.push(b);
    }
    Ok(with_report(
        &report,
        json!({
            "summary": mat.summary(),
            "bounded_topes": bounded,
            "refined": refined_formula(m)?,
            "topes": m.topes().len(),
        }),
    ))
}
