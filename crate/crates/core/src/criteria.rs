//! Closed-form bijectivity criteria for the normalization of `X_delta`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::orbits::{self, check_faithful, OrbitError, OrbitTable};
use crate::quotients::is_distinguished;
use crate::rootsys::catalogue::{classify_spherical_root, RootKind};
use crate::rootsys::{format_root, DynkinComponent, DynkinKind, RootSystem, RootSystemError};
use crate::spherical::{Divisor, SphericalSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("spherical root {0} is not of type B2^I")]
    NotB2First(String),
    #[error("the spherical system is not strict")]
    NotStrict,
    #[error("the divisor is not faithful")]
    NotFaithful,
    #[error("weight must be dominant and nonzero")]
    BadWeight,
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

impl From<RootSystemError> for CriteriaError {
    fn from(_: RootSystemError) -> Self {
        CriteriaError::BadWeight
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    B1,
    B2,
    C1,
    C2,
    F1,
    F2,
    F3,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeClassification {
    /// Index of the root in `sigma`.
    pub sigma: usize,
    pub component: DynkinComponent,
    pub shape: Shape,
    pub m_sigma: Option<usize>,
    /// `D_1, ..., D_m` along the double-link numbering (color indices).
    pub chain_colors: Vec<usize>,
    pub d_sharp: usize,
    pub d_flat: usize,
    /// Whether `{D_flat, D_sharp}` contains a non-empty distinguished subset.
    pub pair_distinguished: bool,
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// The spherical root, simple root or component the failure refers to.
    pub at: String,
    pub clause: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub bijective: Answer,
    pub witnesses: Vec<Witness>,
}

/// Minimum over an optional set, `None` standing for `+inf`.
fn ext_ge_minus_one(o: Option<usize>, e: Option<usize>) -> bool {
    match (o, e) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(o), Some(e)) => o + 1 >= e,
    }
}

fn unit_sum(rank: usize, parts: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; rank];
    for &(i, c) in parts {
        v[i] += c;
    }
    v
}

pub fn shape_classify(sys: &SphericalSystem, k: usize) -> Result<ShapeClassification, CriteriaError> {
    let rs = &sys.rs;
    let n = rs.rank();
    let sigma = &sys.sigma[k];
    if classify_spherical_root(rs, sigma, &sys.sp).ok() != Some(RootKind::BFirst { rank: 2 }) {
        return Err(CriteriaError::NotB2First(format_root(sigma)));
    }
    if !sys.is_strict() {
        return Err(CriteriaError::NotStrict);
    }
    let support: Vec<usize> = (0..n).filter(|&i| sigma[i] != 0).collect();
    let (sharp, flat) = if rs.is_long(support[0]) { (support[0], support[1]) } else { (support[1], support[0]) };
    let d_sharp = sys.colors_of(sharp)[0];
    let d_flat = sys.colors_of(flat)[0];
    let component = *rs.component_of(sharp);
    let pair_distinguished = [vec![d_flat], vec![d_sharp], vec![d_flat, d_sharp]]
        .iter()
        .any(|s| is_distinguished(sys, &s.iter().copied().collect()).is_some());

    let has = |v: Vec<i64>| sys.sigma_index(&v).is_some();
    let is_a2 = |s: &Vec<i64>| classify_spherical_root(rs, s, &sys.sp).ok() == Some(RootKind::ASum { rank: 2 });
    let a2_count = |alpha: usize| sys.sigma.iter().filter(|s| is_a2(s) && s[alpha] != 0).count();
    let chain: Vec<usize> = rs
        .double_link_order(&component)
        .unwrap_or_default()
        .into_iter()
        .filter(|a| !sys.sp.contains(a))
        .collect();
    let a2_on = |i: usize, j: usize| i < chain.len() && j < chain.len() && has(unit_sum(n, &[(chain[i], 1), (chain[j], 1)]));

    let mut note = None;
    let mut shape = Shape::Other;
    match component.kind {
        DynkinKind::B if chain.len() >= 3 && chain[0] == flat && chain[1] == sharp && a2_on(1, 2) => {
            shape = if has(unit_sum(n, &[(flat, 2)])) { Shape::B1 } else { Shape::B2 };
        }
        DynkinKind::C if chain.len() >= 2 && chain[0] == sharp && chain[1] == flat => {
            if has(unit_sum(n, &[(flat, 2)])) {
                note = Some("type C with the doubled short root spherical".into());
            } else if a2_on(1, 2) {
                shape = Shape::C1;
            } else if sys.sigma.iter().any(|s| {
                s[flat] == 1
                    && classify_spherical_root(rs, s, &sys.sp).ok() == Some(RootKind::A1xA1)
            }) {
                shape = Shape::C2;
            }
        }
        DynkinKind::F4 => {
            let o = component.offset;
            let e = |i: usize| o + i;
            if has(unit_sum(n, &[(e(0), 1), (e(1), 1)])) && has(unit_sum(n, &[(e(2), 1), (e(3), 1)])) {
                shape = Shape::F1;
            } else if has(unit_sum(n, &[(e(0), 1), (e(3), 1)])) {
                shape = Shape::F2;
            } else if has(unit_sum(n, &[(e(0), 1), (e(1), 1)])) && has(unit_sum(n, &[(e(2), 2)])) {
                shape = Shape::F3;
            }
        }
        _ => {}
    }
    let mut m_sigma = None;
    if matches!(shape, Shape::B1 | Shape::B2 | Shape::C1) {
        m_sigma = (3..=chain.len()).find(|&m| a2_count(chain[m - 1]) == 1);
        if m_sigma.is_none() {
            note = Some(format!("no chain end found for {:?}", shape));
            shape = Shape::Other;
        }
    }
    let chain_colors = match m_sigma {
        Some(m) => chain[..m].iter().map(|&a| sys.colors_of(a)[0]).collect(),
        None => vec![],
    };
    if shape == Shape::Other && note.is_none() {
        note = Some("no listed shape matches".into());
    }
    Ok(ShapeClassification {
        sigma: k,
        component,
        shape,
        m_sigma,
        chain_colors,
        d_sharp,
        d_flat,
        pair_distinguished,
        note,
    })
}

/// Evaluates the clause of the strict-case theorem for one root; returns
/// the clause label and whether it holds.
pub fn clause_holds(sys: &SphericalSystem, cls: &ShapeClassification, supp: &BTreeSet<usize>) -> (&'static str, bool) {
    let in_supp = |d: usize| supp.contains(&d);
    let indexed: Vec<(usize, usize)> = cls.chain_colors.iter().enumerate().map(|(i, &d)| (i + 1, d)).collect();
    let e = indexed.iter().find(|(k, d)| k % 2 == 0 && in_supp(*d)).map(|p| p.0);
    let o = indexed.iter().find(|(k, d)| k % 2 == 1 && in_supp(*d)).map(|p| p.0);
    match cls.shape {
        Shape::B1 => {
            let m = cls.m_sigma.unwrap();
            let chain: Vec<usize> = sys
                .rs
                .double_link_order(&cls.component)
                .unwrap()
                .into_iter()
                .filter(|a| !sys.sp.contains(a))
                .collect();
            let next_supported = m < chain.len() && sys.sigma.iter().any(|s| s[chain[m]] != 0);
            let parity = !next_supported || m % 2 == 1;
            ("i", in_supp(cls.d_flat) || (e.is_none() && parity))
        }
        Shape::B2 => ("ii", in_supp(cls.d_flat)),
        Shape::C1 => ("iii", e.is_some() && ext_ge_minus_one(o, e)),
        _ => ("iv", !in_supp(cls.d_sharp) || in_supp(cls.d_flat)),
    }
}

pub fn strict_bijectivity(sys: &SphericalSystem, d: &Divisor) -> Result<Verdict, CriteriaError> {
    if !sys.is_strict() {
        return Err(CriteriaError::NotStrict);
    }
    if !check_faithful(sys, d).is_faithful() {
        return Err(CriteriaError::NotFaithful);
    }
    let supp = d.support();
    let mut witnesses = vec![];
    for k in 0..sys.sigma.len() {
        if classify_spherical_root(&sys.rs, &sys.sigma[k], &sys.sp).ok() != Some(RootKind::BFirst { rank: 2 }) {
            continue;
        }
        let cls = shape_classify(sys, k)?;
        let (clause, ok) = clause_holds(sys, &cls, &supp);
        if !ok {
            witnesses.push(Witness {
                at: format_root(&sys.sigma[k]),
                clause: clause.into(),
                detail: format!(
                    "shape {:?}, D_flat = {}, D_sharp = {}{}",
                    cls.shape,
                    sys.colors[cls.d_flat].id,
                    sys.colors[cls.d_sharp].id,
                    cls.m_sigma.map(|m| format!(", m = {m}")).unwrap_or_default()
                ),
            });
        }
    }
    let bijective = if witnesses.is_empty() { Answer::Yes } else { Answer::No };
    Ok(Verdict { bijective, witnesses })
}

/// The criterion for closures of highest-weight orbits in model varieties.
pub fn model_bijectivity(rs: &RootSystem, lambda: &[i64]) -> Result<Verdict, CriteriaError> {
    rs.check_dominant(lambda)?;
    if lambda.iter().all(|&x| x == 0) || lambda.len() != rs.rank() {
        return Err(CriteriaError::BadWeight);
    }
    let mut witnesses = vec![];
    for comp in rs.components() {
        let Some(order) = rs.double_link_order(comp) else { continue };
        let in_supp = |k: usize| lambda[order[k - 1]] != 0;
        let label = comp.kind.label(comp.rank);
        let r = order.len();
        let e = (1..=r).find(|&k| k % 2 == 0 && in_supp(k));
        let o = (1..=r).find(|&k| k % 2 == 1 && in_supp(k));
        let (clause, ok) = match comp.kind {
            DynkinKind::B => ("i", in_supp(1) || e.is_none()),
            DynkinKind::C => ("ii", ext_ge_minus_one(o, e)),
            DynkinKind::F4 => ("iii", !in_supp(2) || in_supp(3)),
            _ => continue,
        };
        if !ok {
            witnesses.push(Witness { at: label, clause: clause.into(), detail: format!("e = {e:?}, o = {o:?}") });
        }
    }
    let bijective = if witnesses.is_empty() { Answer::Yes } else { Answer::No };
    Ok(Verdict { bijective, witnesses })
}

/// Sufficient conditions outside the strict case; `Unknown` when neither
/// applies.
pub fn nonstrict_sufficient(sys: &SphericalSystem, d: &Divisor) -> Verdict {
    let mut witnesses = vec![];
    let mut all_unequal = true;
    for alpha in sys.simple_spherical() {
        let cs = sys.colors_of(alpha);
        let (p, m) = (d.n(cs[0]), d.n(cs[1]));
        if p == m {
            all_unequal = false;
            if p != 0 {
                witnesses.push(Witness {
                    at: format!("a{}", alpha + 1),
                    clause: "i".into(),
                    detail: format!("n({}) = n({}) = {p}", sys.colors[cs[0]].id, sys.colors[cs[1]].id),
                });
            }
        }
    }
    let bijective = if !witnesses.is_empty() {
        Answer::No
    } else if sys.rs.is_simply_laced() && all_unequal {
        Answer::Yes
    } else {
        Answer::Unknown
    };
    Verdict { bijective, witnesses }
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub table: OrbitTable,
    pub pipeline_bijective: bool,
    pub closed_form: Verdict,
    pub strict: bool,
    pub consistent: bool,
}

impl ConsistencyReport {
    /// The closed-form answer when decisive, otherwise the pipeline's.
    pub fn final_answer(&self) -> Answer {
        match self.closed_form.bijective {
            Answer::Unknown if self.pipeline_bijective => Answer::Yes,
            Answer::Unknown => Answer::No,
            a => a,
        }
    }
}

pub fn cross_check(sys: &SphericalSystem, d: &Divisor) -> Result<ConsistencyReport, CriteriaError> {
    let table = orbits::all_orbits(sys, d)?;
    let pipeline_bijective = table.pipeline_bijective();
    let strict = sys.is_strict();
    let closed_form = if strict { strict_bijectivity(sys, d)? } else { nonstrict_sufficient(sys, d) };
    let consistent = match closed_form.bijective {
        Answer::Yes => pipeline_bijective,
        Answer::No => !pipeline_bijective,
        Answer::Unknown => true,
    };
    Ok(ConsistencyReport { table, pipeline_bijective, closed_form, strict, consistent })
}
