//! Orbits of the wonderful variety and their images in the closure `X_delta`
//! and in its normalization.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::quotients::{self, QuotientError};
use crate::rootsys::catalogue::{self, RootKind};
use crate::rootsys::{support_of_root, RootVec};
use crate::spherical::{localize, Divisor, LocalizeError, SphericalSystem};

/// Default bound on `|Sigma|` for the exhaustive orbit loop.
pub const ORBIT_GUARD: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error(transparent)]
    Localize(#[from] LocalizeError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error("distinguished colors {0:?} avoid the divisor after quotienting")]
    Hypothesis(Vec<String>),
    #[error("{0} spherical roots exceed the orbit guard of {1}")]
    TooLarge(usize, usize),
    #[error("divisor has {got} entries, system has {expected} colors")]
    DivisorLength { expected: usize, got: usize },
    #[error("inconsistent orbit data: {0}")]
    Inconsistency(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    /// The orbit, as the indices of its spherical roots in `Sigma`.
    pub sigma_w: BTreeSet<usize>,
    /// Spherical roots of the image orbit in the normalization.
    pub sigma_zprime: Vec<RootVec>,
    /// The same roots written over `Sigma`.
    pub zprime_over_sigma: Vec<Vec<i64>>,
    /// Spherical roots of the image orbit in `X_delta`.
    pub sigma_z: Vec<RootVec>,
    /// Indices into `sigma_zprime` of the doubled roots.
    pub doubling: Vec<usize>,
    pub class_id: usize,
    pub is_minimal: bool,
}

impl OrbitRecord {
    pub fn doubled_roots(&self) -> Vec<RootVec> {
        self.doubling.iter().map(|&i| self.sigma_zprime[i].clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    pub id: usize,
    /// Sorted spherical roots of the orbit of `X_delta`; the class key.
    pub sigma_z: Vec<RootVec>,
    pub sigma_zprime: Vec<RootVec>,
    pub doubling: Vec<RootVec>,
    /// `Sigma(Z)`, the smallest orbit mapping onto the class.
    pub minimal: BTreeSet<usize>,
    pub maximal: Vec<BTreeSet<usize>>,
    /// Indices into `OrbitTable::records`.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulnessReport {
    /// Largest non-empty distinguished set of colors missing the support, if any.
    pub fd1_violation: Option<BTreeSet<usize>>,
    /// Simple loose roots (as simple-root indices) with equal multiplicities.
    pub fd2_violations: Vec<usize>,
    pub spherically_closed: bool,
}

impl FaithfulnessReport {
    pub fn is_faithful(&self) -> bool {
        self.fd1_violation.is_none() && self.fd2_violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct OrbitTable {
    pub records: Vec<OrbitRecord>,
    pub classes: Vec<OrbitClass>,
    pub faithfulness: FaithfulnessReport,
}

impl OrbitTable {
    /// Every class has an empty doubling set.
    pub fn pipeline_bijective(&self) -> bool {
        self.classes.iter().all(|c| c.doubling.is_empty())
    }

    pub fn doubling_classes(&self) -> Vec<&OrbitClass> {
        self.classes.iter().filter(|c| !c.doubling.is_empty()).collect()
    }
}

pub fn check_faithful(sys: &SphericalSystem, d: &Divisor) -> FaithfulnessReport {
    let supp = d.support();
    let avoiding = quotients::max_distinguished_avoiding(sys, &supp);
    let loose = sys.loose_roots();
    let fd2_violations = loose
        .simple
        .iter()
        .filter_map(|&k| {
            let alpha = sys.sigma[k].iter().position(|&x| x == 1).unwrap();
            let cs = sys.colors_of(alpha);
            (d.n(cs[0]) == d.n(cs[1])).then_some(alpha)
        })
        .collect();
    FaithfulnessReport {
        fd1_violation: (!avoiding.subset.is_empty()).then_some(avoiding.subset),
        fd2_violations,
        spherically_closed: loose.diagram.is_empty(),
    }
}

/// `Sigma(delta)`: loose roots that are not simple, or simple with equal
/// multiplicities on their two colors. Returns indices into `sigma`.
pub fn stabilizer_doubling(sys: &SphericalSystem, d: &Divisor) -> Result<Vec<usize>, OrbitError> {
    let stray = quotients::max_distinguished_avoiding(sys, &d.support());
    if !stray.subset.is_empty() {
        return Err(OrbitError::Hypothesis(stray.subset.iter().map(|&i| sys.colors[i].id.clone()).collect()));
    }
    let loose = sys.loose_roots();
    let mut out: Vec<usize> = loose.diagram.clone();
    for &k in &loose.simple {
        let alpha = sys.sigma[k].iter().position(|&x| x == 1).unwrap();
        let cs = sys.colors_of(alpha);
        if d.n(cs[0]) == d.n(cs[1]) {
            out.push(k);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn orbit_image(sys: &SphericalSystem, d: &Divisor, subset: &BTreeSet<usize>) -> Result<OrbitRecord, OrbitError> {
    if d.mult.len() != sys.colors.len() {
        return Err(OrbitError::DivisorLength { expected: sys.colors.len(), got: d.mult.len() });
    }
    let (w, q) = localize(sys, subset)?;
    let dw = q.apply(d);
    let dstar = quotients::max_distinguished_avoiding(&w, &dw.support());
    let quo = quotients::quotient_system(&w, &dstar)?;
    let z = &quo.result;
    let mut dz = Divisor::zero(z.colors.len());
    for (i, c) in z.colors.iter().enumerate() {
        dz.mult[i] = dw.n(w.color_index(&c.id).expect("quotient keeps color ids"));
    }
    let doubling = stabilizer_doubling(z, &dz)?;
    let keep: Vec<usize> = subset.iter().copied().collect();
    let zprime_over_sigma = quo
        .new_sigma_in_old
        .iter()
        .map(|g| {
            let mut v = vec![0; sys.sigma.len()];
            for (j, &c) in g.iter().enumerate() {
                v[keep[j]] = c;
            }
            v
        })
        .collect();
    let sigma_z = z
        .sigma
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let f = if doubling.contains(&k) { 2 } else { 1 };
            s.iter().map(|x| f * x).collect()
        })
        .collect();
    Ok(OrbitRecord {
        sigma_w: subset.clone(),
        sigma_zprime: z.sigma.clone(),
        zprime_over_sigma,
        sigma_z,
        doubling,
        class_id: 0,
        is_minimal: false,
    })
}

fn sorted(v: &[RootVec]) -> Vec<RootVec> {
    let mut v = v.to_vec();
    v.sort();
    v
}

pub fn all_orbits(sys: &SphericalSystem, d: &Divisor) -> Result<OrbitTable, OrbitError> {
    all_orbits_with_guard(sys, d, ORBIT_GUARD)
}

pub fn all_orbits_with_guard(sys: &SphericalSystem, d: &Divisor, guard: usize) -> Result<OrbitTable, OrbitError> {
    let r = sys.sigma.len();
    if r > guard {
        return Err(OrbitError::TooLarge(r, guard));
    }
    let faithfulness = check_faithful(sys, d);
    let mut records = vec![];
    for mask in 0u64..1 << r {
        let subset: BTreeSet<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
        records.push(orbit_image(sys, d, &subset)?);
    }
    let strict = sys.is_strict();
    let mut groups: BTreeMap<Vec<RootVec>, Vec<usize>> = BTreeMap::new();
    for (i, rec) in records.iter().enumerate() {
        for &k in &rec.doubling {
            if rec.zprime_over_sigma[k].iter().any(|&c| c > 1) {
                return Err(OrbitError::Inconsistency(format!(
                    "doubled root {:?} is not a sum of distinct spherical roots",
                    rec.sigma_zprime[k]
                )));
            }
            if strict {
                check_strict_doubling(sys, rec, k)?;
            }
        }
        groups.entry(sorted(&rec.sigma_z)).or_default().push(i);
    }
    let mut by_zprime: BTreeMap<Vec<RootVec>, &Vec<RootVec>> = BTreeMap::new();
    let mut classes = vec![];
    for (key, members) in &groups {
        let first = &records[members[0]];
        let zprime = sorted(&first.sigma_zprime);
        for &m in members {
            if sorted(&records[m].sigma_zprime) != zprime {
                return Err(OrbitError::Inconsistency("one X-orbit with two normalization orbits".into()));
            }
        }
        if by_zprime.insert(zprime.clone(), key).is_some() {
            return Err(OrbitError::Inconsistency("one normalization orbit with two X-orbits".into()));
        }
        let minimal: BTreeSet<usize> = first
            .zprime_over_sigma
            .iter()
            .flat_map(|g| support_of_root(g))
            .collect();
        let mut found = false;
        for &m in members {
            if !minimal.is_subset(&records[m].sigma_w) {
                return Err(OrbitError::Inconsistency(format!(
                    "minimal orbit {minimal:?} not contained in member {:?}",
                    records[m].sigma_w
                )));
            }
            found |= records[m].sigma_w == minimal;
        }
        if !found {
            return Err(OrbitError::Inconsistency(format!("minimal orbit {minimal:?} does not map onto its class")));
        }
        let mut maximal: Vec<BTreeSet<usize>> = members
            .iter()
            .map(|&m| &records[m].sigma_w)
            .filter(|w| !members.iter().any(|&o| records[o].sigma_w.is_superset(w) && &&records[o].sigma_w != w))
            .cloned()
            .collect();
        maximal.sort();
        classes.push(OrbitClass {
            id: 0,
            sigma_z: key.clone(),
            sigma_zprime: zprime,
            doubling: sorted(&first.doubled_roots()),
            minimal,
            maximal,
            members: members.clone(),
        });
    }
    classes.sort_by(|a, b| b.minimal.len().cmp(&a.minimal.len()).then_with(|| a.minimal.cmp(&b.minimal)));
    for (id, class) in classes.iter_mut().enumerate() {
        class.id = id;
        for &m in &class.members {
            records[m].class_id = id;
            records[m].is_minimal = records[m].sigma_w == class.minimal;
        }
    }
    Ok(OrbitTable { records, classes, faithfulness })
}

fn check_strict_doubling(sys: &SphericalSystem, rec: &OrbitRecord, k: usize) -> Result<(), OrbitError> {
    let gamma = &rec.sigma_zprime[k];
    let doubled: Vec<i64> = gamma.iter().map(|x| 2 * x).collect();
    let is_b2 = matches!(catalogue::match_kind(&sys.rs, &doubled), Some(RootKind::BSecond { .. }));
    let has_b2i = support_of_root(&rec.zprime_over_sigma[k])
        .iter()
        .any(|&s| matches!(catalogue::match_kind(&sys.rs, &sys.sigma[s]), Some(RootKind::BFirst { rank: 2 })));
    if is_b2 && has_b2i {
        Ok(())
    } else {
        Err(OrbitError::Inconsistency(format!(
            "doubled root {gamma:?} of a strict system is not of the expected B type"
        )))
    }
}
