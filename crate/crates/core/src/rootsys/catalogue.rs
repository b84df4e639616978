//! Rank-one spherical roots as coefficient patterns over a typed support.
//!
//! The table lives in `data/spherical_roots.json`. Each record describes a
//! coefficient vector along a Bourbaki ordering of the support (a `head`, a
//! repeated `fill`, a `tail`) and the positions that must lie in `S^p`.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::RootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SupportType {
    A,
    A1xA1,
    B,
    C,
    D,
    E,
    F4,
    G2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    Simple,
    DoubledSimple,
    ASum,
    #[serde(rename = "a1xa1")]
    A1xA1,
    BFirst,
    BSecond,
    GFirst,
    GSecond,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SppRule {
    Empty,
    Positions(Vec<usize>),
    Range { first: usize, trim_end: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Kinds the bijectivity criteria pattern-match on.
    Named,
    /// Entries only needed for validation, transcribed from the rank-one classification.
    External,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PatternRecord {
    pub tag: String,
    pub kind: PatternKind,
    pub support: SupportType,
    pub min_rank: usize,
    #[serde(default)]
    pub max_rank: Option<usize>,
    pub head: Vec<i64>,
    #[serde(default)]
    pub fill: Option<i64>,
    pub tail: Vec<i64>,
    pub spp: SppRule,
    pub source: Source,
}

impl PatternRecord {
    fn coefficients(&self, r: usize) -> Option<Vec<i64>> {
        if r < self.min_rank || self.max_rank.is_some_and(|m| r > m) {
            return None;
        }
        let fixed = self.head.len() + self.tail.len();
        if r < fixed {
            return None;
        }
        let mut v = self.head.clone();
        match self.fill {
            Some(f) => v.extend(std::iter::repeat_n(f, r - fixed)),
            None if r != fixed => return None,
            None => {}
        }
        v.extend(&self.tail);
        Some(v)
    }

    /// 1-based positions (along the support ordering) forced into `S^p`.
    fn spp_positions(&self, r: usize) -> Vec<usize> {
        match &self.spp {
            SppRule::Empty => vec![],
            SppRule::Positions(p) => p.clone(),
            SppRule::Range { first, trim_end } => {
                (*first..=r.saturating_sub(*trim_end)).collect()
            }
        }
    }
}

const CATALOGUE_JSON: &str = include_str!("../../data/spherical_roots.json");

pub fn catalogue() -> &'static [PatternRecord] {
    static CELL: OnceLock<Vec<PatternRecord>> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(CATALOGUE_JSON).expect("bundled catalogue parses"))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootKind {
    Simple,
    DoubledSimple,
    ASum { rank: usize },
    A1xA1,
    BFirst { rank: usize },
    BSecond { rank: usize },
    GFirst,
    GSecond,
    Other(String),
}

impl RootKind {
    pub fn short_name(&self) -> String {
        match self {
            RootKind::Simple => "a".into(),
            RootKind::DoubledSimple => "2a".into(),
            RootKind::ASum { rank } => format!("A{rank}"),
            RootKind::A1xA1 => "A1xA1".into(),
            RootKind::BFirst { rank } => format!("B{rank}^I"),
            RootKind::BSecond { rank } => format!("B{rank}^II"),
            RootKind::GFirst => "G^I".into(),
            RootKind::GSecond => "G^II".into(),
            RootKind::Other(tag) => tag.clone(),
        }
    }
}

/// A catalogue match: the record and the Bourbaki ordering of the support it
/// was matched along (global simple-root indices).
#[derive(Clone, Debug)]
pub struct PatternMatch {
    pub record: &'static PatternRecord,
    pub ordering: Vec<usize>,
}

impl PatternMatch {
    pub fn kind(&self) -> RootKind {
        let r = self.ordering.len();
        match self.record.kind {
            PatternKind::Simple => RootKind::Simple,
            PatternKind::DoubledSimple => RootKind::DoubledSimple,
            PatternKind::ASum => RootKind::ASum { rank: r },
            PatternKind::A1xA1 => RootKind::A1xA1,
            PatternKind::BFirst => RootKind::BFirst { rank: r },
            PatternKind::BSecond => RootKind::BSecond { rank: r },
            PatternKind::GFirst => RootKind::GFirst,
            PatternKind::GSecond => RootKind::GSecond,
            PatternKind::Other => RootKind::Other(self.record.tag.clone()),
        }
    }

    pub fn spp(&self) -> BTreeSet<usize> {
        let r = self.ordering.len();
        self.record
            .spp_positions(r)
            .into_iter()
            .filter(|&p| p >= 1 && p <= r)
            .map(|p| self.ordering[p - 1])
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{root} is not a spherical root compatible with the given S^p")]
pub struct NotSpherical {
    pub root: String,
}

/// Typed shapes of a set of simple roots, each with every Bourbaki ordering
/// realising it.
pub fn support_shapes(rs: &RootSystem, support: &[usize]) -> Vec<(SupportType, Vec<usize>)> {
    let k = support.len();
    let adj = |a: usize, b: usize| rs.cartan(a, b) != 0;
    let mult = |a: usize, b: usize| rs.cartan(a, b) * rs.cartan(b, a);
    // in a multiple link the long end pairs to -1
    let long_end = |a: usize, b: usize| if rs.cartan(a, b) == -1 { a } else { b };
    match k {
        0 => return vec![],
        1 => return vec![(SupportType::A, vec![support[0]])],
        2 => {
            let (a, b) = (support[0], support[1]);
            return match if adj(a, b) { mult(a, b) } else { 0 } {
                0 => vec![(SupportType::A1xA1, vec![a, b]), (SupportType::A1xA1, vec![b, a])],
                1 => vec![(SupportType::A, vec![a, b]), (SupportType::A, vec![b, a])],
                2 => {
                    let l = long_end(a, b);
                    let s = if l == a { b } else { a };
                    vec![(SupportType::B, vec![l, s]), (SupportType::C, vec![s, l])]
                }
                _ => {
                    let l = long_end(a, b);
                    let s = if l == a { b } else { a };
                    vec![(SupportType::G2, vec![s, l])]
                }
            };
        }
        _ => {}
    }
    let neighbours = |a: usize| -> Vec<usize> {
        support.iter().copied().filter(|&b| b != a && adj(a, b)).collect()
    };
    let edges: usize = support.iter().map(|&a| neighbours(a).len()).sum::<usize>() / 2;
    if edges != k - 1 {
        return vec![];
    }
    // walk from `start` away from `prev` along a path
    let walk = |start: usize, prev: Option<usize>| -> Vec<usize> {
        let mut out = vec![start];
        let mut prev = prev;
        let mut cur = start;
        loop {
            let next: Vec<usize> = neighbours(cur).into_iter().filter(|&b| Some(b) != prev).collect();
            if next.len() != 1 {
                break;
            }
            prev = Some(cur);
            cur = next[0];
            out.push(cur);
        }
        out
    };
    let degrees: Vec<usize> = support.iter().map(|&a| neighbours(a).len()).collect();
    if degrees.iter().all(|&d| d <= 2) {
        let ends: Vec<usize> = support
            .iter()
            .zip(&degrees)
            .filter(|(_, &d)| d == 1)
            .map(|(&a, _)| a)
            .collect();
        if ends.len() != 2 {
            return vec![];
        }
        let path = walk(ends[0], None);
        if path.len() != k {
            return vec![];
        }
        let multis: Vec<usize> = (0..k - 1).filter(|&i| mult(path[i], path[i + 1]) > 1).collect();
        match multis.as_slice() {
            [] => {
                let rev: Vec<usize> = path.iter().rev().copied().collect();
                vec![(SupportType::A, path), (SupportType::A, rev)]
            }
            [i] if mult(path[*i], path[*i + 1]) == 2 => {
                let mut p = path.clone();
                if *i == 0 {
                    p.reverse();
                } else if *i != k - 2 {
                    // double link in the middle: F4, oriented from the long end
                    if k != 4 || *i != 1 {
                        return vec![];
                    }
                    if !rs.is_long(p[1]) {
                        p.reverse();
                    }
                    return vec![(SupportType::F4, p)];
                }
                let last = p[k - 1];
                if rs.is_long(last) {
                    vec![(SupportType::C, p)]
                } else {
                    vec![(SupportType::B, p)]
                }
            }
            _ => vec![],
        }
    } else {
        let branch: Vec<usize> = support
            .iter()
            .zip(&degrees)
            .filter(|(_, &d)| d == 3)
            .map(|(&a, _)| a)
            .collect();
        if branch.len() != 1 || degrees.iter().any(|&d| d > 3) {
            return vec![];
        }
        let b = branch[0];
        if neighbours(b).iter().any(|&x| mult(b, x) != 1) {
            return vec![];
        }
        let mut arms: Vec<Vec<usize>> = neighbours(b).into_iter().map(|x| walk(x, Some(b))).collect();
        arms.sort_by_key(|a| a.len());
        let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        if lens[0] == 1 && lens[1] == 1 {
            // D_k: long arm from its far end down to the branch, then the two leaves
            let mut out = vec![];
            let long_arms: Vec<usize> = if lens[2] == 1 { vec![0, 1, 2] } else { vec![2] };
            for &la in &long_arms {
                let leaves: Vec<usize> = (0..3).filter(|&x| x != la).collect();
                for (x, y) in [(leaves[0], leaves[1]), (leaves[1], leaves[0])] {
                    let mut p: Vec<usize> = arms[la].iter().rev().copied().collect();
                    p.push(b);
                    p.push(arms[x][0]);
                    p.push(arms[y][0]);
                    out.push((SupportType::D, p));
                }
            }
            out
        } else if lens[0] == 1 && lens[1] == 2 && (2..=4).contains(&lens[2]) {
            let mut out = vec![];
            let choices: Vec<(usize, usize)> = if lens[2] == 2 { vec![(1, 2), (2, 1)] } else { vec![(1, 2)] };
            for (short, long) in choices {
                let mut p = vec![arms[short][1], arms[0][0], arms[short][0], b];
                p.extend(&arms[long]);
                out.push((SupportType::E, p));
            }
            out
        } else {
            vec![]
        }
    }
}

/// Every catalogue record matching `v` as a coefficient pattern, without
/// looking at `S^p`.
pub fn pattern_matches(rs: &RootSystem, v: &[i64]) -> Vec<PatternMatch> {
    if v.iter().any(|&c| c < 0) {
        return vec![];
    }
    let support = super::support_of_root(v);
    let mut out = vec![];
    for (ty, ordering) in support_shapes(rs, &support) {
        for record in catalogue().iter().filter(|r| r.support == ty) {
            if let Some(coeffs) = record.coefficients(ordering.len()) {
                if ordering.iter().zip(&coeffs).all(|(&i, &c)| v[i] == c) {
                    out.push(PatternMatch { record, ordering: ordering.clone() });
                }
            }
        }
    }
    out
}

/// `S^p(sigma)`: simple roots orthogonal to `v`.
pub fn orthogonal_simple_roots(rs: &RootSystem, v: &[i64]) -> BTreeSet<usize> {
    (0..rs.rank()).filter(|&i| rs.pair(i, v) == 0).collect()
}

/// First catalogue match compatible with `sp`, meaning
/// `S^pp(sigma) ⊆ S^p ⊆ S^p(sigma)`.
pub fn compatible_match(rs: &RootSystem, v: &[i64], sp: &BTreeSet<usize>) -> Option<PatternMatch> {
    let orth = orthogonal_simple_roots(rs, v);
    if !sp.is_subset(&orth) {
        return None;
    }
    pattern_matches(rs, v).into_iter().find(|m| m.spp().is_subset(sp))
}

pub fn classify_spherical_root(
    rs: &RootSystem,
    v: &[i64],
    sp: &BTreeSet<usize>,
) -> Result<RootKind, NotSpherical> {
    compatible_match(rs, v, sp)
        .map(|m| m.kind())
        .ok_or_else(|| NotSpherical { root: super::format_root(v) })
}

/// The pattern kind alone, ignoring `S^p`.
pub fn match_kind(rs: &RootSystem, v: &[i64]) -> Option<RootKind> {
    pattern_matches(rs, v).first().map(|m| m.kind())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::DynkinKind::*;

    fn rs(parts: &[(crate::rootsys::DynkinKind, usize)]) -> RootSystem {
        RootSystem::new(parts).unwrap()
    }

    #[test]
    fn catalogue_loads() {
        assert!(catalogue().len() >= 8);
        for kind in [PatternKind::BFirst, PatternKind::BSecond, PatternKind::GFirst, PatternKind::GSecond] {
            assert!(catalogue().iter().any(|r| r.kind == kind && r.source == Source::Named));
        }
    }

    #[test]
    fn b3_double_link_root() {
        let r = rs(&[(B, 3)]);
        assert_eq!(
            classify_spherical_root(&r, &[0, 1, 1], &BTreeSet::new()),
            Ok(RootKind::BFirst { rank: 2 })
        );
    }

    #[test]
    fn g2_first() {
        let r = rs(&[(G2, 2)]);
        assert_eq!(classify_spherical_root(&r, &[2, 1], &BTreeSet::new()), Ok(RootKind::GFirst));
        assert_eq!(
            classify_spherical_root(&r, &[4, 2], &BTreeSet::from([1])),
            Ok(RootKind::GSecond)
        );
        assert!(classify_spherical_root(&r, &[4, 2], &BTreeSet::new()).is_err());
    }

    #[test]
    fn doubled_and_simple() {
        let r = rs(&[(A, 3)]);
        let none = BTreeSet::new();
        assert_eq!(classify_spherical_root(&r, &[0, 2, 0], &none), Ok(RootKind::DoubledSimple));
        assert_eq!(classify_spherical_root(&r, &[0, 1, 0], &none), Ok(RootKind::Simple));
        assert_eq!(classify_spherical_root(&r, &[1, 0, 1], &none), Ok(RootKind::A1xA1));
        assert!(classify_spherical_root(&r, &[0, 1, 0], &BTreeSet::from([1])).is_err());
    }

    #[test]
    fn s_p_constraints() {
        let r = rs(&[(A, 4)]);
        // a1+a2+a3 needs a2 in S^p
        assert!(classify_spherical_root(&r, &[1, 1, 1, 0], &BTreeSet::new()).is_err());
        assert_eq!(
            classify_spherical_root(&r, &[1, 1, 1, 0], &BTreeSet::from([1])),
            Ok(RootKind::ASum { rank: 3 })
        );
        // a4 is not orthogonal to a1+a2+a3
        assert!(classify_spherical_root(&r, &[1, 1, 1, 0], &BTreeSet::from([1, 3])).is_err());
    }

    #[test]
    fn b2_loose_shape_allowed() {
        let r = rs(&[(B, 2)]);
        assert_eq!(
            classify_spherical_root(&r, &[1, 1], &BTreeSet::from([1])),
            Ok(RootKind::BFirst { rank: 2 })
        );
        assert_eq!(
            classify_spherical_root(&r, &[2, 2], &BTreeSet::from([1])),
            Ok(RootKind::BSecond { rank: 2 })
        );
    }

    #[test]
    fn shapes_of_supports() {
        let r = rs(&[(C, 4)]);
        let s = support_shapes(&r, &[1, 2, 3]);
        assert_eq!(s, vec![(SupportType::C, vec![1, 2, 3])]);
        let r = rs(&[(B, 4)]);
        let s = support_shapes(&r, &[1, 2, 3]);
        assert_eq!(s, vec![(SupportType::B, vec![1, 2, 3])]);
        let r = rs(&[(D, 5)]);
        let s = support_shapes(&r, &[0, 1, 2, 3, 4]);
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|(t, p)| *t == SupportType::D && p[..3] == [0, 1, 2]));
        assert_eq!(support_shapes(&rs(&[(D, 4)]), &[0, 1, 2, 3]).len(), 6);
        let f = rs(&[(F4, 4)]);
        assert_eq!(support_shapes(&f, &[3, 2, 1, 0]), vec![(SupportType::F4, vec![0, 1, 2, 3])]);
        let e = rs(&[(E6, 6)]);
        assert_eq!(support_shapes(&e, &[0, 1, 2, 3, 4, 5]).len(), 2);
    }

    #[test]
    fn external_entries() {
        let none = BTreeSet::new();
        let d = rs(&[(D, 5)]);
        assert!(classify_spherical_root(&d, &[2, 2, 2, 1, 1], &BTreeSet::from([1, 2, 3, 4])).is_ok());
        let f = rs(&[(F4, 4)]);
        assert!(classify_spherical_root(&f, &[1, 2, 3, 2], &BTreeSet::from([0, 1, 2])).is_ok());
        let b = rs(&[(B, 3)]);
        assert!(classify_spherical_root(&b, &[1, 2, 3], &BTreeSet::from([0, 1])).is_ok());
        assert!(classify_spherical_root(&b, &[1, 2, 3], &none).is_err());
    }
}
