//! Spherical systems: spherical roots, parabolic roots and colors with their
//! Cartan pairing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact;
use crate::rootsys::catalogue::{self, RootKind};
use crate::rootsys::{format_root, RootSystem, RootVec, WeightVec};
use crate::Rational;

pub mod diagram;
mod localize;

pub use localize::{localize, LocalizeError, Pullback};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ColorKind {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "2a")]
    TwoA,
    #[serde(rename = "b")]
    B,
}

impl fmt::Display for ColorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColorKind::A => "a",
            ColorKind::TwoA => "2a",
            ColorKind::B => "b",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Color {
    pub id: String,
    pub kind: ColorKind,
    /// Simple roots (0-based) moving this color.
    pub moved_by: BTreeSet<usize>,
    /// `c(D, sigma)` for each spherical root, in the order of `sigma`.
    pub pairing: Vec<i64>,
}

/// How a simple root sits in a spherical system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleRootType {
    Parabolic,
    A,
    TwoA,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalSystem {
    pub rs: RootSystem,
    pub sigma: Vec<RootVec>,
    pub sp: BTreeSet<usize>,
    pub colors: Vec<Color>,
}

/// Non-negative multiplicities on the colors of a fixed system, aligned
/// with `SphericalSystem::colors`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    pub mult: Vec<u64>,
}

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor { mult: vec![0; n] }
    }

    pub fn single(n: usize, color: usize) -> Self {
        let mut d = Self::zero(n);
        d.mult[color] = 1;
        d
    }

    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.mult.len()).filter(|&i| self.mult[i] > 0).collect()
    }

    pub fn n(&self, color: usize) -> u64 {
        self.mult[color]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LooseRoots {
    /// Indices into `sigma` matched by the B-type and G-type loose patterns.
    pub diagram: Vec<usize>,
    /// Indices into `sigma` of simple roots whose two colors pair identically.
    pub simple: Vec<usize>,
}

impl LooseRoots {
    pub fn all(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.diagram.iter().chain(&self.simple).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_empty(&self) -> bool {
        self.diagram.is_empty() && self.simple.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Issue {
    #[error("color {color}: pairing has {got} entries, expected {expected}")]
    PairingLength { color: String, expected: usize, got: usize },
    #[error("duplicate color id {0}")]
    DuplicateId(String),
    #[error("color {color}: moved_by is empty or out of range")]
    MovedBy { color: String },
    #[error("spherical root {index} is zero or has negative or out-of-range coefficients")]
    BadRoot { index: usize },
    #[error("spherical roots {0} and {1} coincide")]
    DuplicateRoot(usize, usize),
    #[error("spherical roots are linearly dependent")]
    Dependent,
    #[error("spherical root {root}: {reason}")]
    Catalogue { root: String, reason: String },
    #[error("simple root a{alpha} moves {got} colors, expected {expected}")]
    ColorCount { alpha: usize, expected: usize, got: usize },
    #[error("color {color} has kind {kind} but is moved by a{alpha}")]
    KindMismatch { color: String, kind: ColorKind, alpha: usize },
    #[error("a{alpha}: c(D+, {root}) + c(D-, {root}) = {got}, expected <a{alpha}^v, {root}> = {expected}")]
    SumIdentity { alpha: usize, root: String, expected: i64, got: i64 },
    #[error("color {color}: <a{alpha}^v, {root}> = {value} is odd")]
    HalfIntegrality { color: String, alpha: usize, root: String, value: i64 },
    #[error("color {color}: c(D, {root}) = {got}, expected {expected}")]
    Pairing { color: String, root: String, expected: i64, got: i64 },
    #[error("color {color}: shared b-type color must be moved by two orthogonal roots whose sum is spherical")]
    Sharing { color: String },
    #[error("b-type roots a{0} and a{1} are orthogonal with spherical sum but move distinct colors")]
    Unshared(usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return writeln!(f, "ok");
        }
        for issue in &self.issues {
            writeln!(f, "- {issue}")?;
        }
        Ok(())
    }
}

impl SphericalSystem {
    /// Builds a system from its type-a colors; the 2a and b colors are
    /// reconstructed. `name_hint` may supply an id for a reconstructed color
    /// from its kind and moved simple roots.
    pub fn from_a_colors(
        rs: RootSystem,
        sigma: Vec<RootVec>,
        sp: BTreeSet<usize>,
        a_colors: Vec<Color>,
        name_hint: impl Fn(ColorKind, &BTreeSet<usize>) -> Option<String>,
    ) -> Self {
        let mut sys = SphericalSystem { rs, sigma, sp, colors: a_colors };
        let n = sys.rs.rank();
        let mut taken: BTreeSet<String> = sys.colors.iter().map(|c| c.id.clone()).collect();
        let mut done = BTreeSet::new();
        let mut extra = vec![];
        for alpha in 0..n {
            if done.contains(&alpha) {
                continue;
            }
            let (kind, moved) = match sys.root_type(alpha) {
                SimpleRootType::Parabolic | SimpleRootType::A => continue,
                SimpleRootType::TwoA => (ColorKind::TwoA, BTreeSet::from([alpha])),
                SimpleRootType::B => {
                    let partner = (alpha + 1..n).find(|&beta| {
                        sys.root_type(beta) == SimpleRootType::B && sys.shares_b_color(alpha, beta)
                    });
                    match partner {
                        Some(beta) => (ColorKind::B, BTreeSet::from([alpha, beta])),
                        None => (ColorKind::B, BTreeSet::from([alpha])),
                    }
                }
            };
            done.extend(moved.iter().copied());
            let mut id = name_hint(kind, &moved).unwrap_or_else(|| default_color_id(&moved));
            while taken.contains(&id) {
                id.push('\'');
            }
            taken.insert(id.clone());
            let pairing = sys.derived_pairing(kind, *moved.iter().next().unwrap());
            extra.push(Color { id, kind, moved_by: moved, pairing });
        }
        sys.colors.extend(extra);
        sys.sort_colors();
        sys
    }

    /// Normal order of colors: by smallest moving simple root, then kind,
    /// then id.
    pub fn sort_colors(&mut self) {
        self.colors.sort_by(|a, b| {
            let ka = (a.moved_by.iter().next().copied(), a.kind, &a.id);
            let kb = (b.moved_by.iter().next().copied(), b.kind, &b.id);
            ka.cmp(&kb)
        });
    }

    /// `<alpha^v, sigma>` (b) or its half (2a), for every spherical root.
    pub fn derived_pairing(&self, kind: ColorKind, alpha: usize) -> Vec<i64> {
        self.sigma
            .iter()
            .map(|s| {
                let v = self.rs.pair(alpha, s);
                if kind == ColorKind::TwoA { v.div_euclid(2) } else { v }
            })
            .collect()
    }

    pub fn sigma_index(&self, v: &[i64]) -> Option<usize> {
        self.sigma.iter().position(|s| s.as_slice() == v)
    }

    pub fn root_type(&self, alpha: usize) -> SimpleRootType {
        if self.sp.contains(&alpha) {
            return SimpleRootType::Parabolic;
        }
        let mut e = self.rs.simple_root(alpha);
        if self.sigma_index(&e).is_some() {
            return SimpleRootType::A;
        }
        e[alpha] = 2;
        if self.sigma_index(&e).is_some() {
            return SimpleRootType::TwoA;
        }
        SimpleRootType::B
    }

    /// Whether b-type roots `alpha`, `beta` share their color: orthogonal with
    /// `alpha + beta` (or its double) spherical.
    pub fn shares_b_color(&self, alpha: usize, beta: usize) -> bool {
        if alpha == beta || !self.rs.orthogonal(alpha, beta) {
            return false;
        }
        let mut v = vec![0; self.rs.rank()];
        v[alpha] = 1;
        v[beta] = 1;
        if self.sigma_index(&v).is_some() {
            return true;
        }
        v[alpha] = 2;
        v[beta] = 2;
        self.sigma_index(&v).is_some()
    }

    /// `Delta(alpha)`: indices of the colors moved by `alpha`.
    pub fn colors_of(&self, alpha: usize) -> Vec<usize> {
        (0..self.colors.len()).filter(|&i| self.colors[i].moved_by.contains(&alpha)).collect()
    }

    pub fn color_index(&self, id: &str) -> Option<usize> {
        self.colors.iter().position(|c| c.id == id)
    }

    /// `S ∩ Sigma` as simple-root indices.
    pub fn simple_spherical(&self) -> Vec<usize> {
        (0..self.rs.rank()).filter(|&a| self.root_type(a) == SimpleRootType::A).collect()
    }

    pub fn omega(&self, color: usize) -> WeightVec {
        let c = &self.colors[color];
        let mut w = vec![0; self.rs.rank()];
        let k = if c.kind == ColorKind::TwoA { 2 } else { 1 };
        for &a in &c.moved_by {
            w[a] += k;
        }
        w
    }

    pub fn omega_of_divisor(&self, d: &Divisor) -> WeightVec {
        let mut w = vec![0; self.rs.rank()];
        for (i, &m) in d.mult.iter().enumerate() {
            if m > 0 {
                for (x, y) in w.iter_mut().zip(self.omega(i)) {
                    *x += m as i64 * y;
                }
            }
        }
        w
    }

    /// `c(D, v)` extended linearly to `v` given in coordinates over `sigma`.
    pub fn pairing_on(&self, color: usize, coords: &[i64]) -> i64 {
        self.colors[color].pairing.iter().zip(coords).map(|(c, x)| c * x).sum()
    }

    pub fn loose_roots(&self) -> LooseRoots {
        let mut out = LooseRoots::default();
        for (k, s) in self.sigma.iter().enumerate() {
            let diagram = catalogue::pattern_matches(&self.rs, s).iter().any(|m| match m.kind() {
                RootKind::BFirst { .. } => self.sp.contains(m.ordering.last().unwrap()),
                RootKind::GFirst => true,
                _ => false,
            });
            if diagram {
                out.diagram.push(k);
            }
        }
        for alpha in self.simple_spherical() {
            let cs = self.colors_of(alpha);
            if cs.len() == 2 && self.colors[cs[0]].pairing == self.colors[cs[1]].pairing {
                out.simple.push(self.sigma_index(&self.rs.simple_root(alpha)).unwrap());
            }
        }
        out
    }

    pub fn is_strict(&self) -> bool {
        self.simple_spherical().is_empty() && self.loose_roots().is_empty()
    }

    pub fn is_spherically_closed(&self) -> bool {
        self.loose_roots().diagram.is_empty()
    }

    pub fn kind_of_root(&self, k: usize) -> Option<RootKind> {
        catalogue::classify_spherical_root(&self.rs, &self.sigma[k], &self.sp).ok()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = vec![];
        let n = self.rs.rank();
        let r = self.sigma.len();
        let fmt_root = |k: usize| format_root(&self.sigma[k]);

        let mut ids = BTreeSet::new();
        for c in &self.colors {
            if !ids.insert(c.id.clone()) {
                issues.push(Issue::DuplicateId(c.id.clone()));
            }
            if c.pairing.len() != r {
                issues.push(Issue::PairingLength { color: c.id.clone(), expected: r, got: c.pairing.len() });
            }
            if c.moved_by.is_empty() || c.moved_by.iter().any(|&a| a >= n) {
                issues.push(Issue::MovedBy { color: c.id.clone() });
            }
        }
        let mut roots_ok = true;
        for (k, s) in self.sigma.iter().enumerate() {
            if s.len() != n || s.iter().any(|&x| x < 0) || s.iter().all(|&x| x == 0) {
                issues.push(Issue::BadRoot { index: k + 1 });
                roots_ok = false;
            }
        }
        if self.sp.iter().any(|&a| a >= n) {
            issues.push(Issue::MovedBy { color: "(S^p)".into() });
            roots_ok = false;
        }
        if !issues.is_empty() || !roots_ok {
            return ValidationReport { issues };
        }
        for i in 0..r {
            for j in i + 1..r {
                if self.sigma[i] == self.sigma[j] {
                    issues.push(Issue::DuplicateRoot(i + 1, j + 1));
                }
            }
        }
        if exact::rank::<Rational>(&self.sigma) != r {
            issues.push(Issue::Dependent);
        }
        for k in 0..r {
            if let Err(e) = catalogue::classify_spherical_root(&self.rs, &self.sigma[k], &self.sp) {
                issues.push(Issue::Catalogue { root: fmt_root(k), reason: e.to_string() });
            }
        }

        for alpha in 0..n {
            let ty = self.root_type(alpha);
            let cs = self.colors_of(alpha);
            let expected = match ty {
                SimpleRootType::Parabolic => 0,
                SimpleRootType::A => 2,
                SimpleRootType::TwoA | SimpleRootType::B => 1,
            };
            if cs.len() != expected {
                issues.push(Issue::ColorCount { alpha: alpha + 1, expected, got: cs.len() });
            }
            let want = match ty {
                SimpleRootType::Parabolic => None,
                SimpleRootType::A => Some(ColorKind::A),
                SimpleRootType::TwoA => Some(ColorKind::TwoA),
                SimpleRootType::B => Some(ColorKind::B),
            };
            for &ci in &cs {
                let c = &self.colors[ci];
                if Some(c.kind) != want {
                    issues.push(Issue::KindMismatch { color: c.id.clone(), kind: c.kind, alpha: alpha + 1 });
                }
            }
            if ty == SimpleRootType::A && cs.len() == 2 {
                for k in 0..r {
                    let expected = self.rs.pair(alpha, &self.sigma[k]);
                    let got = self.colors[cs[0]].pairing[k] + self.colors[cs[1]].pairing[k];
                    if got != expected {
                        issues.push(Issue::SumIdentity { alpha: alpha + 1, root: fmt_root(k), expected, got });
                    }
                }
            }
        }

        for c in &self.colors {
            match c.kind {
                ColorKind::A => {}
                ColorKind::TwoA => {
                    if c.moved_by.len() != 1 {
                        issues.push(Issue::Sharing { color: c.id.clone() });
                        continue;
                    }
                    let alpha = *c.moved_by.iter().next().unwrap();
                    for k in 0..r {
                        let v = self.rs.pair(alpha, &self.sigma[k]);
                        if v % 2 != 0 {
                            issues.push(Issue::HalfIntegrality {
                                color: c.id.clone(),
                                alpha: alpha + 1,
                                root: fmt_root(k),
                                value: v,
                            });
                        } else if c.pairing[k] != v / 2 {
                            issues.push(Issue::Pairing {
                                color: c.id.clone(),
                                root: fmt_root(k),
                                expected: v / 2,
                                got: c.pairing[k],
                            });
                        }
                    }
                }
                ColorKind::B => {
                    let moved: Vec<usize> = c.moved_by.iter().copied().collect();
                    if moved.len() > 2 || (moved.len() == 2 && !self.shares_b_color(moved[0], moved[1])) {
                        issues.push(Issue::Sharing { color: c.id.clone() });
                    }
                    for &alpha in &moved {
                        for k in 0..r {
                            let expected = self.rs.pair(alpha, &self.sigma[k]);
                            if c.pairing[k] != expected {
                                issues.push(Issue::Pairing {
                                    color: c.id.clone(),
                                    root: fmt_root(k),
                                    expected,
                                    got: c.pairing[k],
                                });
                            }
                        }
                    }
                }
            }
        }
        for alpha in 0..n {
            for beta in alpha + 1..n {
                let both_b = self.root_type(alpha) == SimpleRootType::B && self.root_type(beta) == SimpleRootType::B;
                if both_b && self.shares_b_color(alpha, beta) && self.colors_of(alpha) != self.colors_of(beta) {
                    issues.push(Issue::Unshared(alpha + 1, beta + 1));
                }
            }
        }
        ValidationReport { issues }
    }

    /// Divisor from `(color id, multiplicity)` pairs.
    pub fn divisor(&self, entries: &BTreeMap<String, u64>) -> Result<Divisor, String> {
        let mut d = Divisor::zero(self.colors.len());
        for (id, &m) in entries {
            let i = self.color_index(id).ok_or_else(|| format!("unknown color {id}"))?;
            d.mult[i] = m;
        }
        Ok(d)
    }
}

/// `d3` for a color moved by `a3` alone, `d1_3` for one moved by `a1`, `a3`.
pub fn default_color_id(moved: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = moved.iter().map(|a| (a + 1).to_string()).collect();
    format!("d{}", parts.join("_"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::DynkinKind;

    fn b2_model() -> SphericalSystem {
        let rs = RootSystem::new(&[(DynkinKind::B, 2)]).unwrap();
        SphericalSystem::from_a_colors(rs, vec![vec![1, 1], vec![0, 2]], BTreeSet::new(), vec![], |_, _| None)
    }

    #[test]
    fn reconstruction_kinds() {
        let s = b2_model();
        assert_eq!(s.colors.len(), 2);
        assert_eq!(s.colors[0].kind, ColorKind::B);
        assert_eq!(s.colors[0].pairing, vec![1, -2]);
        assert_eq!(s.colors[1].kind, ColorKind::TwoA);
        assert_eq!(s.colors[1].pairing, vec![0, 2]);
        assert!(s.validate().is_ok(), "{}", s.validate());
        assert!(s.is_strict());
    }

    #[test]
    fn loose_b2() {
        let rs = RootSystem::new(&[(DynkinKind::B, 2)]).unwrap();
        let s = SphericalSystem::from_a_colors(rs, vec![vec![1, 1]], BTreeSet::from([1]), vec![], |_, _| None);
        assert!(s.validate().is_ok(), "{}", s.validate());
        assert_eq!(s.loose_roots().diagram, vec![0]);
        assert!(!s.is_spherically_closed());
    }

    #[test]
    fn shared_b_color() {
        let rs = RootSystem::new(&[(DynkinKind::A, 3)]).unwrap();
        let s = SphericalSystem::from_a_colors(rs, vec![vec![1, 0, 1]], BTreeSet::new(), vec![], |_, _| None);
        assert!(s.validate().is_ok(), "{}", s.validate());
        let shared: Vec<_> = s.colors.iter().filter(|c| c.moved_by.len() == 2).collect();
        assert_eq!(shared.len(), 1);
        assert_eq!(shared[0].id, "d1_3");
        assert_eq!(shared[0].pairing, vec![2]);
    }

    #[test]
    fn omega_of_two_a() {
        let s = b2_model();
        let d = Divisor { mult: vec![0, 2] };
        assert_eq!(s.omega_of_divisor(&d), vec![0, 4]);
        assert_eq!(s.omega_of_divisor(&Divisor::zero(2)), vec![0, 0]);
    }

    #[test]
    fn odd_half_pairing_reported() {
        let rs = RootSystem::new(&[(DynkinKind::A, 2)]).unwrap();
        // 2a1 together with a1+a2 forces <a1^v, a1+a2> = 1 to be halved
        let s = SphericalSystem {
            rs,
            sigma: vec![vec![2, 0], vec![0, 1]],
            sp: BTreeSet::new(),
            colors: vec![
                Color { id: "x".into(), kind: ColorKind::TwoA, moved_by: BTreeSet::from([0]), pairing: vec![2, -1] },
            ],
        };
        let rep = s.validate();
        assert!(rep.issues.iter().any(|i| matches!(i, Issue::HalfIntegrality { .. })));
    }
}
