//! Simple roots, Cartan pairings and fundamental-weight bookkeeping.
//!
//! Simple roots are stored in one global Bourbaki order: the components are
//! concatenated and each keeps its own Bourbaki numbering.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod catalogue;

/// Coefficients over the simple roots.
pub type RootVec = Vec<i64>;

/// Coefficients over the fundamental weights.
pub type WeightVec = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinKind {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl DynkinKind {
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            DynkinKind::E6 => Some(6),
            DynkinKind::E7 => Some(7),
            DynkinKind::E8 => Some(8),
            DynkinKind::F4 => Some(4),
            DynkinKind::G2 => Some(2),
            _ => None,
        }
    }

    fn min_rank(self) -> usize {
        match self {
            DynkinKind::A => 1,
            DynkinKind::B | DynkinKind::C => 2,
            DynkinKind::D => 4,
            k => k.fixed_rank().unwrap(),
        }
    }

    pub fn label(self, rank: usize) -> String {
        match self {
            DynkinKind::A => format!("A{rank}"),
            DynkinKind::B => format!("B{rank}"),
            DynkinKind::C => format!("C{rank}"),
            DynkinKind::D => format!("D{rank}"),
            DynkinKind::E6 => "E6".into(),
            DynkinKind::E7 => "E7".into(),
            DynkinKind::E8 => "E8".into(),
            DynkinKind::F4 => "F4".into(),
            DynkinKind::G2 => "G2".into(),
        }
    }

    /// Inverse of [`DynkinKind::label`].
    pub fn parse_label(s: &str) -> Option<(DynkinKind, usize)> {
        let kind = match s {
            "E6" => return Some((DynkinKind::E6, 6)),
            "E7" => return Some((DynkinKind::E7, 7)),
            "E8" => return Some((DynkinKind::E8, 8)),
            "F4" => return Some((DynkinKind::F4, 4)),
            "G2" => return Some((DynkinKind::G2, 2)),
            _ => match s.chars().next()? {
                'A' => DynkinKind::A,
                'B' => DynkinKind::B,
                'C' => DynkinKind::C,
                'D' => DynkinKind::D,
                _ => return None,
            },
        };
        let rank: usize = s[1..].parse().ok()?;
        Some((kind, rank))
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(
            self,
            DynkinKind::A | DynkinKind::D | DynkinKind::E6 | DynkinKind::E7 | DynkinKind::E8
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DynkinComponent {
    pub kind: DynkinKind,
    pub rank: usize,
    pub offset: usize,
}

impl DynkinComponent {
    pub fn indices(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.rank
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices().contains(&i)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("{kind:?} cannot have rank {rank}")]
    BadRank { kind: DynkinKind, rank: usize },
    #[error("simple root index {index} out of range (rank {rank})")]
    OutOfRange { index: usize, rank: usize },
    #[error("weight is not dominant")]
    NotDominant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    components: Vec<DynkinComponent>,
    // cartan[i][j] = <alpha_i^vee, alpha_j>
    cartan: Vec<Vec<i64>>,
    long: Vec<bool>,
}

impl RootSystem {
    pub fn new(parts: &[(DynkinKind, usize)]) -> Result<Self, RootSystemError> {
        let mut components = Vec::with_capacity(parts.len());
        let mut offset = 0;
        for &(kind, rank) in parts {
            let bad = match kind.fixed_rank() {
                Some(r) => r != rank,
                None => rank < kind.min_rank(),
            };
            if bad {
                return Err(RootSystemError::BadRank { kind, rank });
            }
            components.push(DynkinComponent { kind, rank, offset });
            offset += rank;
        }
        let n = offset;
        let mut cartan = vec![vec![0i64; n]; n];
        let mut long = vec![true; n];
        for i in 0..n {
            cartan[i][i] = 2;
        }
        for c in &components {
            let o = c.offset;
            let mut link = |a: usize, b: usize| {
                cartan[o + a][o + b] = -1;
                cartan[o + b][o + a] = -1;
            };
            match c.kind {
                DynkinKind::A | DynkinKind::B | DynkinKind::C => {
                    for a in 0..c.rank - 1 {
                        link(a, a + 1);
                    }
                }
                DynkinKind::D => {
                    for a in 0..c.rank - 2 {
                        link(a, a + 1);
                    }
                    link(c.rank - 3, c.rank - 1);
                }
                DynkinKind::E6 | DynkinKind::E7 | DynkinKind::E8 => {
                    link(0, 2);
                    link(1, 3);
                    for a in 2..c.rank - 1 {
                        link(a, a + 1);
                    }
                }
                DynkinKind::F4 => {
                    link(0, 1);
                    link(1, 2);
                    link(2, 3);
                }
                DynkinKind::G2 => link(0, 1),
            }
            // <long^vee, short> = -1 and <short^vee, long> = -(ratio of squared lengths)
            let r = c.rank;
            match c.kind {
                DynkinKind::B => {
                    cartan[o + r - 1][o + r - 2] = -2;
                    for a in 0..r - 1 {
                        long[o + a] = true;
                    }
                    long[o + r - 1] = false;
                }
                DynkinKind::C => {
                    cartan[o + r - 2][o + r - 1] = -2;
                    for a in 0..r - 1 {
                        long[o + a] = false;
                    }
                    long[o + r - 1] = true;
                }
                DynkinKind::F4 => {
                    cartan[o + 2][o + 1] = -2;
                    long[o + 2] = false;
                    long[o + 3] = false;
                }
                DynkinKind::G2 => {
                    cartan[o][o + 1] = -3;
                    long[o] = false;
                }
                _ => {}
            }
        }
        Ok(RootSystem { components, cartan, long })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn components(&self) -> &[DynkinComponent] {
        &self.components
    }

    pub fn component_of(&self, i: usize) -> &DynkinComponent {
        self.components.iter().find(|c| c.contains(i)).expect("index in range")
    }

    /// `<alpha_i^vee, alpha_j>` with bounds checking.
    pub fn cartan_pairing(&self, i: usize, j: usize) -> Result<i64, RootSystemError> {
        let n = self.rank();
        for index in [i, j] {
            if index >= n {
                return Err(RootSystemError::OutOfRange { index, rank: n });
            }
        }
        Ok(self.cartan[i][j])
    }

    #[inline]
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// `<alpha_i^vee, v>` for `v` in simple-root coordinates.
    pub fn pair(&self, i: usize, v: &[i64]) -> i64 {
        self.cartan[i].iter().zip(v).map(|(c, x)| c * x).sum()
    }

    /// Whether `alpha_i` is long inside its own component (all roots of a
    /// simply laced component count as long).
    pub fn is_long(&self, i: usize) -> bool {
        self.long[i]
    }

    pub fn orthogonal(&self, i: usize, j: usize) -> bool {
        self.cartan[i][j] == 0
    }

    pub fn is_simply_laced(&self) -> bool {
        self.components.iter().all(|c| c.kind.is_simply_laced())
    }

    /// Re-indexing used for double-link components: B and C are numbered
    /// from the end carrying the double link, F4 keeps its Bourbaki order.
    pub fn double_link_order(&self, comp: &DynkinComponent) -> Option<Vec<usize>> {
        match comp.kind {
            DynkinKind::B | DynkinKind::C => Some(comp.indices().rev().collect()),
            DynkinKind::F4 => Some(comp.indices().collect()),
            _ => None,
        }
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    /// Converts a root-lattice vector to fundamental-weight coordinates.
    pub fn root_to_weight(&self, v: &[i64]) -> WeightVec {
        (0..self.rank()).map(|i| self.pair(i, v)).collect()
    }

    pub fn check_dominant(&self, w: &[i64]) -> Result<(), RootSystemError> {
        if w.iter().any(|&x| x < 0) {
            return Err(RootSystemError::NotDominant);
        }
        Ok(())
    }

    /// Display label such as `B5` or `A1xG2`.
    pub fn label(&self) -> String {
        self.components
            .iter()
            .map(|c| c.kind.label(c.rank))
            .collect::<Vec<_>>()
            .join("x")
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn support_of_weight(w: &[i64]) -> Vec<usize> {
    (0..w.len()).filter(|&i| w[i] != 0).collect()
}

pub fn support_of_root(v: &[i64]) -> Vec<usize> {
    support_of_weight(v)
}

/// Writes a root vector as `a1+2a2+a3` (1-based simple roots).
pub fn format_root(v: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        if c != 1 {
            out.push_str(&c.to_string());
        }
        out.push_str(&format!("a{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses the notation produced by [`format_root`].
pub fn parse_root(s: &str, rank: usize) -> Option<RootVec> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut v = vec![0; rank];
    if s == "0" {
        return Some(v);
    }
    for term in s.split('+') {
        let pos = term.find('a')?;
        let coeff: i64 = if pos == 0 { 1 } else { term[..pos].parse().ok()? };
        let idx: usize = term[pos + 1..].parse().ok()?;
        if idx == 0 || idx > rank {
            return None;
        }
        v[idx - 1] += coeff;
    }
    Some(v)
}
