//! Distinguished sets of colors and the quotient systems they define.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{self, feasible_point};
use crate::spherical::{Color, ColorKind, SimpleRootType, SphericalSystem};
use crate::{Rational, RootVec};

/// Default bound on `|Delta|` for exhaustive enumeration.
pub const ENUMERATION_GUARD: usize = 24;

/// Largest box scanned point by point in the freeness check.
const BOX_LIMIT: u64 = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("{0} colors exceed the enumeration guard of {1}")]
    TooManyColors(usize, usize),
    #[error("distinguished subsets are not closed under union")]
    NotUnionClosed,
    #[error("color set {0:?} is not distinguished")]
    NotDistinguished(Vec<String>),
    #[error("kernel monoid is not free: {0}")]
    FreenessViolation(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedSubset {
    /// Color indices.
    pub subset: BTreeSet<usize>,
    /// Positive weights, in the order of `subset`.
    pub witness: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct QuotientSystem {
    pub base: SphericalSystem,
    pub dsub: DistinguishedSubset,
    pub result: SphericalSystem,
    /// Each new spherical root over the old ones.
    pub new_sigma_in_old: Vec<Vec<i64>>,
}

fn q(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// Solves `x_D >= 1` (`D` in `forced`), `x_D >= 0` (other `D` in `vars`),
/// `sum_D x_D c(D, sigma) >= 0` for every spherical root.
fn positive_combination(
    sys: &SphericalSystem,
    vars: &[usize],
    forced: &BTreeSet<usize>,
) -> Option<Vec<Rational>> {
    let mut a = vec![];
    let mut b = vec![];
    for k in 0..sys.sigma.len() {
        a.push(vars.iter().map(|&d| q(sys.colors[d].pairing[k])).collect::<Vec<_>>());
        b.push(Rational::zero());
    }
    for (j, d) in vars.iter().enumerate() {
        if forced.contains(d) {
            let mut row = vec![Rational::zero(); vars.len()];
            row[j] = Rational::one();
            a.push(row);
            b.push(Rational::one());
        }
    }
    feasible_point(&a, &b)
}

pub fn is_distinguished(sys: &SphericalSystem, subset: &BTreeSet<usize>) -> Option<DistinguishedSubset> {
    let vars: Vec<usize> = subset.iter().copied().collect();
    if vars.is_empty() {
        return Some(DistinguishedSubset { subset: BTreeSet::new(), witness: vec![] });
    }
    let x = positive_combination(sys, &vars, subset)?;
    Some(DistinguishedSubset { subset: subset.clone(), witness: x })
}

fn subsets_of(items: &[usize]) -> impl Iterator<Item = BTreeSet<usize>> + '_ {
    (0u64..1 << items.len()).map(move |mask| {
        (0..items.len()).filter(|&i| mask >> i & 1 == 1).map(|i| items[i]).collect()
    })
}

/// Every distinguished subset, ordered by size and then lexicographically.
pub fn enumerate_distinguished(sys: &SphericalSystem) -> Result<Vec<BTreeSet<usize>>, QuotientError> {
    enumerate_distinguished_with_guard(sys, ENUMERATION_GUARD)
}

pub fn enumerate_distinguished_with_guard(
    sys: &SphericalSystem,
    guard: usize,
) -> Result<Vec<BTreeSet<usize>>, QuotientError> {
    let n = sys.colors.len();
    if n > guard {
        return Err(QuotientError::TooManyColors(n, guard));
    }
    let all: Vec<usize> = (0..n).collect();
    let mut found: Vec<BTreeSet<usize>> = subsets_of(&all).filter(|s| is_distinguished(sys, s).is_some()).collect();
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let set: BTreeSet<&BTreeSet<usize>> = found.iter().collect();
    for x in &found {
        for y in &found {
            let u: BTreeSet<usize> = x.union(y).copied().collect();
            if !set.contains(&u) {
                return Err(QuotientError::NotUnionClosed);
            }
        }
    }
    Ok(found)
}

/// The union of all distinguished subsets disjoint from `avoid`.
pub fn max_distinguished_avoiding(sys: &SphericalSystem, avoid: &BTreeSet<usize>) -> DistinguishedSubset {
    let vars: Vec<usize> = (0..sys.colors.len()).filter(|d| !avoid.contains(d)).collect();
    let members: BTreeSet<usize> = vars
        .iter()
        .copied()
        .filter(|&d| positive_combination(sys, &vars, &BTreeSet::from([d])).is_some())
        .collect();
    is_distinguished(sys, &members).expect("sum of witnesses is a witness")
}

fn gcd_normalize(v: &mut [i64]) {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Extreme rays of `{v >= 0 : rows . v = 0}` by double description, as
/// primitive integer vectors.
pub fn kernel_cone_rays(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let mut rays: Vec<Vec<i64>> = (0..dim)
        .map(|i| {
            let mut e = vec![0; dim];
            e[i] = 1;
            e
        })
        .collect();
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    for (k, row) in rows.iter().enumerate() {
        let vals: Vec<i64> = rays.iter().map(|r| dot(row, r)).collect();
        let mut next: Vec<Vec<i64>> = vec![];
        for (r, &v) in rays.iter().zip(&vals) {
            if v == 0 {
                next.push(r.clone());
            }
        }
        for (p, &vp) in rays.iter().zip(&vals) {
            if vp <= 0 {
                continue;
            }
            for (n, &vn) in rays.iter().zip(&vals) {
                if vn >= 0 {
                    continue;
                }
                let mut c: Vec<i64> = p.iter().zip(n).map(|(x, y)| -vn * x + vp * y).collect();
                gcd_normalize(&mut c);
                next.push(c);
            }
        }
        next.sort();
        next.dedup();
        // keep the extreme ones: active constraints must cut out a line
        let done = &rows[..=k];
        next.retain(|r| {
            let mut active: Vec<Vec<i64>> = done.to_vec();
            for i in 0..dim {
                if r[i] == 0 {
                    let mut e = vec![0; dim];
                    e[i] = 1;
                    active.push(e);
                }
            }
            exact::rank::<Rational>(&active) == dim - 1
        });
        rays = next;
    }
    rays
}

fn all_minors_gcd(gens: &[Vec<i64>], dim: usize) -> Rational {
    // gcd of the maximal minors of the dim x k matrix with the generators as columns
    let k = gens.len();
    let rows: Vec<usize> = (0..dim).collect();
    let mut g = Rational::zero();
    let mut choose = vec![];
    fn rec(start: usize, k: usize, rows: &[usize], choose: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
        if choose.len() == k {
            out(choose);
            return;
        }
        for i in start..rows.len() {
            choose.push(rows[i]);
            rec(i + 1, k, rows, choose, out);
            choose.pop();
        }
    }
    rec(0, k, &rows, &mut choose, &mut |sel: &[usize]| {
        let mut m: Vec<Vec<Rational>> = sel.iter().map(|&r| gens.iter().map(|gv| q(gv[r])).collect()).collect();
        let det = determinant(&mut m);
        let a = det.abs().to_integer();
        let cur = g.to_integer();
        g = Rational::from_integer(cur.gcd(&a));
    });
    g
}

fn determinant(m: &mut [Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for i in c + 1..n {
            let f = m[i][c].clone() / m[c][c].clone();
            for j in c..n {
                let d = f.clone() * m[c][j].clone();
                m[i][j] -= d;
            }
        }
    }
    det
}

/// Checks that every lattice point of the kernel cone in a box decomposes
/// over `gens` with non-negative integer coefficients. The box bound covers
/// the fundamental parallelepiped of the generators.
fn check_free(rows: &[Vec<i64>], gens: &[Vec<i64>], dim: usize) -> Result<(), QuotientError> {
    if exact::rank::<Rational>(gens) != gens.len() {
        return Err(QuotientError::FreenessViolation("generators are linearly dependent".into()));
    }
    if gens.is_empty() {
        return Ok(());
    }
    let max_entry = gens.iter().flatten().copied().max().unwrap_or(0);
    let column_sum = (0..dim).map(|j| gens.iter().map(|g| g[j]).sum::<i64>()).max().unwrap_or(0);
    let bound = column_sum.max(2 * max_entry);
    let points = (bound as u64 + 1).checked_pow(dim as u32);
    match points {
        Some(p) if p <= BOX_LIMIT => {
            let mut v = vec![0i64; dim];
            loop {
                let mut i = 0;
                while i < dim && v[i] == bound {
                    v[i] = 0;
                    i += 1;
                }
                if i == dim {
                    break;
                }
                v[i] += 1;
                let in_kernel = rows.iter().all(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() == 0);
                if !in_kernel {
                    continue;
                }
                let coords = exact::coordinates::<Rational>(gens, &v).ok_or_else(|| {
                    QuotientError::FreenessViolation(format!("{v:?} is outside the span of the generators"))
                })?;
                if coords.iter().any(|c| c.is_negative() || !c.is_integer()) {
                    return Err(QuotientError::FreenessViolation(format!("{v:?} has no decomposition")));
                }
            }
            Ok(())
        }
        _ => {
            if all_minors_gcd(gens, dim) == Rational::one() {
                Ok(())
            } else {
                Err(QuotientError::FreenessViolation("generators span a proper sublattice".into()))
            }
        }
    }
}

/// Free generators of `{v in N^Sigma : c(D, v) = 0 for D in dstar}`, in
/// coordinates over `sigma`, sorted in decreasing lexicographic order.
pub fn kernel_monoid_generators(
    sys: &SphericalSystem,
    dstar: &BTreeSet<usize>,
) -> Result<Vec<Vec<i64>>, QuotientError> {
    let dim = sys.sigma.len();
    let rows: Vec<Vec<i64>> = dstar.iter().map(|&d| sys.colors[d].pairing.clone()).collect();
    let mut gens = kernel_cone_rays(&rows, dim);
    gens.sort_by(|a, b| b.cmp(a));
    check_free(&rows, &gens, dim)?;
    Ok(gens)
}

pub fn combine(sys: &SphericalSystem, coords: &[i64]) -> RootVec {
    let mut v = vec![0; sys.rs.rank()];
    for (s, &c) in sys.sigma.iter().zip(coords) {
        for (x, y) in v.iter_mut().zip(s) {
            *x += c * y;
        }
    }
    v
}

pub fn quotient_system(sys: &SphericalSystem, dsub: &DistinguishedSubset) -> Result<QuotientSystem, QuotientError> {
    let gens = kernel_monoid_generators(sys, &dsub.subset)?;
    let sigma: Vec<RootVec> = gens.iter().map(|g| combine(sys, g)).collect();
    let mut sp = sys.sp.clone();
    for alpha in 0..sys.rs.rank() {
        let cs = sys.colors_of(alpha);
        if !cs.is_empty() && cs.iter().all(|c| dsub.subset.contains(c)) {
            sp.insert(alpha);
        }
    }
    let mut result = SphericalSystem { rs: sys.rs.clone(), sigma, sp, colors: vec![] };
    let colors: Vec<Color> = sys
        .colors
        .iter()
        .enumerate()
        .filter(|(i, _)| !dsub.subset.contains(i))
        .map(|(i, c)| {
            let types: Vec<SimpleRootType> = c.moved_by.iter().map(|&a| result.root_type(a)).collect();
            let kind = if types.contains(&SimpleRootType::A) {
                ColorKind::A
            } else if types.contains(&SimpleRootType::TwoA) {
                ColorKind::TwoA
            } else {
                ColorKind::B
            };
            Color {
                id: c.id.clone(),
                kind,
                moved_by: c.moved_by.clone(),
                pairing: gens.iter().map(|g| sys.pairing_on(i, g)).collect(),
            }
        })
        .collect();
    result.colors = colors;
    result.sort_colors();
    Ok(QuotientSystem { base: sys.clone(), dsub: dsub.clone(), result, new_sigma_in_old: gens })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{DynkinKind, RootSystem};

    fn two_root_system() -> SphericalSystem {
        // A1 x A1 x A1 with one color pairing (1, -1) on two roots
        let rs = RootSystem::new(&[(DynkinKind::A, 1), (DynkinKind::A, 1)]).unwrap();
        SphericalSystem {
            rs,
            sigma: vec![vec![1, 0], vec![0, 1]],
            sp: BTreeSet::new(),
            colors: vec![Color { id: "x".into(), kind: ColorKind::A, moved_by: BTreeSet::from([0]), pairing: vec![1, -1] }],
        }
    }

    #[test]
    fn empty_is_distinguished() {
        let s = two_root_system();
        assert!(is_distinguished(&s, &BTreeSet::new()).is_some());
        assert!(is_distinguished(&s, &BTreeSet::from([0])).is_none());
    }

    #[test]
    fn kernel_of_opposite_pair() {
        let s = two_root_system();
        assert_eq!(kernel_monoid_generators(&s, &BTreeSet::from([0])).unwrap(), vec![vec![1, 1]]);
        assert_eq!(kernel_monoid_generators(&s, &BTreeSet::new()).unwrap(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn non_free_kernel_detected() {
        // 2x = y + z type kernel: rays (1,2,0), (1,0,2)... and (1,1,1) is needed
        let rows = vec![vec![2, -1, -1]];
        let mut gens = kernel_cone_rays(&rows, 3);
        gens.sort();
        assert_eq!(gens, vec![vec![1, 0, 2], vec![1, 2, 0]]);
        assert!(check_free(&rows, &gens, 3).is_err());
    }

    #[test]
    fn minors_gcd() {
        assert_eq!(all_minors_gcd(&[vec![1, 1]], 2), Rational::one());
        assert_eq!(all_minors_gcd(&[vec![2, 0], vec![0, 1]], 2), q(2));
    }
}
