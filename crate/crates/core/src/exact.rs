//! Exact linear algebra and LP feasibility over an ordered field.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed};

/// Ordered exact field: `BigRational`, `Rational64`, ...
pub trait ExactScalar: Clone + Ord + Num + Signed + FromPrimitive + Debug {}

impl<T: Clone + Ord + Num + Signed + FromPrimitive + Debug> ExactScalar for T {}

fn lift<T: ExactScalar>(x: i64) -> T {
    T::from_i64(x).expect("integer embeds in the field")
}

pub fn to_field<T: ExactScalar>(rows: &[Vec<i64>]) -> Vec<Vec<T>> {
    rows.iter().map(|r| r.iter().map(|&x| lift(x)).collect()).collect()
}

/// Row-reduces in place and returns the pivot columns.
pub fn row_reduce<T: ExactScalar>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: ExactScalar>(rows: &[Vec<i64>]) -> usize {
    let mut m = to_field::<T>(rows);
    row_reduce(&mut m).len()
}

/// Solves `sum_i x_i * gens[i] = target`, if the generators are independent
/// and the target lies in their span.
pub fn coordinates<T: ExactScalar>(gens: &[Vec<i64>], target: &[i64]) -> Option<Vec<T>> {
    let n = target.len();
    let k = gens.len();
    // augmented matrix with generators as columns
    let mut m: Vec<Vec<T>> = (0..n)
        .map(|row| {
            let mut r: Vec<T> = gens.iter().map(|g| lift(g[row])).collect();
            r.push(lift(target[row]));
            r
        })
        .collect();
    let pivots = row_reduce(&mut m);
    if pivots.contains(&k) || pivots.len() != k {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

/// Finds `y >= 0` with `a * y >= b`, or reports infeasibility.
///
/// Two-phase simplex restricted to phase one, Bland's rule for pivoting.
pub fn feasible_point<T: ExactScalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if m == 0 {
        return Some(vec![T::zero(); n]);
    }
    // columns: y (n), surplus (m), artificial (one per row with b > 0)
    let art_rows: Vec<usize> = (0..m).filter(|&i| b[i].is_positive()).collect();
    let cols = n + m + art_rows.len();
    let mut t: Vec<Vec<T>> = vec![vec![T::zero(); cols + 1]; m];
    let mut basis = vec![0usize; m];
    for i in 0..m {
        let flip = !b[i].is_positive();
        for j in 0..n {
            t[i][j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        // a_i y - s_i = b_i
        t[i][n + i] = if flip { T::one() } else { -T::one() };
        t[i][cols] = if flip { -b[i].clone() } else { b[i].clone() };
        if flip {
            basis[i] = n + i;
        }
    }
    for (k, &i) in art_rows.iter().enumerate() {
        t[i][n + m + k] = T::one();
        basis[i] = n + m + k;
    }
    let is_art = |j: usize| j >= n + m;
    // reduced costs of min sum(artificials)
    let mut cost = vec![T::zero(); cols + 1];
    for j in 0..cols {
        if is_art(j) {
            cost[j] = T::one();
        }
    }
    for &i in &art_rows {
        for j in 0..=cols {
            cost[j] = cost[j].clone() - t[i][j].clone();
        }
    }
    loop {
        let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) else { break };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let lhs = t[i][cols].clone() * t[l][enter].clone();
                    let rhs = t[l][cols].clone() * t[i][enter].clone();
                    if lhs < rhs || (lhs == rhs && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // phase one is bounded below by zero
        let l = leave.expect("phase-one objective is bounded");
        let inv = T::one() / t[l][enter].clone();
        for x in t[l].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m {
            if i != l && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..=cols {
                    let d = f.clone() * t[l][j].clone();
                    t[i][j] = t[i][j].clone() - d;
                }
            }
        }
        let f = cost[enter].clone();
        for j in 0..=cols {
            let d = f.clone() * t[l][j].clone();
            cost[j] = cost[j].clone() - d;
        }
        basis[l] = enter;
    }
    // cost[cols] holds minus the objective value
    if !cost[cols].is_zero() {
        return None;
    }
    let mut y = vec![T::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            y[basis[i]] = t[i][cols].clone();
        }
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank::<BigRational>(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1]]), 2);
        assert_eq!(rank::<Rational64>(&[vec![2, 0], vec![0, 3]]), 2);
        assert_eq!(rank::<Rational64>(&[]), 0);
    }

    #[test]
    fn coordinates_example() {
        let g = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let c = coordinates::<Rational64>(&g, &[1, 2, 1]).unwrap();
        assert_eq!(c, vec![Rational64::from_integer(1), Rational64::from_integer(1)]);
        assert!(coordinates::<Rational64>(&g, &[1, 0, 0]).is_none());
    }

    #[test]
    fn simplex_feasible_and_not() {
        // y1 - y2 >= 1, y2 >= 2
        let a = vec![vec![q(1), q(-1)], vec![q(0), q(1)]];
        let y = feasible_point(&a, &[q(1), q(2)]).unwrap();
        assert!(y[0].clone() - y[1].clone() >= q(1) && y[1] >= q(2));
        // y1 >= 1 and -y1 >= 0
        let a = vec![vec![q(1)], vec![q(-1)]];
        assert!(feasible_point(&a, &[q(1), q(0)]).is_none());
    }

    #[test]
    fn simplex_over_small_rationals() {
        let a = vec![vec![Rational64::from_integer(2), Rational64::from_integer(3)]];
        let y = feasible_point(&a, &[Rational64::from_integer(7)]).unwrap();
        assert!(y[0] * 2 + y[1] * 3 >= Rational64::from_integer(7));
    }
}
