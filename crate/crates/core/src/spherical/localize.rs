use std::collections::BTreeSet;

use thiserror::Error;

use super::{Color, ColorKind, Divisor, SimpleRootType, SphericalSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalizeError {
    #[error("spherical root index {0} is out of range")]
    NotASubset(usize),
    #[error("pullback of color {color} is not determined by the weight condition ({solutions} solutions); annotate it explicitly")]
    PullbackAmbiguity { color: String, solutions: usize },
    #[error("pullback of color {color} changes its weight")]
    WeightMismatch { color: String },
}

/// Pullback of divisors along a localization: `images[D]` lists the colors
/// of the localized system (with multiplicities) that `q(D)` is supported on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub images: Vec<Vec<(usize, u64)>>,
    pub target_len: usize,
}

impl Pullback {
    pub fn apply(&self, d: &Divisor) -> Divisor {
        let mut out = Divisor::zero(self.target_len);
        for (i, &m) in d.mult.iter().enumerate() {
            for &(j, k) in &self.images[i] {
                out.mult[j] += m * k;
            }
        }
        out
    }

    pub fn compose(&self, then: &Pullback) -> Pullback {
        let images = self
            .images
            .iter()
            .map(|img| {
                let mut acc = vec![0u64; then.target_len];
                for &(j, k) in img {
                    for &(l, m) in &then.images[j] {
                        acc[l] += k * m;
                    }
                }
                acc.iter().enumerate().filter(|(_, &m)| m > 0).map(|(l, &m)| (l, m)).collect()
            })
            .collect();
        Pullback { images, target_len: then.target_len }
    }
}

/// Localization at the spherical roots with indices `subset`.
pub fn localize(
    sys: &SphericalSystem,
    subset: &BTreeSet<usize>,
) -> Result<(SphericalSystem, Pullback), LocalizeError> {
    if let Some(&k) = subset.iter().find(|&&k| k >= sys.sigma.len()) {
        return Err(LocalizeError::NotASubset(k));
    }
    let keep: Vec<usize> = subset.iter().copied().collect();
    let sigma: Vec<_> = keep.iter().map(|&k| sys.sigma[k].clone()).collect();
    let kept_simple: BTreeSet<usize> = sys
        .simple_spherical()
        .into_iter()
        .filter(|&a| subset.contains(&sys.sigma_index(&sys.rs.simple_root(a)).unwrap()))
        .collect();
    let a_colors: Vec<Color> = sys
        .colors
        .iter()
        .filter(|c| c.kind == ColorKind::A)
        .filter_map(|c| {
            let moved: BTreeSet<usize> = c.moved_by.intersection(&kept_simple).copied().collect();
            (!moved.is_empty()).then(|| Color {
                id: c.id.clone(),
                kind: ColorKind::A,
                moved_by: moved,
                pairing: keep.iter().map(|&k| c.pairing[k]).collect(),
            })
        })
        .collect();
    let hint = |_: ColorKind, moved: &BTreeSet<usize>| {
        sys.colors.iter().find(|c| c.kind != ColorKind::A && &c.moved_by == moved).map(|c| c.id.clone())
    };
    let local = SphericalSystem::from_a_colors(sys.rs.clone(), sigma, sys.sp.clone(), a_colors, hint);

    let colors_of_local = |alpha: usize| local.colors_of(alpha);
    let mut images = Vec::with_capacity(sys.colors.len());
    for c in &sys.colors {
        let mut img: Vec<(usize, u64)> = vec![];
        let mut push = |j: usize, m: u64| {
            if !img.iter().any(|&(x, _)| x == j) {
                img.push((j, m));
            }
        };
        match c.kind {
            ColorKind::A => {
                for &alpha in &c.moved_by {
                    if kept_simple.contains(&alpha) {
                        push(local.color_index(&c.id).unwrap(), 1);
                    } else {
                        for j in colors_of_local(alpha) {
                            push(j, 1);
                        }
                    }
                }
            }
            ColorKind::TwoA => {
                let alpha = *c.moved_by.iter().next().unwrap();
                let m = if local.root_type(alpha) == SimpleRootType::TwoA { 1 } else { 2 };
                for j in colors_of_local(alpha) {
                    push(j, m);
                }
            }
            ColorKind::B => {
                let sols = weight_solutions(&local, &sys.omega(sys.color_index(&c.id).unwrap()), 2);
                if sols.len() != 1 {
                    return Err(LocalizeError::PullbackAmbiguity { color: c.id.clone(), solutions: sols.len() });
                }
                img = sols.into_iter().next().unwrap();
            }
        }
        img.sort_unstable();
        images.push(img);
    }
    let q = Pullback { images, target_len: local.colors.len() };
    for (i, c) in sys.colors.iter().enumerate() {
        let d = q.apply(&Divisor::single(sys.colors.len(), i));
        if local.omega_of_divisor(&d) != sys.omega(i) {
            return Err(LocalizeError::WeightMismatch { color: c.id.clone() });
        }
    }
    Ok((local, q))
}

/// Non-negative integer combinations of colors of `sys` whose weight is
/// `target`; stops after `limit` solutions.
fn weight_solutions(sys: &SphericalSystem, target: &[i64], limit: usize) -> Vec<Vec<(usize, u64)>> {
    let weights: Vec<Vec<i64>> = (0..sys.colors.len()).map(|i| sys.omega(i)).collect();
    let mut out = vec![];
    let mut current = vec![];
    let mut rest = target.to_vec();
    fn go(
        i: usize,
        weights: &[Vec<i64>],
        rest: &mut Vec<i64>,
        current: &mut Vec<(usize, u64)>,
        out: &mut Vec<Vec<(usize, u64)>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if i == weights.len() {
            if rest.iter().all(|&x| x == 0) {
                out.push(current.clone());
            }
            return;
        }
        go(i + 1, weights, rest, current, out, limit);
        let w = &weights[i];
        let mut k = 0;
        loop {
            if rest.iter().zip(w).any(|(r, x)| r - x < 0) {
                break;
            }
            for (r, x) in rest.iter_mut().zip(w) {
                *r -= x;
            }
            k += 1;
            current.push((i, k));
            go(i + 1, weights, rest, current, out, limit);
            current.pop();
        }
        for (r, x) in rest.iter_mut().zip(w) {
            *r += k as i64 * x;
        }
    }
    go(0, &weights, &mut rest, &mut current, &mut out, limit);
    out
}
