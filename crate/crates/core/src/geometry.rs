//! Convex hulls of lattice point sets.
//!
//! Grid computations run in lattice-index coordinates: an axis-wise affine
//! image of the real embedding, so convexity is unchanged and the arithmetic
//! on small integers stays exact well past the pivot tolerance.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::space::ProductSpace;
use crate::subset::ProductSubset;

const EPS: f64 = 1e-9;

/// Whether `p` lies in the convex hull of the lattice points `points`.
pub fn in_convex_hull(points: &[Vec<i64>], p: &[i64]) -> bool {
    if points.iter().any(|q| q.as_slice() == p) {
        return true;
    }
    let real: Vec<Vec<f64>> = points.iter().map(|q| q.iter().map(|&v| v as f64).collect()).collect();
    let target: Vec<f64> = p.iter().map(|&v| v as f64).collect();
    in_convex_hull_real(&real, &target)
}

/// Whether `p` lies in the convex hull of `points`, up to a small tolerance.
pub fn in_convex_hull_real(points: &[Vec<f64>], p: &[f64]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = p.len();
    if d == 0 {
        return true;
    }
    for j in 0..d {
        let lo = points.iter().map(|q| q[j]).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|q| q[j]).fold(f64::NEG_INFINITY, f64::max);
        if p[j] < lo - EPS || p[j] > hi + EPS {
            return false;
        }
    }
    if d == 1 {
        return true;
    }
    feasible_combination(points, p)
}

/// Phase-one simplex with Bland's rule on
/// `Σ λ_k (q_k - p) = 0, Σ λ_k = 1, λ ≥ 0`.
fn feasible_combination(points: &[Vec<f64>], p: &[f64]) -> bool {
    let n = points.len();
    let d = p.len();
    let m = d + 1;
    let width = n + m;
    let mut tab = vec![vec![0.0f64; width]; m];
    let mut rhs = vec![0.0f64; m];
    for (k, q) in points.iter().enumerate() {
        for j in 0..d {
            tab[j][k] = q[j] - p[j];
        }
        tab[d][k] = 1.0;
    }
    rhs[d] = 1.0;
    for r in 0..m {
        tab[r][n + r] = 1.0;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut reduced = vec![0.0f64; width];
    for k in 0..n {
        reduced[k] = -(0..m).map(|r| tab[r][k]).sum::<f64>();
    }
    // Bland's rule terminates; the bound is only a guard against float drift.
    for _ in 0..10_000 {
        let Some(enter) = (0..width).find(|&j| reduced[j] < -EPS) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for r in 0..m {
            if tab[r][enter] > EPS {
                let ratio = rhs[r] / tab[r][enter];
                leave = match leave {
                    None => Some(r),
                    Some(l) => {
                        let best = rhs[l] / tab[l][enter];
                        if ratio < best - EPS || (ratio <= best + EPS && basis[r] < basis[l]) {
                            Some(r)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
        }
        let Some(l) = leave else {
            // Unbounded direction cannot occur in a phase-one problem.
            break;
        };
        let piv = tab[l][enter];
        for v in tab[l].iter_mut() {
            *v /= piv;
        }
        rhs[l] /= piv;
        for r in 0..m {
            if r != l {
                let f = tab[r][enter];
                if f != 0.0 {
                    for j in 0..width {
                        tab[r][j] -= f * tab[l][j];
                    }
                    rhs[r] -= f * rhs[l];
                }
            }
        }
        let f = reduced[enter];
        for j in 0..width {
            reduced[j] -= f * tab[l][j];
        }
        basis[l] = enter;
    }
    let infeasibility: f64 = (0..m).filter(|&r| basis[r] >= n).map(|r| rhs[r]).sum();
    infeasibility < 1e-7
}

fn require_grid(space: &ProductSpace) -> Result<()> {
    if space.is_grid() {
        Ok(())
    } else {
        Err(Error::UnsupportedSpace(format!(
            "convexity needs grid factors; {} has an abstract factor",
            space.describe(0)
        )))
    }
}

/// Lattice points of `conv(set)`.
pub fn grid_convex_hull(space: &ProductSpace, set: &ProductSubset) -> Result<ProductSubset> {
    require_grid(space)?;
    let points: Vec<Vec<i64>> = set.iter().map(|x| space.lattice(x).expect("grid")).collect();
    let mut hull = set.clone();
    if points.len() <= 1 {
        return Ok(hull);
    }
    let d = space.dim();
    let lo: Vec<i64> = (0..d).map(|j| points.iter().map(|q| q[j]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|j| points.iter().map(|q| q[j]).max().unwrap()).collect();
    let mut cur = lo.clone();
    loop {
        let idx = space.index_of_lattice(&cur).expect("inside bounding box");
        if !hull.contains(idx) && in_convex_hull(&points, &cur) {
            hull.insert(idx);
        }
        let mut j = d;
        loop {
            if j == 0 {
                return Ok(hull);
            }
            j -= 1;
            if cur[j] < hi[j] {
                cur[j] += 1;
                break;
            }
            cur[j] = lo[j];
        }
    }
}

/// `S = conv(S) ∩ grid`; the empty set is convex.
pub fn is_grid_convex(space: &ProductSpace, set: &ProductSubset) -> Result<bool> {
    Ok(grid_convex_hull(space, set)? == *set)
}

/// First lattice point of `conv(set)` missing from `set`.
pub fn convexity_gap(space: &ProductSpace, set: &ProductSubset) -> Result<Option<usize>> {
    let hull = grid_convex_hull(space, set)?;
    Ok(hull.difference(set).first())
}
