//! Exhaustive residual scans standing in for the fixed-point theorems.

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::solver::selection::DiscreteSelection;
use crate::space::{Profile, ProductSpace};

/// Slack for comparing residuals built from mesh multiples.
const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FixedPointResult {
    pub point: Profile,
    pub residual: f64,
    pub tolerance: f64,
}

/// One mesh step (the coarsest factor's), or 0 with no grid factor.
pub fn default_tolerance(space: &ProductSpace) -> f64 {
    space.max_mesh().unwrap_or(0.0)
}

/// `tol` must be finite and nonnegative, and at least the finest mesh when
/// any factor is a grid.
pub fn check_tolerance(space: &ProductSpace, tol: f64) -> Result<()> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    if let Some(h) = space.min_mesh() {
        if tol + SLACK < h {
            return Err(Error::InvalidTolerance(tol));
        }
    }
    Ok(())
}

/// Lexicographically first minimizer of `residual` over `X`, accepted when
/// within `tol`.
pub fn scan(space: &ProductSpace, tol: f64, mut residual: impl FnMut(usize) -> f64) -> Result<FixedPointResult> {
    check_tolerance(space, tol)?;
    let mut best: Option<(f64, usize)> = None;
    for x in space.iter() {
        let r = residual(x);
        if best.is_none_or(|(b, _)| r < b - SLACK) {
            best = Some((r, x));
            if r == 0.0 {
                break;
            }
        }
    }
    let (r, x) = best.expect("product spaces are nonempty");
    if r > tol + SLACK {
        return Err(Error::NoFixedPoint {
            argmin: space.unflatten(x),
            residual: r,
            tolerance: tol,
        });
    }
    Ok(FixedPointResult {
        point: space.profile(x),
        residual: r,
        tolerance: tol,
    })
}

/// Fixed point of a self-map given as a table over flat profiles.
pub fn fixed_point_of_map(space: &ProductSpace, map: &[usize], tol: f64) -> Result<FixedPointResult> {
    if map.len() != space.len() {
        return Err(Error::SizeMismatch {
            what: "self-map table",
            expected: space.len(),
            found: map.len(),
        });
    }
    scan(space, tol, |x| space.distance(x, map[x]))
}

/// Fixed point of `x ↦ (f_1(x_{-1}), …, f_n(x_{-n}))`.
pub fn fixed_point_of_selections(
    space: &ProductSpace,
    selections: &[DiscreteSelection],
    tol: f64,
) -> Result<FixedPointResult> {
    check_players(space, selections.len())?;
    scan(space, tol, |x| {
        (0..space.arity())
            .map(|i| {
                let (m, xi) = space.split(x, i);
                space.factor(i).distance(xi, selections[i].map[m])
            })
            .fold(0.0, f64::max)
    })
}

/// Point with `x_i` closest to `T_i(x_{-i})`, the residual taken as the
/// largest such distance over players.
pub fn fixed_point_of_correspondences(
    space: &ProductSpace,
    values: &[&Correspondence],
    tol: f64,
) -> Result<FixedPointResult> {
    check_players(space, values.len())?;
    scan(space, tol, |x| {
        (0..space.arity())
            .map(|i| {
                let (m, xi) = space.split(x, i);
                let f = space.factor(i);
                values[i]
                    .value(m)
                    .iter()
                    .map(|y| f.distance(xi, y))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    })
}

fn check_players(space: &ProductSpace, found: usize) -> Result<()> {
    if found != space.arity() {
        return Err(Error::SizeMismatch {
            what: "per-player maps",
            expected: space.arity(),
            found,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::StrategySpace;
    use alloc::vec;

    fn pair() -> ProductSpace {
        ProductSpace::single(StrategySpace::interval(0, 0.0, 1.0, 1.0).unwrap())
    }

    #[test]
    fn identity_returns_first_point() {
        let s = pair();
        let r = fixed_point_of_map(&s, &[0, 1], 1.0).unwrap();
        assert_eq!(r.point, Profile(vec![0]));
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn swap_has_no_fixed_point_below_its_step() {
        let s = ProductSpace::single(StrategySpace::interval(0, 0.0, 2.0, 2.0).unwrap());
        match fixed_point_of_map(&s, &[1, 0], 2.0 - 0.5).unwrap_err() {
            Error::InvalidTolerance(_) => {}
            e => panic!("{e:?}"),
        }
        let abs = ProductSpace::single(StrategySpace::labels(0, ["a", "b"]).unwrap());
        match fixed_point_of_map(&abs, &[1, 0], 0.0).unwrap_err() {
            Error::NoFixedPoint { residual, argmin, .. } => {
                assert_eq!(residual, 1.0);
                assert_eq!(argmin, vec![0]);
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn tolerance_preconditions() {
        let s = pair();
        assert!(check_tolerance(&s, 0.5).is_err());
        assert!(check_tolerance(&s, f64::NAN).is_err());
        assert!(check_tolerance(&s, 1.0).is_ok());
        assert_eq!(default_tolerance(&s), 1.0);
    }
}
