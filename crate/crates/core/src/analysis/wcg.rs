//! Weakly convex graph test.
//!
//! Tier 1 applies the two sufficient conditions (convex graph, common value).
//! Tier 2 decides the definition exactly for all domain subsets of size at
//! most `k_max`: some selection `y_j ∈ T(x_j)` must have every lattice point
//! of `co{(x_j, y_j)}` inside `Gr(T)`.

use alloc::vec::Vec;

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::geometry::{in_convex_hull, is_grid_convex};
use crate::space::ProductSpace;
use crate::subset::ProductSubset;

pub const DEFAULT_K_MAX: usize = 3;
pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum WcgMode {
    ConvexGraph,
    CommonValue,
    Bounded { k_max: usize },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WcgVerdict {
    pub holds: bool,
    pub mode: WcgMode,
    /// Domain subset admitting no good selection.
    pub witness: Option<Vec<usize>>,
}

fn graph_space(t: &Correspondence) -> ProductSpace {
    let mut f = t.domain().factors().to_vec();
    f.extend_from_slice(t.codomain().factors());
    ProductSpace::new(f)
}

fn graph_set(t: &Correspondence, mask: Option<&ProductSubset>) -> ProductSubset {
    let ny = t.codomain().len();
    let mut g = ProductSubset::empty(t.domain().len() * ny);
    for (x, y) in t.graph() {
        if mask.is_none_or(|m| m.contains(x)) {
            g.insert(x * ny + y);
        }
    }
    g
}

/// Tier 1 only; `None` when neither sufficient condition applies.
pub fn wcg_tier1(t: &Correspondence, mask: Option<&ProductSubset>) -> Option<WcgMode> {
    let in_mask = |x: usize| mask.is_none_or(|m| m.contains(x));
    if !t.common_value(mask).is_empty() {
        return Some(WcgMode::CommonValue);
    }
    let total = t.domain().iter().filter(|&x| in_mask(x)).all(|x| !t.value(x).is_empty());
    let joint = graph_space(t);
    if total && joint.is_grid() && is_grid_convex(&joint, &graph_set(t, mask)).unwrap_or(false) {
        return Some(WcgMode::ConvexGraph);
    }
    None
}

/// Tiered WCG check over the domain points in `mask` (all points if `None`).
pub fn is_wcg(t: &Correspondence, mask: Option<&ProductSubset>, k_max: usize, budget: u64) -> Result<WcgVerdict> {
    if let Some(mode) = wcg_tier1(t, mask) {
        return Ok(WcgVerdict {
            holds: true,
            mode,
            witness: None,
        });
    }
    wcg_tier2(t, mask, k_max, budget)
}

/// Tier 2 alone.
pub fn wcg_tier2(t: &Correspondence, mask: Option<&ProductSubset>, k_max: usize, budget: u64) -> Result<WcgVerdict> {
    let joint = graph_space(t);
    if !joint.is_grid() {
        return Err(Error::UnsupportedSpace(
            "the exact weakly-convex-graph search needs grid domain and codomain".into(),
        ));
    }
    let domain: Vec<usize> = t.domain().iter().filter(|&x| mask.is_none_or(|m| m.contains(x))).collect();
    let mut search = Search {
        t,
        joint: &joint,
        graph: graph_set(t, mask),
        ny: t.codomain().len(),
        budget,
        spent: 0,
        subsets: 0,
    };
    for k in 1..=k_max.min(domain.len()) {
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            let xs: Vec<usize> = pick.iter().map(|&p| domain[p]).collect();
            search.subsets += 1;
            match search.has_selection(&xs) {
                Ok(true) => {}
                Ok(false) => {
                    return Ok(WcgVerdict {
                        holds: false,
                        mode: WcgMode::Bounded { k_max },
                        witness: Some(xs),
                    })
                }
                Err(()) => {
                    return Err(Error::BudgetExceeded {
                        budget,
                        subsets_checked: search.subsets,
                        complete_k: k - 1,
                    })
                }
            }
            if !next_combination(&mut pick, domain.len()) {
                break;
            }
        }
    }
    Ok(WcgVerdict {
        holds: true,
        mode: WcgMode::Bounded { k_max },
        witness: None,
    })
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    let mut j = k;
    while j > 0 {
        j -= 1;
        if pick[j] < n - k + j {
            pick[j] += 1;
            for l in j + 1..k {
                pick[l] = pick[l - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

struct Search<'a> {
    t: &'a Correspondence,
    joint: &'a ProductSpace,
    graph: ProductSubset,
    ny: usize,
    budget: u64,
    spent: u64,
    subsets: u64,
}

impl Search<'_> {
    fn charge(&mut self, n: u64) -> core::result::Result<(), ()> {
        self.spent += n;
        if self.spent > self.budget {
            Err(())
        } else {
            Ok(())
        }
    }

    fn member(&self, lattice: &[i64]) -> bool {
        self.joint
            .index_of_lattice(lattice)
            .is_some_and(|idx| self.graph.contains(idx))
    }

    fn segment_ok(&mut self, p: &[i64], q: &[i64]) -> core::result::Result<bool, ()> {
        let v: Vec<i64> = p.iter().zip(q).map(|(a, b)| b - a).collect();
        let g = v.iter().fold(0, |acc, &c| gcd(acc, c));
        self.charge(g.max(1) as u64)?;
        for s in 1..g {
            let pt: Vec<i64> = p.iter().zip(&v).map(|(a, d)| a + d / g * s).collect();
            if !self.member(&pt) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn hull_ok(&mut self, pts: &[Vec<i64>]) -> core::result::Result<bool, ()> {
        let d = pts[0].len();
        let lo: Vec<i64> = (0..d).map(|j| pts.iter().map(|q| q[j]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..d).map(|j| pts.iter().map(|q| q[j]).max().unwrap()).collect();
        let mut cur = lo.clone();
        loop {
            self.charge(1)?;
            if !self.member(&cur) && in_convex_hull(pts, &cur) {
                return Ok(false);
            }
            let mut j = d;
            loop {
                if j == 0 {
                    return Ok(true);
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

    fn has_selection(&mut self, xs: &[usize]) -> core::result::Result<bool, ()> {
        let options: Vec<Vec<usize>> = xs.iter().map(|&x| self.t.value(x).to_vec()).collect();
        if options.iter().any(Vec::is_empty) {
            return Ok(false);
        }
        let mut chosen: Vec<Vec<i64>> = Vec::with_capacity(xs.len());
        self.extend(xs, &options, &mut chosen)
    }

    fn extend(
        &mut self,
        xs: &[usize],
        options: &[Vec<usize>],
        chosen: &mut Vec<Vec<i64>>,
    ) -> core::result::Result<bool, ()> {
        let j = chosen.len();
        if j == xs.len() {
            return if j >= 3 { self.hull_ok(chosen) } else { Ok(true) };
        }
        for &y in &options[j] {
            let p = self.joint.lattice(xs[j] * self.ny + y).expect("grid");
            let mut ok = true;
            for q in chosen.iter() {
                if !self.segment_ok(q, &p)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                chosen.push(p);
                let found = self.extend(xs, options, chosen)?;
                chosen.pop();
                if found {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::StrategySpace;

    fn line(n: usize, h: f64) -> ProductSpace {
        ProductSpace::single(StrategySpace::interval(0, 0.0, (n - 1) as f64 * h, h).unwrap())
    }

    #[test]
    fn convex_graph_is_tier_one() {
        let s = line(5, 1.0);
        let t = Correspondence::from_fn(s.clone(), s.clone(), |x| {
            ProductSubset::from_indices(5, [x]).unwrap()
        })
        .unwrap();
        let v = is_wcg(&t, None, DEFAULT_K_MAX, DEFAULT_BUDGET).unwrap();
        assert_eq!(v.mode, WcgMode::ConvexGraph);
        assert!(wcg_tier2(&t, None, 3, DEFAULT_BUDGET).unwrap().holds);
    }

    #[test]
    fn disjoint_branches_fail_at_k_two() {
        let s = line(9, 0.25);
        // {0} on the left half, {2} on the right half.
        let t = Correspondence::from_fn(s.clone(), s.clone(), |x| {
            ProductSubset::from_indices(9, [if x <= 4 { 0 } else { 8 }]).unwrap()
        })
        .unwrap();
        assert_eq!(wcg_tier1(&t, None), None);
        let v = is_wcg(&t, None, DEFAULT_K_MAX, DEFAULT_BUDGET).unwrap();
        assert!(!v.holds);
        assert_eq!(v.mode, WcgMode::Bounded { k_max: 3 });
        assert_eq!(v.witness.as_ref().map(Vec::len), Some(2));
    }

    #[test]
    fn budget_is_reported() {
        let s = line(9, 0.25);
        let t = Correspondence::from_fn(s.clone(), s.clone(), |x| {
            ProductSubset::from_indices(9, [if x % 2 == 0 { 0 } else { 8 }, 4]).unwrap()
        })
        .unwrap();
        let err = wcg_tier2(&t, None, 3, 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 10, .. }));
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut pick = alloc::vec![0, 1];
        let mut n = 1;
        while next_combination(&mut pick, 4) {
            n += 1;
        }
        assert_eq!(n, 6);
    }
}
