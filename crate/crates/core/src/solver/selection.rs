//! Greedy discrete selections.

use alloc::vec::Vec;

use crate::analysis::topology::GridTopology;
use crate::correspondence::Correspondence;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DiscreteSelection {
    pub player: usize,
    /// `f_i(x_{-i})` as a point of `X_i`, indexed by flat `x_{-i}`.
    pub map: Vec<usize>,
    /// Largest jump of `f_i` between neighbors, in embedding units.
    pub modulus: f64,
}

/// Lexicographic sweep: each `f(x)` minimizes the largest distance to the
/// values already assigned in its neighborhood, ties to the smallest index.
///
/// # Panics
/// If some value of `t` is empty.
pub fn construct_selection(t: &Correspondence, player: usize, topo: GridTopology) -> DiscreteSelection {
    let dom = t.domain();
    let cod = t.codomain();
    let mut map: Vec<usize> = Vec::with_capacity(dom.len());
    for x in dom.iter() {
        let before: Vec<usize> = dom
            .neighbors(x, topo.radius)
            .into_iter()
            .filter(|&z| z < x)
            .map(|z| map[z])
            .collect();
        let mut best: Option<(f64, usize)> = None;
        for y in t.value(x).iter() {
            let cost = before.iter().map(|&v| cod.distance(v, y)).fold(0.0, f64::max);
            if best.is_none_or(|(c, _)| cost < c) {
                best = Some((cost, y));
            }
        }
        map.push(best.expect("selection needs nonempty values").1);
    }
    let mut modulus: f64 = 0.0;
    for x in dom.iter() {
        for z in dom.neighbors(x, topo.radius) {
            modulus = modulus.max(cod.distance(map[x], map[z]));
        }
    }
    DiscreteSelection { player, map, modulus }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{ProductSpace, StrategySpace};
    use crate::subset::ProductSubset;

    fn line() -> ProductSpace {
        ProductSpace::single(StrategySpace::interval(0, 0.0, 2.0, 0.25).unwrap())
    }

    #[test]
    fn constant_value() {
        let t = Correspondence::constant(line(), line(), ProductSubset::from_indices(9, [5]).unwrap()).unwrap();
        let f = construct_selection(&t, 0, GridTopology::default());
        assert!(f.map.iter().all(|&y| y == 5));
        assert_eq!(f.modulus, 0.0);
    }

    #[test]
    fn full_codomain_takes_first_point() {
        let t = Correspondence::constant(line(), line(), ProductSubset::full(9)).unwrap();
        let f = construct_selection(&t, 0, GridTopology::default());
        assert!(f.map.iter().all(|&y| y == 0));
        assert_eq!(f.modulus, 0.0);
    }

    #[test]
    fn shrinking_intervals_select_zero() {
        // T(x) = [0, 2 - x/2]
        let t = Correspondence::from_fn(line(), line(), |x| ProductSubset::from_fn(9, |y| 2 * y <= 16 - x)).unwrap();
        let f = construct_selection(&t, 0, GridTopology::default());
        assert!(f.map.iter().all(|&y| y == 0));
        assert_eq!(f.modulus, 0.0);
    }

    #[test]
    fn follows_the_previous_value() {
        // {8} first, then {0, 4, 8}: the sweep stays at 8.
        let t = Correspondence::from_fn(line(), line(), |x| {
            let v: &[usize] = if x == 0 { &[8] } else { &[0, 4, 8] };
            ProductSubset::from_indices(9, v.iter().copied()).unwrap()
        })
        .unwrap();
        let f = construct_selection(&t, 0, GridTopology::default());
        assert!(f.map.iter().all(|&y| y == 8));
    }
}
