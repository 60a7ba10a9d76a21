//! Piecewise correspondences built the way the existence proofs build them.

use alloc::format;
use alloc::vec::Vec;

use crate::analysis::hypotheses::{inner_correspondence, Aux, Variant};
use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::game::ChoiceFormGame;
use crate::geometry::grid_convex_hull;
use crate::space::ProductSpace;
use crate::subset::ProductSubset;

/// `T_i : X_{-i} → 2^{X_i}`: the inner construction on `W_i`, a fixed
/// hull value elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct ProofCorrespondence {
    pub player: usize,
    pub variant: Variant,
    pub inner: Correspondence,
    pub off_w_value: ProductSubset,
    pub w: ProductSubset,
    pub values: Correspondence,
}

/// Grid-convex hull inside `X_i`; abstract factors have no hull, the set
/// itself is returned.
pub(crate) fn hull_in_factor(factor: &ProductSpace, set: &ProductSubset) -> ProductSubset {
    if factor.is_grid() {
        grid_convex_hull(factor, set).expect("grid factor")
    } else {
        set.clone()
    }
}

fn aux_sets<'a>(
    sets: Option<&'a Vec<ProductSubset>>,
    player: usize,
    condition: &'static str,
    ingredient: &'static str,
    universe: usize,
) -> Result<&'a ProductSubset> {
    let s = sets
        .and_then(|v| v.get(player))
        .ok_or(Error::MissingAux { condition, ingredient })?;
    if s.universe() != universe {
        return Err(Error::SizeMismatch {
            what: ingredient,
            expected: universe,
            found: s.universe(),
        });
    }
    Ok(s)
}

/// Builds the proof correspondence of `variant` for player `i`.
pub fn build_proof_correspondence(
    g: &ChoiceFormGame,
    i: usize,
    variant: Variant,
    aux: &Aux,
) -> Result<ProofCorrespondence> {
    if i >= g.players() {
        return Err(Error::PlayerOutOfRange {
            player: i,
            players: g.players(),
        });
    }
    let space = g.space();
    let minus = space.without(i);
    let factor = ProductSpace::single(space.factor(i).clone());
    let sections = g.section_correspondence(i);
    let w = g.nonempty_sections(i);

    let (inner, condition) = match variant {
        Variant::V1 => {
            let d = aux_sets(aux.dominant.as_ref(), i, "b", "subfamily D_i", space.len())?;
            (inner_correspondence(g, i, d), "b")
        }
        Variant::V2 => {
            let s = aux_sets(aux.inner.as_ref(), i, "c", "WCG correspondence S_i", space.len())?;
            (inner_correspondence(g, i, s), "c")
        }
        Variant::V3 => {
            let s = aux_sets(aux.inner.as_ref(), i, "d", "lower semicontinuous correspondence S_i", space.len())?;
            let s = inner_correspondence(g, i, s);
            let meet = Correspondence::from_fn(minus.clone(), factor.clone(), |m| {
                hull_in_factor(&factor, &sections.value(m).intersection(s.value(m)))
            })?;
            (meet, "d")
        }
        Variant::V4 | Variant::V5 => (sections.clone(), "b"),
    };

    let mut union = ProductSubset::empty(factor.len());
    for m in w.iter() {
        union = union.union(sections.value(m));
    }
    if union.is_empty() {
        return Err(Error::Construction {
            player: i,
            condition: "a",
            detail: format!("C_{i} is nonempty"),
        });
    }
    let off_w_value = hull_in_factor(&factor, &union);

    if let Some(m) = w.iter().find(|&m| inner.value(m).is_empty()) {
        return Err(Error::Construction {
            player: i,
            condition,
            detail: format!("inner value is empty at x_-{i} = {}", minus.describe(m)),
        });
    }
    let values = Correspondence::from_fn(minus, factor, |m| {
        if w.contains(m) {
            inner.value(m).clone()
        } else {
            off_w_value.clone()
        }
    })?;
    Ok(ProofCorrespondence {
        player: i,
        variant,
        inner,
        off_w_value,
        w,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::NormalFormGame;
    use crate::space::StrategySpace;
    use alloc::vec;

    fn line(p: usize) -> StrategySpace {
        StrategySpace::interval(p, 0.0, 2.0, 1.0).unwrap()
    }

    #[test]
    fn full_choice_gives_full_values() {
        let g = ChoiceFormGame::new(vec![line(0), line(1)], vec![ProductSubset::full(9); 2]).unwrap();
        let t = build_proof_correspondence(&g, 0, Variant::V4, &Aux::default()).unwrap();
        assert!(t.values.values().iter().all(ProductSubset::is_full));
    }

    #[test]
    fn single_profile_hull_is_singleton() {
        let c1 = ProductSubset::from_indices(9, [0]).unwrap();
        let g = ChoiceFormGame::new(vec![line(0), line(1)], vec![c1, ProductSubset::full(9)]).unwrap();
        let t = build_proof_correspondence(&g, 0, Variant::V4, &Aux::default()).unwrap();
        assert_eq!(t.off_w_value.to_vec(), vec![0]);
        assert_eq!(t.w.to_vec(), vec![0]);
        assert!(t.values.values().iter().all(|v| v.to_vec() == vec![0]));
    }

    #[test]
    fn prisoners_dilemma_values_are_best_replies() {
        let s = |p| StrategySpace::labels(p, ["C", "D"]).unwrap();
        let u = vec![vec![3.0, 0.0, 5.0, 1.0], vec![3.0, 5.0, 0.0, 1.0]];
        let g = NormalFormGame::new(vec![s(0), s(1)], u, None).unwrap().to_choice_form();
        for i in 0..2 {
            let t = build_proof_correspondence(&g, i, Variant::V4, &Aux::default()).unwrap();
            assert!(t.w.is_full());
            assert!(t.values.values().iter().all(|v| v.to_vec() == vec![1]));
        }
    }

    #[test]
    fn empty_choice_is_a_construction_error() {
        let g = ChoiceFormGame::new(vec![line(0), line(1)], vec![ProductSubset::empty(9), ProductSubset::full(9)])
            .unwrap();
        let err = build_proof_correspondence(&g, 0, Variant::V4, &Aux::default()).unwrap_err();
        assert!(matches!(err, Error::Construction { condition: "a", .. }));
    }
}
