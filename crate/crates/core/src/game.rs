//! The three game classes and the conversions between them.

use alloc::format;
use alloc::vec::Vec;

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::space::{Profile, ProductSpace, StrategySpace};
use crate::subset::ProductSubset;

fn check_player(space: &ProductSpace, i: usize) -> Result<()> {
    if i >= space.arity() {
        Err(Error::PlayerOutOfRange {
            player: i,
            players: space.arity(),
        })
    } else {
        Ok(())
    }
}

fn check_players(spaces: &[StrategySpace]) -> Result<()> {
    if spaces.is_empty() {
        return Err(Error::InvalidSpace("a game needs at least one player".into()));
    }
    for (k, s) in spaces.iter().enumerate() {
        if s.player() != k {
            return Err(Error::InvalidSpace(format!(
                "space at position {k} belongs to player {}",
                s.player()
            )));
        }
    }
    Ok(())
}

/// Upper section `C_i(x_{-i}) = {y_i : (x_{-i}, y_i) ∈ C_i}` as a subset of `X_i`.
pub fn upper_section(space: &ProductSpace, c_i: &ProductSubset, i: usize, minus: usize) -> ProductSubset {
    let n = space.factor(i).len();
    ProductSubset::from_fn(n, |y| c_i.contains(space.join(i, minus, y)))
}

/// `W_i = {x_{-i} : C_i(x_{-i}) ≠ ∅}` as a subset of `X_{-i}`.
pub fn nonempty_sections(space: &ProductSpace, c_i: &ProductSubset, i: usize) -> ProductSubset {
    let mut w = ProductSubset::empty(space.len() / space.factor(i).len());
    for x in c_i.iter() {
        w.insert(space.split(x, i).0);
    }
    w
}

/// Section correspondence `x_{-i} ↦ C_i(x_{-i})` from `X_{-i}` to `X_i`.
pub fn section_correspondence(space: &ProductSpace, c_i: &ProductSubset, i: usize) -> Correspondence {
    let domain = space.without(i);
    let codomain = ProductSpace::single(space.factor(i).clone());
    Correspondence::from_fn(domain, codomain, |m| upper_section(space, c_i, i, m)).expect("sizes agree")
}

/// Inverse of [`section_correspondence`]: the graph `{(x_{-i}, x_i) : x_i ∈ T(x_{-i})}`.
pub fn graph_subset(space: &ProductSpace, i: usize, t: &Correspondence) -> ProductSubset {
    ProductSubset::from_fn(space.len(), |x| {
        let (m, xi) = space.split(x, i);
        t.value(m).contains(xi)
    })
}

/// Game in choice form: strategy spaces plus one choice set `C_i ⊆ X` per player.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiceFormGame {
    space: ProductSpace,
    choice: Vec<ProductSubset>,
}

impl ChoiceFormGame {
    /// The choice sets may be empty; theorems needing nonemptiness check it.
    pub fn new(spaces: Vec<StrategySpace>, choice: Vec<ProductSubset>) -> Result<Self> {
        check_players(&spaces)?;
        let space = ProductSpace::new(spaces);
        Self::from_space(space, choice)
    }

    pub fn from_space(space: ProductSpace, choice: Vec<ProductSubset>) -> Result<Self> {
        if choice.len() != space.arity() {
            return Err(Error::SizeMismatch {
                what: "choice sets",
                expected: space.arity(),
                found: choice.len(),
            });
        }
        if let Some(c) = choice.iter().find(|c| c.universe() != space.len()) {
            return Err(Error::SizeMismatch {
                what: "choice set universe",
                expected: space.len(),
                found: c.universe(),
            });
        }
        Ok(ChoiceFormGame { space, choice })
    }

    /// Builds the choice sets from explicit member profiles.
    pub fn from_profiles(spaces: Vec<StrategySpace>, choice: &[Vec<Profile>]) -> Result<Self> {
        check_players(&spaces)?;
        let space = ProductSpace::new(spaces);
        let sets = choice
            .iter()
            .map(|members| {
                let idx = members
                    .iter()
                    .map(|p| space.flatten(p.as_slice()))
                    .collect::<Result<Vec<_>>>()?;
                ProductSubset::from_indices(space.len(), idx)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_space(space, sets)
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn players(&self) -> usize {
        self.space.arity()
    }

    pub fn choice(&self, i: usize) -> &ProductSubset {
        &self.choice[i]
    }

    pub fn choice_sets(&self) -> &[ProductSubset] {
        &self.choice
    }

    /// `C_i(x_{-i})` for a profile of `X_{-i}`.
    pub fn upper_section(&self, i: usize, x_minus_i: &Profile) -> Result<ProductSubset> {
        check_player(&self.space, i)?;
        let minus = self.space.without(i).flatten(x_minus_i.as_slice())?;
        Ok(upper_section(&self.space, &self.choice[i], i, minus))
    }

    pub(crate) fn section_flat(&self, i: usize, minus: usize) -> ProductSubset {
        upper_section(&self.space, &self.choice[i], i, minus)
    }

    pub fn section_correspondence(&self, i: usize) -> Correspondence {
        section_correspondence(&self.space, &self.choice[i], i)
    }

    pub fn nonempty_sections(&self, i: usize) -> ProductSubset {
        nonempty_sections(&self.space, &self.choice[i], i)
    }

    /// Assumption (A): every profile has a player with a nonempty section.
    pub fn check_assumption_a(&self) -> AssumptionA {
        let w: Vec<ProductSubset> = (0..self.players()).map(|i| self.nonempty_sections(i)).collect();
        for x in self.space.iter() {
            let covered = (0..self.players()).any(|i| w[i].contains(self.space.split(x, i).0));
            if !covered {
                return AssumptionA {
                    holds: false,
                    witness: Some(self.space.profile(x)),
                };
            }
        }
        AssumptionA {
            holds: true,
            witness: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AssumptionA {
    pub holds: bool,
    pub witness: Option<Profile>,
}

/// Normal-form game with utility tables over `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormGame {
    space: ProductSpace,
    utilities: Vec<Vec<f64>>,
    feasible: Vec<ProductSubset>,
}

impl NormalFormGame {
    /// `feasible[i]`, when given, restricts the `x_{-i}` at which `B_i` is nonempty.
    pub fn new(
        spaces: Vec<StrategySpace>,
        utilities: Vec<Vec<f64>>,
        feasible: Option<Vec<Option<ProductSubset>>>,
    ) -> Result<Self> {
        check_players(&spaces)?;
        let space = ProductSpace::new(spaces);
        let n = space.arity();
        if utilities.len() != n {
            return Err(Error::SizeMismatch {
                what: "utility tables",
                expected: n,
                found: utilities.len(),
            });
        }
        for (i, u) in utilities.iter().enumerate() {
            if u.len() != space.len() {
                return Err(Error::SizeMismatch {
                    what: "utility table",
                    expected: space.len(),
                    found: u.len(),
                });
            }
            if let Some(&bad) = u.iter().find(|v| !v.is_finite()) {
                return Err(Error::InvalidUtility { player: i, value: bad });
            }
        }
        let masks = feasible.unwrap_or_else(|| alloc::vec![None; n]);
        if masks.len() != n {
            return Err(Error::SizeMismatch {
                what: "feasibility masks",
                expected: n,
                found: masks.len(),
            });
        }
        let mut feasible = Vec::with_capacity(n);
        for (i, m) in masks.into_iter().enumerate() {
            let others = space.len() / space.factor(i).len();
            let m = m.unwrap_or_else(|| ProductSubset::full(others));
            if m.universe() != others {
                return Err(Error::SizeMismatch {
                    what: "feasibility mask universe",
                    expected: others,
                    found: m.universe(),
                });
            }
            feasible.push(m);
        }
        Ok(NormalFormGame {
            space,
            utilities,
            feasible,
        })
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn players(&self) -> usize {
        self.space.arity()
    }

    pub fn utility(&self, i: usize, x: usize) -> f64 {
        self.utilities[i][x]
    }

    pub fn utilities(&self) -> &[Vec<f64>] {
        &self.utilities
    }

    pub fn feasible(&self, i: usize) -> &ProductSubset {
        &self.feasible[i]
    }

    pub fn has_default_feasibility(&self) -> bool {
        self.feasible.iter().all(ProductSubset::is_full)
    }

    /// `B_i(x_{-i})`: the argmax set (ties kept), empty off the feasibility mask.
    pub fn best_reply(&self, i: usize, x_minus_i: &Profile) -> Result<ProductSubset> {
        check_player(&self.space, i)?;
        let minus = self.space.without(i).flatten(x_minus_i.as_slice())?;
        Ok(self.best_reply_flat(i, minus))
    }

    pub(crate) fn best_reply_flat(&self, i: usize, minus: usize) -> ProductSubset {
        let n = self.space.factor(i).len();
        if !self.feasible[i].contains(minus) {
            return ProductSubset::empty(n);
        }
        let u = |y: usize| self.utilities[i][self.space.join(i, minus, y)];
        let best = (0..n).map(u).fold(f64::NEG_INFINITY, f64::max);
        ProductSubset::from_fn(n, |y| u(y) >= best)
    }

    /// Best-reply choice form: `C_i = Gr(B_i)`.
    pub fn to_choice_form(&self) -> ChoiceFormGame {
        let choice = (0..self.players())
            .map(|i| {
                let others = self.space.len() / self.space.factor(i).len();
                let replies: Vec<ProductSubset> = (0..others).map(|m| self.best_reply_flat(i, m)).collect();
                ProductSubset::from_fn(self.space.len(), |x| {
                    let (m, xi) = self.space.split(x, i);
                    replies[m].contains(xi)
                })
            })
            .collect();
        ChoiceFormGame {
            space: self.space.clone(),
            choice,
        }
    }
}

/// Qualitative game: preference correspondences `P_i : X → 2^{X_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QualitativeGame {
    space: ProductSpace,
    /// Bit `x * |X_i| + y` is set iff `y ∈ P_i(x)`.
    prefs: Vec<ProductSubset>,
}

impl QualitativeGame {
    pub fn new(spaces: Vec<StrategySpace>, prefs: Vec<ProductSubset>) -> Result<Self> {
        check_players(&spaces)?;
        let space = ProductSpace::new(spaces);
        if prefs.len() != space.arity() {
            return Err(Error::SizeMismatch {
                what: "preference correspondences",
                expected: space.arity(),
                found: prefs.len(),
            });
        }
        for (i, p) in prefs.iter().enumerate() {
            let expected = space.len() * space.factor(i).len();
            if p.universe() != expected {
                return Err(Error::SizeMismatch {
                    what: "preference universe",
                    expected,
                    found: p.universe(),
                });
            }
        }
        Ok(QualitativeGame { space, prefs })
    }

    /// Builds `P_i` from `(profile, preferred point)` pairs.
    pub fn from_pairs(spaces: Vec<StrategySpace>, pairs: &[Vec<(Profile, usize)>]) -> Result<Self> {
        check_players(&spaces)?;
        let space = ProductSpace::new(spaces);
        let mut prefs = Vec::with_capacity(pairs.len());
        for (i, list) in pairs.iter().enumerate() {
            check_player(&space, i)?;
            let ni = space.factor(i).len();
            let mut set = ProductSubset::empty(space.len() * ni);
            for (p, y) in list {
                let x = space.flatten(p.as_slice())?;
                if *y >= ni {
                    return Err(Error::InvalidProfile(format!(
                        "preferred point {y} outside player {i}'s {ni} strategies"
                    )));
                }
                set.insert(x * ni + y);
            }
            prefs.push(set);
        }
        let factors = space.factors().to_vec();
        Self::new(factors, prefs)
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn players(&self) -> usize {
        self.space.arity()
    }

    pub fn raw_preferences(&self, i: usize) -> &ProductSubset {
        &self.prefs[i]
    }

    /// `P_i(x)` as a subset of `X_i`.
    pub fn preferred(&self, i: usize, x: usize) -> ProductSubset {
        let ni = self.space.factor(i).len();
        ProductSubset::from_fn(ni, |y| self.prefs[i].contains(x * ni + y))
    }

    pub fn is_satiated(&self, i: usize, x: usize) -> bool {
        let ni = self.space.factor(i).len();
        (0..ni).all(|y| !self.prefs[i].contains(x * ni + y))
    }

    /// Choice form with `C_i = {x : P_i(x) = ∅}`.
    pub fn to_choice_form(&self) -> ChoiceFormGame {
        let choice = (0..self.players())
            .map(|i| ProductSubset::from_fn(self.space.len(), |x| self.is_satiated(i, x)))
            .collect();
        ChoiceFormGame {
            space: self.space.clone(),
            choice,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ab(player: usize) -> StrategySpace {
        StrategySpace::labels(player, ["a", "b"]).unwrap()
    }

    /// Prisoner's dilemma, index 0 = C, 1 = D.
    fn pd() -> NormalFormGame {
        let s = |p| StrategySpace::labels(p, ["C", "D"]).unwrap();
        // (C,C) (C,D) (D,C) (D,D)
        NormalFormGame::new(vec![s(0), s(1)], vec![vec![3.0, 0.0, 5.0, 1.0], vec![3.0, 5.0, 0.0, 1.0]], None).unwrap()
    }

    #[test]
    fn full_choice_section_is_whole_space() {
        let g = ChoiceFormGame::new(vec![ab(0), ab(1)], vec![ProductSubset::full(4); 2]).unwrap();
        for x2 in 0..2 {
            assert!(g.upper_section(0, &Profile(vec![x2])).unwrap().is_full());
        }
    }

    #[test]
    fn singleton_choice_misses_other_row() {
        let g = ChoiceFormGame::from_profiles(vec![ab(0), ab(1)], &[vec![Profile(vec![0, 0])], vec![]]).unwrap();
        assert!(g.upper_section(0, &Profile(vec![1])).unwrap().is_empty());
        assert_eq!(g.upper_section(0, &Profile(vec![0])).unwrap().to_vec(), vec![0]);
        assert!(matches!(g.upper_section(0, &Profile(vec![2])), Err(Error::InvalidProfile(_))));
        assert!(matches!(g.upper_section(2, &Profile(vec![0])), Err(Error::PlayerOutOfRange { .. })));
    }

    #[test]
    fn pd_best_replies_and_choice_form() {
        let g = pd();
        for x2 in 0..2 {
            assert_eq!(g.best_reply(0, &Profile(vec![x2])).unwrap().to_vec(), vec![1]);
        }
        let c = g.to_choice_form();
        // (D,C) = 2, (D,D) = 3
        assert_eq!(c.choice(0).to_vec(), vec![2, 3]);
        assert_eq!(c.upper_section(0, &Profile(vec![0])).unwrap().to_vec(), vec![1]);
        assert!(c.check_assumption_a().holds);
    }

    #[test]
    fn constant_utility_best_reply_is_everything() {
        let g = NormalFormGame::new(vec![ab(0), ab(1)], vec![vec![1.0; 4]; 2], None).unwrap();
        assert!(g.best_reply(0, &Profile(vec![1])).unwrap().is_full());
        assert!(g.to_choice_form().choice_sets().iter().all(ProductSubset::is_full));
    }

    #[test]
    fn empty_mask_empties_best_reply() {
        let g = NormalFormGame::new(
            vec![ab(0), ab(1)],
            vec![vec![1.0, 2.0, 3.0, 4.0]; 2],
            Some(vec![Some(ProductSubset::empty(2)), None]),
        )
        .unwrap();
        assert!(g.best_reply(0, &Profile(vec![0])).unwrap().is_empty());
        assert!(!g.best_reply(1, &Profile(vec![0])).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_finite_utilities() {
        let err = NormalFormGame::new(vec![ab(0)], vec![vec![1.0, f64::NAN]], None);
        assert!(matches!(err, Err(Error::InvalidUtility { player: 0, .. })));
    }

    #[test]
    fn qualitative_conversion() {
        let none = QualitativeGame::from_pairs(vec![ab(0), ab(1)], &[vec![], vec![]]).unwrap();
        assert!(none.to_choice_form().choice_sets().iter().all(ProductSubset::is_full));

        let everything: Vec<Vec<(Profile, usize)>> = (0..2)
            .map(|_| {
                (0..4usize)
                    .flat_map(|x| (0..2).map(move |y| (Profile(vec![x / 2, x % 2]), y)))
                    .collect()
            })
            .collect();
        let all = QualitativeGame::from_pairs(vec![ab(0), ab(1)], &everything).unwrap();
        assert!(all.to_choice_form().choice_sets().iter().all(ProductSubset::is_empty));

        // P_1(x) empty iff x_1 = a.
        let pairs = vec![vec![(Profile(vec![1, 0]), 0), (Profile(vec![1, 1]), 0)], vec![]];
        let q = QualitativeGame::from_pairs(vec![ab(0), ab(1)], &pairs).unwrap();
        assert_eq!(q.to_choice_form().choice(0).to_vec(), vec![0, 1]);
    }

    #[test]
    fn assumption_a_witness() {
        let g = ChoiceFormGame::new(vec![ab(0), ab(1)], vec![ProductSubset::empty(4); 2]).unwrap();
        let a = g.check_assumption_a();
        assert!(!a.holds);
        assert_eq!(a.witness, Some(Profile(vec![0, 0])));
        let full = ChoiceFormGame::new(vec![ab(0), ab(1)], vec![ProductSubset::full(4); 2]).unwrap();
        assert!(full.check_assumption_a().holds);
    }

    #[test]
    fn section_graph_roundtrip() {
        let g = pd().to_choice_form();
        for i in 0..2 {
            let t = g.section_correspondence(i);
            assert_eq!(&graph_subset(g.space(), i, &t), g.choice(i));
        }
    }
}
