//! Reference oracle and random instances for differential tests.
//!
//! Games here are plain tuples and ordered sets, and the oracle evaluates
//! the solution concepts straight from their definitions without touching
//! the flat indexing of the library under test.

use std::collections::{BTreeMap, BTreeSet};

use choiceform_core::{
    ChoiceFormGame, EquilibriumKind, GameRef, NormalFormGame, Profile, ProductSubset, QualitativeGame,
    StrategySpace,
};
use rand::Rng;

pub const DEFAULT_CAP: usize = 1_000_000;

pub type Tuple = Vec<usize>;

#[derive(Debug, Clone, PartialEq)]
pub struct RawChoice {
    pub sizes: Vec<usize>,
    pub choice: Vec<BTreeSet<Tuple>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawNormal {
    pub sizes: Vec<usize>,
    pub utilities: Vec<BTreeMap<Tuple, f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawQualitative {
    pub sizes: Vec<usize>,
    /// `(x, y)` with `y ∈ P_i(x)`.
    pub prefs: Vec<BTreeSet<(Tuple, usize)>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RawGame {
    Choice(RawChoice),
    Normal(RawNormal),
    Qualitative(RawQualitative),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("{profiles} profiles exceed the oracle cap of {cap}")]
    TooLarge { profiles: usize, cap: usize },
    #[error("{0} is not defined for this game class")]
    Incompatible(EquilibriumKind),
}

impl RawGame {
    pub fn sizes(&self) -> &[usize] {
        match self {
            RawGame::Choice(g) => &g.sizes,
            RawGame::Normal(g) => &g.sizes,
            RawGame::Qualitative(g) => &g.sizes,
        }
    }
}

/// Every tuple of the product, first coordinate slowest.
pub fn all_tuples(sizes: &[usize]) -> Vec<Tuple> {
    let mut out = vec![Vec::new()];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn with(x: &[usize], i: usize, y: usize) -> Tuple {
    let mut t = x.to_vec();
    t[i] = y;
    t
}

/// Profiles satisfying `kind`, sorted.
pub fn oracle_enumerate(raw: &RawGame, kind: EquilibriumKind, cap: usize) -> Result<Vec<Tuple>, OracleError> {
    let profiles: usize = raw.sizes().iter().product();
    if profiles > cap {
        return Err(OracleError::TooLarge { profiles, cap });
    }
    let sizes = raw.sizes();
    let keep: Box<dyn Fn(&Tuple) -> bool + '_> = match (raw, kind) {
        (RawGame::Choice(g), EquilibriumKind::Ec) => Box::new(move |x: &Tuple| {
            (0..sizes.len()).all(|i| {
                let section: Vec<usize> = (0..sizes[i]).filter(|&y| g.choice[i].contains(&with(x, i, y))).collect();
                section.is_empty() || section.contains(&x[i])
            })
        }),
        (RawGame::Choice(g), EquilibriumKind::Sec) => Box::new(move |x: &Tuple| g.choice.iter().all(|c| c.contains(x))),
        (RawGame::Normal(g), EquilibriumKind::Nash | EquilibriumKind::WeakNash) => Box::new(move |x: &Tuple| {
            (0..sizes.len()).all(|i| (0..sizes[i]).all(|y| g.utilities[i][&with(x, i, y)] <= g.utilities[i][x]))
        }),
        (RawGame::Qualitative(g), EquilibriumKind::QualEq) => Box::new(move |x: &Tuple| {
            (0..sizes.len()).all(|i| (0..sizes[i]).all(|y| !g.prefs[i].contains(&(x.clone(), y))))
        }),
        (RawGame::Qualitative(g), EquilibriumKind::QualWeakEq) => Box::new(move |x: &Tuple| {
            let satiated = |i: usize, z: &Tuple| (0..sizes[i]).all(|y| !g.prefs[i].contains(&(z.clone(), y)));
            (0..sizes.len()).all(|i| {
                let reachable = (0..sizes[i]).any(|y| satiated(i, &with(x, i, y)));
                !reachable || satiated(i, x)
            })
        }),
        _ => return Err(OracleError::Incompatible(kind)),
    };
    Ok(all_tuples(sizes).into_iter().filter(|x| keep(x)).collect())
}

/// Library game built from a raw one, on abstract label spaces.
#[derive(Debug, Clone, PartialEq)]
pub enum CoreGame {
    Choice(ChoiceFormGame),
    Normal(NormalFormGame),
    Qualitative(QualitativeGame),
}

impl CoreGame {
    pub fn as_ref(&self) -> GameRef<'_> {
        match self {
            CoreGame::Choice(g) => GameRef::Choice(g),
            CoreGame::Normal(g) => GameRef::Normal(g),
            CoreGame::Qualitative(g) => GameRef::Qualitative(g),
        }
    }
}

pub fn label_spaces(sizes: &[usize]) -> Vec<StrategySpace> {
    sizes
        .iter()
        .enumerate()
        .map(|(p, &n)| StrategySpace::labels(p, (0..n).map(|k| format!("s{k}"))).expect("distinct labels"))
        .collect()
}

pub fn to_core(raw: &RawGame) -> CoreGame {
    let spaces = label_spaces(raw.sizes());
    match raw {
        RawGame::Choice(g) => {
            let lists: Vec<Vec<Profile>> =
                g.choice.iter().map(|c| c.iter().map(|t| Profile(t.clone())).collect()).collect();
            CoreGame::Choice(ChoiceFormGame::from_profiles(spaces, &lists).expect("valid raw game"))
        }
        RawGame::Normal(g) => {
            let tuples = all_tuples(&g.sizes);
            let tables = g.utilities.iter().map(|u| tuples.iter().map(|t| u[t]).collect()).collect();
            CoreGame::Normal(NormalFormGame::new(spaces, tables, None).expect("valid raw game"))
        }
        RawGame::Qualitative(g) => {
            let pairs: Vec<Vec<(Profile, usize)>> = g
                .prefs
                .iter()
                .map(|p| p.iter().map(|(t, y)| (Profile(t.clone()), *y)).collect())
                .collect();
            CoreGame::Qualitative(QualitativeGame::from_pairs(spaces, &pairs).expect("valid raw game"))
        }
    }
}

/// Raw best-reply choice form, computed from the utility maps directly.
pub fn raw_best_reply_form(g: &RawNormal) -> RawChoice {
    let tuples = all_tuples(&g.sizes);
    let choice = (0..g.sizes.len())
        .map(|i| {
            tuples
                .iter()
                .filter(|x| (0..g.sizes[i]).all(|y| g.utilities[i][&with(x, i, y)] <= g.utilities[i][*x]))
                .cloned()
                .collect()
        })
        .collect();
    RawChoice {
        sizes: g.sizes.clone(),
        choice,
    }
}

pub fn random_sizes(rng: &mut impl Rng, players: std::ops::RangeInclusive<usize>, max_strategies: usize) -> Vec<usize> {
    let n = rng.random_range(players);
    (0..n).map(|_| rng.random_range(1..=max_strategies)).collect()
}

/// Small integer payoffs so that ties are common.
pub fn random_normal(rng: &mut impl Rng, sizes: Vec<usize>) -> RawNormal {
    let tuples = all_tuples(&sizes);
    let utilities = (0..sizes.len())
        .map(|_| tuples.iter().map(|t| (t.clone(), rng.random_range(0..4) as f64)).collect())
        .collect();
    RawNormal { sizes, utilities }
}

/// Each profile enters `C_i` with probability `density`.
pub fn random_choice(rng: &mut impl Rng, sizes: Vec<usize>, density: f64) -> RawChoice {
    let tuples = all_tuples(&sizes);
    let choice = (0..sizes.len())
        .map(|_| tuples.iter().filter(|_| rng.random_bool(density)).cloned().collect())
        .collect();
    RawChoice { sizes, choice }
}

pub fn random_qualitative(rng: &mut impl Rng, sizes: Vec<usize>, density: f64) -> RawQualitative {
    let tuples = all_tuples(&sizes);
    let prefs = (0..sizes.len())
        .map(|i| {
            let mut set = BTreeSet::new();
            for t in &tuples {
                for y in 0..sizes[i] {
                    if rng.random_bool(density) {
                        set.insert((t.clone(), y));
                    }
                }
            }
            set
        })
        .collect();
    RawQualitative { sizes, prefs }
}

/// Random values `T(x) ⊆ {0, …, codomain - 1}` for every `x` in the domain.
pub fn random_values(rng: &mut impl Rng, domain: usize, codomain: usize, density: f64) -> Vec<BTreeSet<usize>> {
    (0..domain)
        .map(|_| (0..codomain).filter(|_| rng.random_bool(density)).collect())
        .collect()
}

pub fn to_subset(universe: usize, members: &BTreeSet<usize>) -> ProductSubset {
    ProductSubset::from_indices(universe, members.iter().copied()).expect("members in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_are_lexicographic() {
        assert_eq!(all_tuples(&[2, 2]), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(all_tuples(&[]), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn prisoners_dilemma_by_hand() {
        let mut u1 = BTreeMap::new();
        let mut u2 = BTreeMap::new();
        for (t, a, b) in [([0, 0], 3.0, 3.0), ([0, 1], 0.0, 5.0), ([1, 0], 5.0, 0.0), ([1, 1], 1.0, 1.0)] {
            u1.insert(t.to_vec(), a);
            u2.insert(t.to_vec(), b);
        }
        let g = RawNormal {
            sizes: vec![2, 2],
            utilities: vec![u1, u2],
        };
        let nash = oracle_enumerate(&RawGame::Normal(g.clone()), EquilibriumKind::Nash, DEFAULT_CAP).unwrap();
        assert_eq!(nash, vec![vec![1, 1]]);
        let bf = RawGame::Choice(raw_best_reply_form(&g));
        assert_eq!(oracle_enumerate(&bf, EquilibriumKind::Ec, DEFAULT_CAP).unwrap(), vec![vec![1, 1]]);
    }

    #[test]
    fn cap_and_class_errors() {
        let g = RawGame::Choice(RawChoice {
            sizes: vec![10, 10],
            choice: vec![BTreeSet::new(), BTreeSet::new()],
        });
        assert_eq!(
            oracle_enumerate(&g, EquilibriumKind::Ec, 50),
            Err(OracleError::TooLarge { profiles: 100, cap: 50 })
        );
        assert_eq!(
            oracle_enumerate(&g, EquilibriumKind::Nash, DEFAULT_CAP),
            Err(OracleError::Incompatible(EquilibriumKind::Nash))
        );
        // Every section empty: every profile is vacuously an EC.
        assert_eq!(oracle_enumerate(&g, EquilibriumKind::Ec, DEFAULT_CAP).unwrap().len(), 100);
    }
}
