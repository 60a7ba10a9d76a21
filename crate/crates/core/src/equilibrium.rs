//! Exact checkers and enumerators for the solution concepts.
//!
//! Implications are taken literally: a player whose relevant section is
//! empty imposes no constraint, so a profile at which every section is empty
//! is an equilibrium in choice.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::game::{ChoiceFormGame, NormalFormGame, QualitativeGame};
use crate::solver::SolverTrace;
use crate::space::{Profile, ProductSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum EquilibriumKind {
    /// Equilibrium in choice.
    #[cfg_attr(feature = "serde", serde(rename = "EC"))]
    Ec,
    /// Strong equilibrium in choice.
    #[cfg_attr(feature = "serde", serde(rename = "SEC"))]
    Sec,
    Nash,
    WeakNash,
    QualEq,
    QualWeakEq,
}

impl EquilibriumKind {
    pub const ALL: [EquilibriumKind; 6] = [
        EquilibriumKind::Ec,
        EquilibriumKind::Sec,
        EquilibriumKind::Nash,
        EquilibriumKind::WeakNash,
        EquilibriumKind::QualEq,
        EquilibriumKind::QualWeakEq,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EquilibriumKind::Ec => "EC",
            EquilibriumKind::Sec => "SEC",
            EquilibriumKind::Nash => "Nash",
            EquilibriumKind::WeakNash => "WeakNash",
            EquilibriumKind::QualEq => "QualEq",
            EquilibriumKind::QualWeakEq => "QualWeakEq",
        }
    }
}

impl fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EquilibriumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EquilibriumKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Usage(alloc::format!("unknown equilibrium kind {s:?}")))
    }
}

/// Outcome of one player's clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Clause {
    /// The premise is false (empty section, empty best reply, no satiating reply).
    Vacuous,
    Held,
    Violated,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Check {
    pub holds: bool,
    pub clauses: Vec<Clause>,
}

impl Check {
    fn from_clauses(clauses: Vec<Clause>) -> Self {
        Check {
            holds: clauses.iter().all(|c| *c != Clause::Violated),
            clauses,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EquilibriumCertificate {
    pub profile: Profile,
    pub kind: EquilibriumKind,
    pub clauses: Vec<Clause>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub trace: Option<Box<SolverTrace>>,
}

/// Borrowed game of any class.
#[derive(Debug, Clone, Copy)]
pub enum GameRef<'a> {
    Choice(&'a ChoiceFormGame),
    Normal(&'a NormalFormGame),
    Qualitative(&'a QualitativeGame),
}

impl GameRef<'_> {
    pub fn space(&self) -> &ProductSpace {
        match self {
            GameRef::Choice(g) => g.space(),
            GameRef::Normal(g) => g.space(),
            GameRef::Qualitative(g) => g.space(),
        }
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            GameRef::Choice(_) => "choice-form",
            GameRef::Normal(_) => "normal-form",
            GameRef::Qualitative(_) => "qualitative",
        }
    }
}

fn ec_clauses(g: &ChoiceFormGame, x: usize) -> Vec<Clause> {
    (0..g.players())
        .map(|i| {
            let (minus, xi) = g.space().split(x, i);
            let section = g.section_flat(i, minus);
            if section.is_empty() {
                Clause::Vacuous
            } else if section.contains(xi) {
                Clause::Held
            } else {
                Clause::Violated
            }
        })
        .collect()
}

fn sec_clauses(g: &ChoiceFormGame, x: usize) -> Vec<Clause> {
    g.choice_sets()
        .iter()
        .map(|c| if c.contains(x) { Clause::Held } else { Clause::Violated })
        .collect()
}

fn nash_clauses(g: &NormalFormGame, x: usize, weak: bool) -> Vec<Clause> {
    (0..g.players())
        .map(|i| {
            let (minus, _) = g.space().split(x, i);
            if weak && g.best_reply_flat(i, minus).is_empty() {
                return Clause::Vacuous;
            }
            let here = g.utility(i, x);
            let n = g.space().factor(i).len();
            let beaten = (0..n).any(|y| g.utility(i, g.space().join(i, minus, y)) > here);
            if beaten {
                Clause::Violated
            } else {
                Clause::Held
            }
        })
        .collect()
}

fn qual_clauses(g: &QualitativeGame, x: usize, weak: bool) -> Vec<Clause> {
    (0..g.players())
        .map(|i| {
            if weak {
                let (minus, _) = g.space().split(x, i);
                let n = g.space().factor(i).len();
                let reachable = (0..n).any(|y| g.is_satiated(i, g.space().join(i, minus, y)));
                if !reachable {
                    return Clause::Vacuous;
                }
            }
            if g.is_satiated(i, x) {
                Clause::Held
            } else {
                Clause::Violated
            }
        })
        .collect()
}

/// `C_i(x_{-i}) ≠ ∅ ⇒ x_i ∈ C_i(x_{-i})` for every player.
pub fn is_equilibrium_in_choice(g: &ChoiceFormGame, x: &Profile) -> Result<Check> {
    let idx = g.space().flatten(x.as_slice())?;
    Ok(Check::from_clauses(ec_clauses(g, idx)))
}

/// `x ∈ ⋂_i C_i`.
pub fn is_strong_ec(g: &ChoiceFormGame, x: &Profile) -> Result<Check> {
    let idx = g.space().flatten(x.as_slice())?;
    Ok(Check::from_clauses(sec_clauses(g, idx)))
}

/// Unilateral optimality for every player. Ignores feasibility masks.
pub fn is_nash(g: &NormalFormGame, x: &Profile) -> Result<Check> {
    let idx = g.space().flatten(x.as_slice())?;
    Ok(Check::from_clauses(nash_clauses(g, idx, false)))
}

/// Nash condition for the players with a nonempty best reply at `x_{-i}`.
pub fn is_weak_nash(g: &NormalFormGame, x: &Profile) -> Result<Check> {
    let idx = g.space().flatten(x.as_slice())?;
    Ok(Check::from_clauses(nash_clauses(g, idx, true)))
}

/// Strict: `P_i(x) = ∅` for all `i`. Weak: only for players that have some
/// satiating reply to `x_{-i}`.
pub fn qualitative_equilibrium(g: &QualitativeGame, x: &Profile, weak: bool) -> Result<Check> {
    let idx = g.space().flatten(x.as_slice())?;
    Ok(Check::from_clauses(qual_clauses(g, idx, weak)))
}

fn incompatible(kind: EquilibriumKind, game: GameRef<'_>) -> Error {
    Error::Usage(alloc::format!("{kind} is not defined for {} games", game.class_name()))
}

/// Clauses of `kind` at the flat profile `x`.
pub fn clauses_flat(game: GameRef<'_>, kind: EquilibriumKind, x: usize) -> Result<Vec<Clause>> {
    use EquilibriumKind::*;
    Ok(match (game, kind) {
        (GameRef::Choice(g), Ec) => ec_clauses(g, x),
        (GameRef::Choice(g), Sec) => sec_clauses(g, x),
        (GameRef::Normal(g), Nash) => nash_clauses(g, x, false),
        (GameRef::Normal(g), WeakNash) => nash_clauses(g, x, true),
        (GameRef::Qualitative(g), QualEq) => qual_clauses(g, x, false),
        (GameRef::Qualitative(g), QualWeakEq) => qual_clauses(g, x, true),
        _ => return Err(incompatible(kind, game)),
    })
}

/// Checks one profile against any compatible kind.
pub fn check(game: GameRef<'_>, kind: EquilibriumKind, x: &Profile) -> Result<Check> {
    clauses_flat(game, kind, 0)?;
    let idx = game.space().flatten(x.as_slice())?;
    Ok(Check::from_clauses(clauses_flat(game, kind, idx)?))
}

/// All profiles satisfying `kind`, in lexicographic order.
pub fn enumerate(game: GameRef<'_>, kind: EquilibriumKind) -> Result<Vec<EquilibriumCertificate>> {
    clauses_flat(game, kind, 0)?;
    let space = game.space();
    let mut out = Vec::new();
    for x in space.iter() {
        let clauses = clauses_flat(game, kind, x)?;
        if clauses.iter().all(|c| *c != Clause::Violated) {
            out.push(EquilibriumCertificate {
                profile: space.profile(x),
                kind,
                clauses,
                trace: None,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::StrategySpace;
    use crate::subset::ProductSubset;
    use alloc::vec;

    fn labels(p: usize, l: [&str; 2]) -> StrategySpace {
        StrategySpace::labels(p, l).unwrap()
    }

    fn pd() -> NormalFormGame {
        let s = |p| labels(p, ["C", "D"]);
        NormalFormGame::new(vec![s(0), s(1)], vec![vec![3.0, 0.0, 5.0, 1.0], vec![3.0, 5.0, 0.0, 1.0]], None).unwrap()
    }

    fn pennies() -> NormalFormGame {
        let s = |p| labels(p, ["H", "T"]);
        NormalFormGame::new(
            vec![s(0), s(1)],
            vec![vec![1.0, -1.0, -1.0, 1.0], vec![-1.0, 1.0, 1.0, -1.0]],
            None,
        )
        .unwrap()
    }

    fn profiles(certs: &[EquilibriumCertificate]) -> Vec<Vec<usize>> {
        certs.iter().map(|c| c.profile.0.clone()).collect()
    }

    #[test]
    fn empty_choice_sets_make_everything_ec() {
        let s = |p| labels(p, ["a", "b"]);
        let g = ChoiceFormGame::new(vec![s(0), s(1)], vec![ProductSubset::empty(4); 2]).unwrap();
        let all = enumerate(GameRef::Choice(&g), EquilibriumKind::Ec).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|c| c.clauses.iter().all(|&k| k == Clause::Vacuous)));
        assert!(enumerate(GameRef::Choice(&g), EquilibriumKind::Sec).unwrap().is_empty());
    }

    #[test]
    fn pd_profiles() {
        let g = pd();
        let c = g.to_choice_form();
        assert!(is_equilibrium_in_choice(&c, &Profile(vec![1, 1])).unwrap().holds);
        assert!(!is_equilibrium_in_choice(&c, &Profile(vec![0, 0])).unwrap().holds);
        assert!(is_strong_ec(&c, &Profile(vec![1, 1])).unwrap().holds);
        let nash: Vec<bool> = (0..4).map(|x| is_nash(&g, &g.space().profile(x)).unwrap().holds).collect();
        assert_eq!(nash, vec![false, false, false, true]);
        assert_eq!(profiles(&enumerate(GameRef::Choice(&c), EquilibriumKind::Ec).unwrap()), vec![vec![1, 1]]);
    }

    #[test]
    fn pennies_has_no_pure_equilibrium() {
        let g = pennies();
        let c = g.to_choice_form();
        assert_eq!(c.choice(0).to_vec(), vec![0, 3]);
        assert_eq!(c.choice(1).to_vec(), vec![1, 2]);
        assert!(enumerate(GameRef::Choice(&c), EquilibriumKind::Ec).unwrap().is_empty());
        assert!(enumerate(GameRef::Normal(&g), EquilibriumKind::Nash).unwrap().is_empty());
    }

    #[test]
    fn weak_nash_with_masks() {
        let base = pennies();
        let masked = NormalFormGame::new(
            base.space().factors().to_vec(),
            base.utilities().to_vec(),
            Some(vec![Some(ProductSubset::empty(2)), None]),
        )
        .unwrap();
        let weak = enumerate(GameRef::Normal(&masked), EquilibriumKind::WeakNash).unwrap();
        assert_eq!(profiles(&weak), vec![vec![0, 1], vec![1, 0]]);

        let both = NormalFormGame::new(
            base.space().factors().to_vec(),
            base.utilities().to_vec(),
            Some(vec![Some(ProductSubset::empty(2)), Some(ProductSubset::empty(2))]),
        )
        .unwrap();
        assert_eq!(enumerate(GameRef::Normal(&both), EquilibriumKind::WeakNash).unwrap().len(), 4);
        assert_eq!(
            enumerate(GameRef::Normal(&pd()), EquilibriumKind::WeakNash).unwrap(),
            enumerate(GameRef::Normal(&pd()), EquilibriumKind::Nash)
                .unwrap()
                .into_iter()
                .map(|mut c| {
                    c.kind = EquilibriumKind::WeakNash;
                    c
                })
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn qualitative_kinds() {
        let s = |p| labels(p, ["a", "b"]);
        let everything: Vec<Vec<(Profile, usize)>> = (0..2)
            .map(|_| {
                (0..4usize)
                    .flat_map(|x| (0..2).map(move |y| (Profile(vec![x / 2, x % 2]), y)))
                    .collect()
            })
            .collect();
        let g = QualitativeGame::from_pairs(vec![s(0), s(1)], &everything).unwrap();
        assert!(enumerate(GameRef::Qualitative(&g), EquilibriumKind::QualEq).unwrap().is_empty());
        assert_eq!(enumerate(GameRef::Qualitative(&g), EquilibriumKind::QualWeakEq).unwrap().len(), 4);

        let pairs = vec![vec![(Profile(vec![1, 0]), 0), (Profile(vec![1, 1]), 0)], vec![]];
        let q = QualitativeGame::from_pairs(vec![s(0), s(1)], &pairs).unwrap();
        let strict = enumerate(GameRef::Qualitative(&q), EquilibriumKind::QualEq).unwrap();
        assert_eq!(profiles(&strict), vec![vec![0, 0], vec![0, 1]]);
        assert!(qualitative_equilibrium(&q, &Profile(vec![0, 1]), false).unwrap().holds);
    }

    #[test]
    fn kind_mismatch_is_usage_error() {
        let g = pd();
        assert!(matches!(enumerate(GameRef::Normal(&g), EquilibriumKind::Ec), Err(Error::Usage(_))));
        assert!(matches!(
            check(GameRef::Choice(&g.to_choice_form()), EquilibriumKind::Nash, &Profile(vec![0, 0])),
            Err(Error::Usage(_))
        ));
        assert!("ec".parse::<EquilibriumKind>().is_ok());
        assert!("Walras".parse::<EquilibriumKind>().is_err());
    }
}
