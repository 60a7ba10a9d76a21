//! Bundled example games.

use std::io;
use std::path::Path;

use choiceform_core::analysis::Aux;
use choiceform_core::{ChoiceFormGame, NormalFormGame, Profile, ProductSubset, QualitativeGame, StrategySpace};

use crate::document::{serialize_game, Game, GameDocument};

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: &'static str,
    pub game: Game,
    pub aux: Aux,
}

impl Fixture {
    pub fn file_name(&self) -> String {
        format!("{}.game", self.name)
    }

    pub fn document(&self) -> GameDocument {
        GameDocument::from_game(&self.game, Some(&self.aux))
    }

    pub fn text(&self) -> String {
        serialize_game(&self.document())
    }
}

fn labels(player: usize, l: &[&str]) -> StrategySpace {
    StrategySpace::labels(player, l.iter().copied()).expect("distinct labels")
}

/// C = cooperate, D = defect.
pub fn prisoners_dilemma() -> NormalFormGame {
    let u = vec![vec![3.0, 0.0, 5.0, 1.0], vec![3.0, 5.0, 0.0, 1.0]];
    NormalFormGame::new(vec![labels(0, &["C", "D"]), labels(1, &["C", "D"])], u, None).expect("valid")
}

/// Heads = 0, tails = 1 on a two-point grid; the first player wants to match.
pub fn matching_pennies() -> NormalFormGame {
    let s = |p| StrategySpace::interval(p, 0.0, 1.0, 1.0).expect("valid");
    let u = vec![vec![1.0, -1.0, -1.0, 1.0], vec![-1.0, 1.0, 1.0, -1.0]];
    NormalFormGame::new(vec![s(0), s(1)], u, None).expect("valid")
}

/// `T(x) = [0, 1/2] ∪ [3/2, 2]` at `x = 1`, `[0, 2 - x/2]` elsewhere, on
/// `[0, 2]` with mesh 1/4, indexed by lattice step `k = 4x`.
pub fn example_values(k: usize) -> Vec<usize> {
    if k == 4 {
        vec![0, 1, 2, 6, 7, 8]
    } else {
        (0..9).filter(|&j| 2 * j <= 16 - k).collect()
    }
}

/// First player's choice set is the graph of [`example_values`] over the
/// second player's strategy; the second player accepts everything.
pub fn example_game() -> ChoiceFormGame {
    let s = |p| StrategySpace::interval(p, 0.0, 2.0, 0.25).expect("valid");
    let mut c1 = Vec::new();
    for x2 in 0..9 {
        for x1 in example_values(x2) {
            c1.push(Profile(vec![x1, x2]));
        }
    }
    let all: Vec<Profile> = (0..81).map(|x| Profile(vec![x / 9, x % 9])).collect();
    ChoiceFormGame::from_profiles(vec![s(0), s(1)], &[c1, all]).expect("valid")
}

fn example_aux(g: &ChoiceFormGame) -> Aux {
    Aux {
        inner: Some(g.choice_sets().to_vec()),
        simplices: Some(vec![vec![vec![0.0], vec![2.0]]; 2]),
        ..Aux::default()
    }
}

pub fn all_choice_game() -> ChoiceFormGame {
    let s = |p| StrategySpace::interval(p, 0.0, 1.0, 0.5).expect("valid");
    ChoiceFormGame::new(vec![s(0), s(1)], vec![ProductSubset::full(9); 2]).expect("valid")
}

/// `P_1(x) = ∅` iff `x_1 = a`; `P_2(x) = ∅` iff `x_2 = b`.
pub fn qualitative_game() -> QualitativeGame {
    let ab = |p| labels(p, &["a", "b"]);
    let p1 = vec![(Profile(vec![1, 0]), 0), (Profile(vec![1, 1]), 0)];
    let p2 = vec![(Profile(vec![0, 0]), 1), (Profile(vec![1, 0]), 1)];
    QualitativeGame::from_pairs(vec![ab(0), ab(1)], &[p1, p2]).expect("valid")
}

pub fn all() -> Vec<Fixture> {
    let example = example_game();
    let full = all_choice_game();
    let full_aux = Aux {
        dominant: Some(full.choice_sets().to_vec()),
        inner: Some(full.choice_sets().to_vec()),
        simplices: Some(vec![vec![vec![0.0], vec![1.0]]; 2]),
        open_families: Some(vec![vec![ProductSubset::full(3); 3]; 2]),
    };
    vec![
        Fixture {
            name: "prisoners_dilemma",
            game: Game::Normal(prisoners_dilemma()),
            aux: Aux::default(),
        },
        Fixture {
            name: "matching_pennies",
            game: Game::Normal(matching_pennies()),
            aux: Aux::default(),
        },
        Fixture {
            name: "example_grid",
            aux: example_aux(&example),
            game: Game::Choice(example),
        },
        Fixture {
            name: "all_choice",
            game: Game::Choice(full),
            aux: full_aux,
        },
        Fixture {
            name: "qualitative_2x2",
            game: Game::Qualitative(qualitative_game()),
            aux: Aux::default(),
        },
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

/// Writes every fixture into `dir` as `<name>.game`.
pub fn write_all(dir: &Path) -> io::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for f in all() {
        let path = dir.join(f.file_name());
        std::fs::write(&path, f.text())?;
        written.push(path.display().to_string());
    }
    Ok(written)
}
