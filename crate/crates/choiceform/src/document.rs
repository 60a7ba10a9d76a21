//! The `choiceform/1` game-description format.
//!
//! A document is JSON. Profiles are arrays of strategy indices, one per
//! player in player order; partial profiles `x_{-i}` omit player `i`.
//! Utility tables are flat over `X` in lexicographic profile order, first
//! player slowest.

use serde::{Deserialize, Serialize};

use choiceform_core::analysis::Aux;
use choiceform_core::{
    ChoiceFormGame, Error as CoreError, NormalFormGame, Profile, ProductSpace, ProductSubset, QualitativeGame,
    SpaceKind, StrategySpace,
};

pub const FORMAT: &str = "choiceform/1";

/// A profile and a strategy it prefers.
pub type Preference = (Vec<usize>, usize);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub format: String,
    pub class: GameClass,
    pub players: Vec<SpaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choice: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utilities: Option<Vec<Vec<f64>>>,
    /// Per player, the `x_{-i}` at which the best reply is defined; `null` for all.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feasible: Option<Vec<Option<Vec<Vec<usize>>>>>,
    /// Per player, `(x, y)` pairs with `y ∈ P_i(x)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preferences: Option<Vec<Vec<Preference>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<AuxSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GameClass {
    ChoiceForm,
    NormalForm,
    Qualitative,
}

impl GameClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GameClass::ChoiceForm => "choice-form",
            GameClass::NormalForm => "normal-form",
            GameClass::Qualitative => "qualitative",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    Labels(Vec<String>),
    Grid { lower: Vec<f64>, upper: Vec<f64>, mesh: f64 },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuxSpec {
    /// Per player, the profiles of `D_i ⊆ C_i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dominant: Option<Vec<Vec<Vec<usize>>>>,
    /// Per player, the graph of `S_i` as profiles `(x_{-i}, x_i)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<Vec<Vec<Vec<usize>>>>,
    /// Per player, simplex vertices in the embedding of `X_{-i}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<Vec<Vec<Vec<f64>>>>,
    /// Per player and per point `x_i`, the partial profiles in `O_{x_i}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open_families: Option<Vec<Vec<Vec<Vec<usize>>>>>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Semantic(String),
}

impl From<CoreError> for DocumentError {
    fn from(e: CoreError) -> Self {
        DocumentError::Semantic(e.to_string())
    }
}

/// A validated game of any class together with its auxiliary ingredients.
#[derive(Debug, Clone, PartialEq)]
pub enum Game {
    Choice(ChoiceFormGame),
    Normal(NormalFormGame),
    Qualitative(QualitativeGame),
}

impl Game {
    pub fn space(&self) -> &ProductSpace {
        match self {
            Game::Choice(g) => g.space(),
            Game::Normal(g) => g.space(),
            Game::Qualitative(g) => g.space(),
        }
    }

    pub fn class(&self) -> GameClass {
        match self {
            Game::Choice(_) => GameClass::ChoiceForm,
            Game::Normal(_) => GameClass::NormalForm,
            Game::Qualitative(_) => GameClass::Qualitative,
        }
    }

    pub fn as_ref(&self) -> choiceform_core::GameRef<'_> {
        match self {
            Game::Choice(g) => choiceform_core::GameRef::Choice(g),
            Game::Normal(g) => choiceform_core::GameRef::Normal(g),
            Game::Qualitative(g) => choiceform_core::GameRef::Qualitative(g),
        }
    }

    /// Best-reply or satiation choice form; choice-form games are cloned.
    pub fn to_choice_form(&self) -> ChoiceFormGame {
        match self {
            Game::Choice(g) => g.clone(),
            Game::Normal(g) => g.to_choice_form(),
            Game::Qualitative(g) => g.to_choice_form(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedGame {
    pub game: Game,
    pub aux: Aux,
}

/// Parses and validates a document.
pub fn parse_game(text: &str) -> Result<GameDocument, DocumentError> {
    let doc: GameDocument = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    doc.load()?;
    Ok(doc)
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(k) => msg[..k].to_string(),
        None => msg.to_string(),
    }
}

/// Pretty JSON with a trailing newline; inverse of [`parse_game`].
pub fn serialize_game(doc: &GameDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn semantic(msg: impl Into<String>) -> DocumentError {
    DocumentError::Semantic(msg.into())
}

fn spaces_of(players: &[SpaceSpec]) -> Result<Vec<StrategySpace>, DocumentError> {
    if players.is_empty() {
        return Err(semantic("invalid strategy space: a game needs at least one player"));
    }
    players
        .iter()
        .enumerate()
        .map(|(p, s)| match s {
            SpaceSpec::Labels(l) => StrategySpace::labels(p, l.iter().cloned()).map_err(Into::into),
            SpaceSpec::Grid { lower, upper, mesh } => {
                StrategySpace::grid(p, lower.clone(), upper.clone(), *mesh).map_err(Into::into)
            }
        })
        .collect()
}

fn space_spec(s: &StrategySpace) -> SpaceSpec {
    match s.kind() {
        SpaceKind::Abstract { labels } => SpaceSpec::Labels(labels.clone()),
        SpaceKind::Grid(g) => SpaceSpec::Grid {
            lower: g.lower().to_vec(),
            upper: g.upper().to_vec(),
            mesh: g.mesh(),
        },
    }
}

fn subset_of(space: &ProductSpace, profiles: &[Vec<usize>], what: &str) -> Result<ProductSubset, DocumentError> {
    let mut set = ProductSubset::empty(space.len());
    for p in profiles {
        let idx = space
            .flatten(p)
            .map_err(|e| semantic(format!("{e} (in {what})")))?;
        set.insert(idx);
    }
    Ok(set)
}

fn profiles_of(space: &ProductSpace, set: &ProductSubset) -> Vec<Vec<usize>> {
    set.iter().map(|x| space.unflatten(x)).collect()
}

fn per_player<T>(items: &[T], n: usize, what: &str) -> Result<(), DocumentError> {
    if items.len() != n {
        return Err(semantic(format!(
            "size mismatch: {what} has {} entries, expected one per player ({n})",
            items.len()
        )));
    }
    Ok(())
}

impl GameDocument {
    /// Builds the core game and aux ingredients, enforcing every invariant.
    pub fn load(&self) -> Result<LoadedGame, DocumentError> {
        if self.format != FORMAT {
            return Err(semantic(format!(
                "unsupported format {:?} (expected {FORMAT:?})",
                self.format
            )));
        }
        let spaces = spaces_of(&self.players)?;
        let n = spaces.len();
        let space = ProductSpace::new(spaces.clone());
        let present = [
            ("choice", self.choice.is_some(), GameClass::ChoiceForm),
            ("utilities", self.utilities.is_some(), GameClass::NormalForm),
            ("preferences", self.preferences.is_some(), GameClass::Qualitative),
        ];
        for (field, there, class) in present {
            if there != (class == self.class) {
                return Err(semantic(if there {
                    format!("field {field:?} is not allowed in a {} document", self.class.as_str())
                } else {
                    format!("a {} document needs the field {field:?}", self.class.as_str())
                }));
            }
        }
        if self.feasible.is_some() && self.class != GameClass::NormalForm {
            return Err(semantic("field \"feasible\" is only allowed in a normal-form document"));
        }
        let game = match self.class {
            GameClass::ChoiceForm => {
                let lists = self.choice.as_ref().expect("checked");
                per_player(lists, n, "choice")?;
                let choice = lists
                    .iter()
                    .enumerate()
                    .map(|(i, l)| subset_of(&space, l, &format!("choice set of player {i}")))
                    .collect::<Result<_, _>>()?;
                Game::Choice(ChoiceFormGame::new(spaces, choice)?)
            }
            GameClass::NormalForm => {
                let tables = self.utilities.clone().expect("checked");
                let feasible = match &self.feasible {
                    None => None,
                    Some(masks) => {
                        per_player(masks, n, "feasible")?;
                        let mut out = Vec::with_capacity(n);
                        for (i, m) in masks.iter().enumerate() {
                            out.push(match m {
                                None => None,
                                Some(l) => Some(subset_of(
                                    &space.without(i),
                                    l,
                                    &format!("feasibility mask of player {i}"),
                                )?),
                            });
                        }
                        Some(out)
                    }
                };
                Game::Normal(NormalFormGame::new(spaces, tables, feasible)?)
            }
            GameClass::Qualitative => {
                let lists = self.preferences.as_ref().expect("checked");
                per_player(lists, n, "preferences")?;
                let pairs: Vec<Vec<(Profile, usize)>> = lists
                    .iter()
                    .map(|l| l.iter().map(|(x, y)| (Profile(x.clone()), *y)).collect())
                    .collect();
                Game::Qualitative(QualitativeGame::from_pairs(spaces, &pairs)?)
            }
        };
        let aux = match &self.aux {
            None => Aux::default(),
            Some(a) => a.load(&space)?,
        };
        Ok(LoadedGame { game, aux })
    }

    pub fn from_game(game: &Game, aux: Option<&Aux>) -> Self {
        let space = game.space();
        let mut doc = GameDocument {
            format: FORMAT.into(),
            class: game.class(),
            players: space.factors().iter().map(space_spec).collect(),
            choice: None,
            utilities: None,
            feasible: None,
            preferences: None,
            aux: aux.filter(|a| **a != Aux::default()).map(|a| AuxSpec::from_aux(space, a)),
        };
        match game {
            Game::Choice(g) => {
                doc.choice = Some(g.choice_sets().iter().map(|c| profiles_of(space, c)).collect());
            }
            Game::Normal(g) => {
                doc.utilities = Some(g.utilities().to_vec());
                if !g.has_default_feasibility() {
                    doc.feasible = Some(
                        (0..g.players())
                            .map(|i| {
                                let m = g.feasible(i);
                                (!m.is_full()).then(|| profiles_of(&space.without(i), m))
                            })
                            .collect(),
                    );
                }
            }
            Game::Qualitative(g) => {
                doc.preferences = Some(
                    (0..g.players())
                        .map(|i| {
                            let ni = space.factor(i).len();
                            g.raw_preferences(i)
                                .iter()
                                .map(|bit| (space.unflatten(bit / ni), bit % ni))
                                .collect()
                        })
                        .collect(),
                );
            }
        }
        doc
    }
}

impl AuxSpec {
    fn load(&self, space: &ProductSpace) -> Result<Aux, DocumentError> {
        let n = space.arity();
        let sets = |lists: &Option<Vec<Vec<Vec<usize>>>>, what: &str| -> Result<Option<Vec<ProductSubset>>, DocumentError> {
            let Some(lists) = lists else { return Ok(None) };
            per_player(lists, n, what)?;
            lists
                .iter()
                .enumerate()
                .map(|(i, l)| subset_of(space, l, &format!("{what} of player {i}")))
                .collect::<Result<Vec<_>, _>>()
                .map(Some)
        };
        let dominant = sets(&self.dominant, "aux.dominant")?;
        let inner = sets(&self.inner, "aux.inner")?;
        if let Some(s) = &self.simplices {
            per_player(s, n, "aux.simplices")?;
        }
        let open_families = match &self.open_families {
            None => None,
            Some(fams) => {
                per_player(fams, n, "aux.open_families")?;
                let mut out = Vec::with_capacity(n);
                for (i, fam) in fams.iter().enumerate() {
                    let ni = space.factor(i).len();
                    if fam.len() != ni {
                        return Err(semantic(format!(
                            "size mismatch: aux.open_families of player {i} has {} sets, expected one per strategy ({ni})",
                            fam.len()
                        )));
                    }
                    let minus = space.without(i);
                    out.push(
                        fam.iter()
                            .enumerate()
                            .map(|(y, l)| subset_of(&minus, l, &format!("open family of player {i} at point {y}")))
                            .collect::<Result<Vec<_>, _>>()?,
                    );
                }
                Some(out)
            }
        };
        Ok(Aux {
            dominant,
            inner,
            simplices: self.simplices.clone(),
            open_families,
        })
    }

    pub fn from_aux(space: &ProductSpace, aux: &Aux) -> Self {
        let lists = |v: &Option<Vec<ProductSubset>>| {
            v.as_ref()
                .map(|sets| sets.iter().map(|s| profiles_of(space, s)).collect())
        };
        AuxSpec {
            dominant: lists(&aux.dominant),
            inner: lists(&aux.inner),
            simplices: aux.simplices.clone(),
            open_families: aux.open_families.as_ref().map(|fams| {
                fams.iter()
                    .enumerate()
                    .map(|(i, fam)| {
                        let minus = space.without(i);
                        fam.iter().map(|s| profiles_of(&minus, s)).collect()
                    })
                    .collect()
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PD: &str = r#"{
  "format": "choiceform/1",
  "class": "normal-form",
  "players": [{"labels": ["C", "D"]}, {"labels": ["C", "D"]}],
  "utilities": [[3, 0, 5, 1], [3, 5, 0, 1]]
}"#;

    #[test]
    fn parses_a_normal_form_game() {
        let doc = parse_game(PD).unwrap();
        let g = doc.load().unwrap();
        assert!(matches!(g.game, Game::Normal(_)));
        assert_eq!(g.game.space().cardinalities(), vec![2, 2]);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_game("{\n  \"format\": \"choiceform/1\",\n  \"class\": \"normal-form\",,\n}").unwrap_err();
        match err {
            DocumentError::Syntax { line, column, .. } => assert_eq!((line, column), (3, 26)),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn out_of_range_profile_is_invalid() {
        let text = r#"{"format": "choiceform/1", "class": "choice-form",
            "players": [{"labels": ["a", "b"]}, {"labels": ["a", "b"]}],
            "choice": [[[0, 2]], []]}"#;
        let err = parse_game(text).unwrap_err();
        assert!(err.to_string().contains("invalid profile"), "{err}");
    }

    #[test]
    fn payload_must_match_class() {
        let text = PD.replace("normal-form", "choice-form");
        assert!(matches!(parse_game(&text), Err(DocumentError::Semantic(_))));
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let doc = parse_game(PD).unwrap();
        let text = serialize_game(&doc);
        assert_eq!(serialize_game(&parse_game(&text).unwrap()), text);
        let rebuilt = GameDocument::from_game(&doc.load().unwrap().game, None);
        assert_eq!(serialize_game(&rebuilt), text);
    }
}
