//! Grid analogues of the existence-theorem hypotheses.
//!
//! Each variant evaluates every lettered condition of its theorem per player
//! and collects the verdicts in a [`HypothesisReport`]. Convexity of abstract
//! strategy sets has no meaning, so those entries are marked unsupported
//! instead of guessed.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::analysis::topology::{
    has_local_intersection_property, interior_h, is_h_closed, is_h_lsc_on, GridTopology,
};
use crate::analysis::wcg::{is_wcg, WcgMode, DEFAULT_BUDGET, DEFAULT_K_MAX};
use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::game::{section_correspondence, AssumptionA, ChoiceFormGame};
use crate::geometry::{convexity_gap, in_convex_hull_real};
use crate::space::ProductSpace;
use crate::subset::ProductSubset;

/// Which existence theorem the pipeline mirrors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Variant {
    /// Local intersection selection, then Brouwer.
    V1,
    /// Weakly convex graph selection, then a fixed point of the glued map.
    V2,
    /// Lower semicontinuous selection, then Kakutani.
    V3,
    /// Transfer-open inverse, direct correspondence fixed point.
    V4,
    /// Open families covering `X_{-i}`, strong equilibrium in choice.
    V5,
}

impl Variant {
    pub const ALL: [Variant; 5] = [Variant::V1, Variant::V2, Variant::V3, Variant::V4, Variant::V5];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::V1 => "V1",
            Variant::V2 => "V2",
            Variant::V3 => "V3",
            Variant::V4 => "V4",
            Variant::V5 => "V5",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Usage(format!("unknown variant {s:?} (expected V1..V5)")))
    }
}

/// Existential ingredients the theorems assume; never invented by the solver.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Aux {
    /// `D_i ⊆ C_i` per player, as subsets of `X` (V1).
    pub dominant: Option<Vec<ProductSubset>>,
    /// Graph of `S_i : W_i → 2^{X_i}` per player, as subsets of `X` (V2, V3).
    pub inner: Option<Vec<ProductSubset>>,
    /// Declared simplex vertices in the embedding of `X_{-i}` (V2).
    pub simplices: Option<Vec<Vec<Vec<f64>>>>,
    /// `O_{x_i} ⊆ X_{-i}` for every player and every `x_i` (V5).
    pub open_families: Option<Vec<Vec<ProductSubset>>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HypothesisParams {
    pub topology: GridTopology,
    pub k_max: usize,
    pub wcg_budget: u64,
    /// V4 only: use the open-lower-section condition and the
    /// selection-then-Brouwer route.
    pub via_selection: bool,
}

impl Default for HypothesisParams {
    fn default() -> Self {
        HypothesisParams {
            topology: GridTopology::default(),
            k_max: DEFAULT_K_MAX,
            wcg_budget: DEFAULT_BUDGET,
            via_selection: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "status", rename_all = "snake_case"))]
pub enum Status {
    Pass,
    Fail { witness: String },
    /// No grid meaning (convexity of abstract sets); does not block.
    Unsupported { reason: String },
    /// Combinatorial budget ran out; blocks like a failure.
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Condition {
    /// `None` for whole-game conditions.
    pub player: Option<usize>,
    pub label: &'static str,
    pub description: String,
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HypothesisReport {
    pub variant: Variant,
    pub via_selection: bool,
    pub radius: usize,
    pub k_max: usize,
    pub conditions: Vec<Condition>,
    /// Reported, never enforced.
    pub assumption_a: AssumptionA,
    pub notes: Vec<String>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.conditions
            .iter()
            .all(|c| matches!(c.status, Status::Pass | Status::Unsupported { .. }))
    }

    pub fn failures(&self) -> impl Iterator<Item = &Condition> {
        self.conditions
            .iter()
            .filter(|c| matches!(c.status, Status::Fail { .. } | Status::Inconclusive { .. }))
    }

    pub fn condition(&self, player: Option<usize>, label: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.player == player && c.label == label)
    }
}

struct Collector<'a> {
    g: &'a ChoiceFormGame,
    out: Vec<Condition>,
}

impl Collector<'_> {
    fn push(&mut self, player: Option<usize>, label: &'static str, description: String, status: Status) {
        self.out.push(Condition {
            player,
            label,
            description,
            status,
        });
    }

    fn check(&mut self, player: usize, label: &'static str, description: &str, failure: Option<String>) {
        let status = match failure {
            None => Status::Pass,
            Some(witness) => Status::Fail { witness },
        };
        self.push(Some(player), label, description.into(), status);
    }

    fn space_condition(&mut self, i: usize) {
        let s = self.g.space().factor(i);
        let status = if s.is_grid() {
            Status::Pass
        } else {
            Status::Unsupported {
                reason: "convexity is undefined on abstract strategy sets".into(),
            }
        };
        self.push(Some(i), "a", format!("X_{i} is a nonempty grid-convex box"), status);
    }

    fn nonempty_choice(&mut self, i: usize) {
        let failure = self.g.choice(i).is_empty().then(|| format!("C_{i} is empty"));
        self.check(i, "a", &format!("C_{i} is nonempty"), failure);
    }

    /// Every section of `set` over `X_{-i}` is grid-convex or empty.
    fn sections_convex(&mut self, i: usize, label: &'static str, name: &str, set: &ProductSubset) {
        let description = format!("{name}(x_-{i}) is convex or empty for every x_-{i}");
        let factor = ProductSpace::single(self.g.space().factor(i).clone());
        if !factor.is_grid() {
            self.push(
                Some(i),
                label,
                description,
                Status::Unsupported {
                    reason: "convexity is undefined on abstract strategy sets".into(),
                },
            );
            return;
        }
        let t = section_correspondence(self.g.space(), set, i);
        let minus = self.g.space().without(i);
        let mut failure = None;
        for m in minus.iter() {
            if let Some(gap) = convexity_gap(&factor, t.value(m)).expect("grid factor") {
                failure = Some(format!(
                    "section at x_-{i} = {} misses {} from its hull",
                    minus.describe(m),
                    factor.describe(gap)
                ));
                break;
            }
        }
        self.check(i, label, &description, failure);
    }
}

fn neighbor_escape(space: &ProductSpace, set: &ProductSubset, topo: GridTopology) -> Option<String> {
    let int = interior_h(space, set, topo);
    set.difference(&int).first().map(|x| {
        let out = space
            .neighbors(x, topo.radius)
            .into_iter()
            .find(|&z| !set.contains(z))
            .expect("a non-interior point has an outside neighbor");
        format!("{} has neighbor {} outside the set", space.describe(x), space.describe(out))
    })
}

fn check_per_player<T>(what: &'static str, items: &[T], players: usize) -> Result<()> {
    if items.len() != players {
        return Err(Error::SizeMismatch {
            what,
            expected: players,
            found: items.len(),
        });
    }
    Ok(())
}

fn check_universes(what: &'static str, sets: &[ProductSubset], universe: usize) -> Result<()> {
    if let Some(s) = sets.iter().find(|s| s.universe() != universe) {
        return Err(Error::SizeMismatch {
            what,
            expected: universe,
            found: s.universe(),
        });
    }
    Ok(())
}

/// Inner correspondence `S_i` read from its graph subset of `X`.
pub(crate) fn inner_correspondence(g: &ChoiceFormGame, i: usize, graph: &ProductSubset) -> Correspondence {
    section_correspondence(g.space(), graph, i)
}

/// Grid points of `X_{-i}` inside the declared simplex.
pub fn simplex_points(minus: &ProductSpace, vertices: &[Vec<f64>]) -> Result<ProductSubset> {
    let d = minus.dim();
    if !minus.is_grid() {
        return Err(Error::UnsupportedSpace("a simplex needs grid opponents".into()));
    }
    if vertices.is_empty() || vertices.iter().any(|v| v.len() != d) {
        return Err(Error::Usage(format!("simplex vertices must be nonempty points of dimension {d}")));
    }
    Ok(ProductSubset::from_fn(minus.len(), |m| {
        in_convex_hull_real(vertices, &minus.embedding(m).expect("grid"))
    }))
}

/// Evaluates the grid analogue of each condition of `variant`.
pub fn check_theorem_hypotheses(
    g: &ChoiceFormGame,
    variant: Variant,
    params: &HypothesisParams,
    aux: &Aux,
) -> Result<HypothesisReport> {
    let n = g.players();
    let space = g.space();
    let topo = params.topology;
    let mut c = Collector { g, out: Vec::new() };
    let mut notes = Vec::new();

    match variant {
        Variant::V1 => {
            let dom = aux.dominant.as_ref().ok_or(Error::MissingAux {
                condition: "b",
                ingredient: "subfamily D_i",
            })?;
            check_per_player("subfamilies D_i", dom, n)?;
            check_universes("subfamily D_i", dom, space.len())?;
            for i in 0..n {
                let minus = space.without(i);
                let d_i = &dom[i];
                c.space_condition(i);
                c.check(
                    i,
                    "b",
                    &format!("D_{i} is a nonempty subset of C_{i}"),
                    if d_i.is_empty() {
                        Some(format!("D_{i} is empty"))
                    } else {
                        d_i.difference(g.choice(i))
                            .first()
                            .map(|x| format!("{} is in D_{i} but not C_{i}", space.describe(x)))
                    },
                );
                let w_d = crate::game::nonempty_sections(space, d_i, i);
                let w_c = g.nonempty_sections(i);
                c.check(
                    i,
                    "b",
                    &format!("W_{i} = {{x_-{i} : D_{i}(x_-{i}) nonempty}} is h-closed"),
                    (!is_h_closed(&minus, &w_d, topo))
                        .then(|| neighbor_escape(&minus, &w_d.complement(), topo).expect("not open")),
                );
                c.check(
                    i,
                    "b",
                    &format!("D_{i}(x_-{i}) nonempty iff C_{i}(x_-{i}) nonempty"),
                    w_d.union(&w_c)
                        .difference(&w_d.intersection(&w_c))
                        .first()
                        .map(|m| format!("emptiness differs at x_-{i} = {}", minus.describe(m))),
                );
                let sec = section_correspondence(space, d_i, i);
                c.check(
                    i,
                    "c",
                    &format!("D_{i} sections have the local intersection property (radius {})", topo.radius),
                    has_local_intersection_property(&sec, topo)
                        .witness()
                        .map(|&m| format!("neighborhood of x_-{i} = {} has no common point", minus.describe(m))),
                );
                c.sections_convex(i, "d", &format!("D_{i}"), d_i);
            }
        }
        Variant::V2 => {
            let inner = aux.inner.as_ref().ok_or(Error::MissingAux {
                condition: "c",
                ingredient: "WCG correspondence S_i",
            })?;
            let needs_simplex = (0..n).any(|i| space.without(i).is_grid());
            let simplices = match aux.simplices.as_ref() {
                Some(s) => {
                    check_per_player("simplices", s, n)?;
                    Some(s)
                }
                None if needs_simplex => {
                    return Err(Error::MissingAux {
                        condition: "b",
                        ingredient: "declared simplex for W_i",
                    })
                }
                None => None,
            };
            check_per_player("inner correspondences S_i", inner, n)?;
            check_universes("inner correspondence S_i", inner, space.len())?;
            notes.push(
                "W_i lives in X_-i; the simplex condition is tested in X_-i rather than X".into(),
            );
            for i in 0..n {
                let minus = space.without(i);
                let w = g.nonempty_sections(i);
                c.space_condition(i);
                c.nonempty_choice(i);
                let description = format!("W_{i} equals the grid points of the declared simplex");
                match simplices.filter(|_| minus.is_grid()) {
                    None => c.push(
                        Some(i),
                        "b",
                        description,
                        Status::Unsupported {
                            reason: "simplices need grid opponents".into(),
                        },
                    ),
                    Some(simplices) => {
                        let declared = simplex_points(&minus, &simplices[i])?;
                        notes.push(format!(
                            "player {i}: declared simplex dimension n_{i} - 1 = {}",
                            simplices[i].len().saturating_sub(1)
                        ));
                        c.check(
                            i,
                            "b",
                            &description,
                            w.union(&declared)
                                .difference(&w.intersection(&declared))
                                .first()
                                .map(|m| format!("membership differs at x_-{i} = {}", minus.describe(m))),
                        );
                    }
                }
                let s_graph = &inner[i];
                c.check(
                    i,
                    "c",
                    &format!("S_{i}(x_-{i}) is contained in C_{i}(x_-{i}) on W_{i}"),
                    s_graph
                        .difference(g.choice(i))
                        .iter()
                        .find(|&x| w.contains(space.split(x, i).0))
                        .map(|x| format!("{} is in S_{i} but not C_{i}", space.describe(x))),
                );
                let s = inner_correspondence(g, i, s_graph);
                let description = format!("S_{i} has a weakly convex graph on W_{i}");
                match is_wcg(&s, Some(&w), params.k_max, params.wcg_budget) {
                    Ok(v) if v.holds => {
                        let mode = match v.mode {
                            WcgMode::CommonValue => "common value".into(),
                            WcgMode::ConvexGraph => "convex graph".into(),
                            WcgMode::Bounded { k_max } => format!("exhaustive up to k = {k_max}"),
                        };
                        c.push(Some(i), "c", format!("{description} ({mode})"), Status::Pass);
                    }
                    Ok(v) => {
                        let subset: Vec<String> =
                            v.witness.unwrap_or_default().into_iter().map(|m| minus.describe(m)).collect();
                        c.check(
                            i,
                            "c",
                            &description,
                            Some(format!("no convex selection over {{{}}}", subset.join(", "))),
                        );
                    }
                    Err(Error::UnsupportedSpace(reason)) => {
                        c.push(Some(i), "c", description, Status::Inconclusive { reason });
                    }
                    Err(e @ Error::BudgetExceeded { .. }) => {
                        c.push(Some(i), "c", description, Status::Inconclusive { reason: format!("{e}") });
                    }
                    Err(e) => return Err(e),
                }
                c.sections_convex(i, "d", &format!("C_{i}"), g.choice(i));
            }
        }
        Variant::V3 => {
            let inner = aux.inner.as_ref().ok_or(Error::MissingAux {
                condition: "d",
                ingredient: "lower semicontinuous correspondence S_i",
            })?;
            check_per_player("inner correspondences S_i", inner, n)?;
            check_universes("inner correspondence S_i", inner, space.len())?;
            for i in 0..n {
                let minus = space.without(i);
                let w = g.nonempty_sections(i);
                c.space_condition(i);
                c.check(
                    i,
                    "b",
                    &format!("C_{i} is nonempty and h-open"),
                    if g.choice(i).is_empty() {
                        Some(format!("C_{i} is empty"))
                    } else {
                        neighbor_escape(space, g.choice(i), topo)
                    },
                );
                c.check(
                    i,
                    "c",
                    &format!("W_{i} is nonempty and h-open"),
                    if w.is_empty() {
                        Some(format!("W_{i} is empty"))
                    } else {
                        neighbor_escape(&minus, &w, topo)
                    },
                );
                let s = inner_correspondence(g, i, &inner[i]);
                c.check(
                    i,
                    "d",
                    &format!("S_{i} is h-lower semicontinuous on W_{i}"),
                    is_h_lsc_on(&s, Some(&w), topo).witness().map(|wit| {
                        format!(
                            "value {} at x_-{i} = {} is not met near neighbor {}",
                            space.factor(i).label(wit.y),
                            minus.describe(wit.x),
                            minus.describe(wit.neighbor)
                        )
                    }),
                );
                let factor = ProductSpace::single(space.factor(i).clone());
                if factor.is_grid() {
                    let bad = w.iter().find(|&m| convexity_gap(&factor, s.value(m)).expect("grid").is_some());
                    c.check(
                        i,
                        "d",
                        &format!("S_{i} has grid-convex values on W_{i}"),
                        bad.map(|m| format!("S_{i}(x_-{i} = {}) is not convex", minus.describe(m))),
                    );
                } else {
                    c.push(
                        Some(i),
                        "d",
                        format!("S_{i} has grid-convex values on W_{i}"),
                        Status::Unsupported {
                            reason: "convexity is undefined on abstract strategy sets".into(),
                        },
                    );
                }
                let sections = g.section_correspondence(i);
                c.check(
                    i,
                    "d",
                    &format!("C_{i}(x_-{i}) meets S_{i}(x_-{i}) on W_{i}"),
                    w.iter()
                        .find(|&m| !sections.value(m).intersects(s.value(m)))
                        .map(|m| format!("disjoint at x_-{i} = {}", minus.describe(m))),
                );
                c.sections_convex(i, "e", &format!("C_{i}"), g.choice(i));
            }
        }
        Variant::V4 => {
            for i in 0..n {
                c.space_condition(i);
                c.nonempty_choice(i);
            }
            if params.via_selection {
                for i in 0..n {
                    let minus = space.without(i);
                    let w = g.nonempty_sections(i);
                    let sections = g.section_correspondence(i);
                    let mut failure = None;
                    for y in 0..space.factor(i).len() {
                        let lower = sections.lower_inverse(y).expect("point of X_i");
                        let set = lower.union(&w.complement());
                        if let Some(wit) = neighbor_escape(&minus, &set, topo) {
                            failure = Some(format!("for x_{i} = {}: {wit}", space.factor(i).label(y)));
                            break;
                        }
                    }
                    c.check(
                        i,
                        "b",
                        &format!("{{x_-{i} : x_{i} in C_{i}(x_-{i})}} together with the complement of W_{i} is h-open for every x_{i}"),
                        failure,
                    );
                }
            } else {
                let cover = inverse_interior_cover(g, topo);
                let status = match cover.complement().first() {
                    None => Status::Pass,
                    Some(x) => Status::Fail {
                        witness: format!("{} lies in no interior of T^-1(y)", space.describe(x)),
                    },
                };
                c.push(
                    None,
                    "b",
                    "X is the union over y of int_X of the lower inverses T^-1(y)".into(),
                    status,
                );
            }
            for i in 0..n {
                c.sections_convex(i, "c", &format!("C_{i}"), g.choice(i));
            }
        }
        Variant::V5 => {
            let families = aux.open_families.as_ref().ok_or(Error::MissingAux {
                condition: "b",
                ingredient: "open families O_{x_i}",
            })?;
            check_per_player("open families", families, n)?;
            let mut strong = true;
            for i in 0..n {
                let minus = space.without(i);
                let fam = &families[i];
                if fam.len() != space.factor(i).len() {
                    return Err(Error::SizeMismatch {
                        what: "open family",
                        expected: space.factor(i).len(),
                        found: fam.len(),
                    });
                }
                check_universes("open family member", fam, minus.len())?;
                c.space_condition(i);
                c.nonempty_choice(i);
                let sections = g.section_correspondence(i);
                let factor = space.factor(i);
                let mut contained = None;
                let mut open = None;
                let mut union = ProductSubset::empty(minus.len());
                for (y, o) in fam.iter().enumerate() {
                    let lower = sections.lower_inverse(y).expect("point of X_i");
                    if contained.is_none() {
                        contained = o.difference(&lower).first().map(|m| {
                            format!(
                                "O for x_{i} = {} contains {} where x_{i} is not chosen",
                                factor.label(y),
                                minus.describe(m)
                            )
                        });
                    }
                    if open.is_none() {
                        open = neighbor_escape(&minus, o, topo)
                            .map(|wit| format!("O for x_{i} = {}: {wit}", factor.label(y)));
                    }
                    strong &= *o == lower;
                    union = union.union(o);
                }
                c.check(
                    i,
                    "b",
                    &format!("O_(x_{i}) lies in the lower section of C_{i} for every x_{i}"),
                    contained,
                );
                c.check(i, "b", &format!("O_(x_{i}) is h-open for every x_{i}"), open);
                c.check(
                    i,
                    "b",
                    &format!("the sets O_(x_{i}) cover X_-{i}"),
                    union
                        .complement()
                        .first()
                        .map(|m| format!("x_-{i} = {} is uncovered", minus.describe(m))),
                );
                c.sections_convex(i, "c", &format!("C_{i}"), g.choice(i));
            }
            notes.push(if strong {
                "every O_(x_i) equals its lower section (strong form)".into()
            } else {
                "some O_(x_i) is a proper subset of its lower section".into()
            });
        }
    }
    if variant != Variant::V4 && params.via_selection {
        notes.push("the selection route flag only affects V4".into());
    }
    Ok(HypothesisReport {
        variant,
        via_selection: params.via_selection && variant == Variant::V4,
        radius: topo.radius,
        k_max: params.k_max,
        conditions: c.out,
        assumption_a: g.check_assumption_a(),
        notes,
    })
}

/// Union over `y ∈ X` of `int_X T^{-1}(y)` where
/// `T^{-1}(y) = ⋂_i {x : x_{-i} ∉ W_i or y_i ∈ C_i(x_{-i})}`.
pub fn inverse_interior_cover(g: &ChoiceFormGame, topo: GridTopology) -> ProductSubset {
    let space = g.space();
    let n = g.players();
    // lifted[i][y_i] ⊆ X
    let lifted: Vec<Vec<ProductSubset>> = (0..n)
        .map(|i| {
            let w = g.nonempty_sections(i);
            (0..space.factor(i).len())
                .map(|yi| {
                    ProductSubset::from_fn(space.len(), |x| {
                        let (m, _) = space.split(x, i);
                        !w.contains(m) || g.choice(i).contains(space.join(i, m, yi))
                    })
                })
                .collect()
        })
        .collect();
    let mut cover = ProductSubset::empty(space.len());
    for y in space.iter() {
        let mut inv = ProductSubset::full(space.len());
        for i in 0..n {
            inv = inv.intersection(&lifted[i][space.coord(y, i)]);
            if inv.is_empty() {
                break;
            }
        }
        if !inv.is_empty() {
            cover = cover.union(&interior_h(space, &inv, topo));
        }
    }
    cover
}
