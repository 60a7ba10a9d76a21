//! Seeded instance generators and the bundled auxiliary ingredients.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::hypotheses::{Aux, Variant};
use crate::error::{Error, Result};
use crate::game::{section_correspondence, ChoiceFormGame};
use crate::space::{ProductSpace, StrategySpace};
use crate::subset::ProductSubset;

/// Shape of generated transfer-open-inverse grid games.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalGameConfig {
    pub players: usize,
    /// Grid points per player.
    pub points: usize,
    pub mesh: f64,
    /// Largest move of a section center per mesh step of one opponent.
    pub max_step: usize,
}

impl Default for IntervalGameConfig {
    fn default() -> Self {
        IntervalGameConfig {
            players: 2,
            points: 9,
            mesh: 0.25,
            max_step: 1,
        }
    }
}

/// Game on 1-D grids whose sections are intervals `[c - w, c + w]` with a
/// center moving by at most `max_step` per opponent step and `w` no less
/// than the center's total per-step drift, so that every three consecutive
/// sections along any axis overlap.
pub fn interval_game(seed: u64, cfg: IntervalGameConfig) -> Result<ChoiceFormGame> {
    if cfg.players < 1 || cfg.points < 1 {
        return Err(Error::Usage("need at least one player and one grid point".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let upper = (cfg.points - 1) as f64 * cfg.mesh;
    let spaces: Vec<StrategySpace> = (0..cfg.players)
        .map(|p| StrategySpace::interval(p, 0.0, upper, cfg.mesh))
        .collect::<Result<_>>()?;
    let space = ProductSpace::new(spaces.clone());
    let n = cfg.points as i64;
    let opponents = cfg.players - 1;
    let mut choice = Vec::with_capacity(cfg.players);
    for i in 0..cfg.players {
        // Additive walks, one per opponent axis.
        let walks: Vec<Vec<i64>> = (0..opponents)
            .map(|_| {
                let mut w = vec![rng.random_range(0..n)];
                for _ in 1..cfg.points {
                    let s = cfg.max_step as i64;
                    let prev = *w.last().unwrap();
                    w.push(prev + rng.random_range(-s..=s));
                }
                w
            })
            .collect();
        let drift = (cfg.max_step * opponents) as i64;
        let half = drift + rng.random_range(0..=1);
        let offset = rng.random_range(0..n);
        let minus = space.without(i);
        let mut c = ProductSubset::empty(space.len());
        for m in minus.iter() {
            let coords = minus.unflatten(m);
            let raw: i64 = coords.iter().zip(&walks).map(|(&k, w)| w[k]).sum::<i64>() - walks.iter().map(|w| w[0]).sum::<i64>();
            let center = (offset + raw).clamp(0, n - 1);
            let lo = (center - half).max(0) as usize;
            let hi = (center + half).min(n - 1) as usize;
            for y in lo..=hi {
                c.insert(space.join(i, m, y));
            }
        }
        choice.push(c);
    }
    ChoiceFormGame::new(spaces, choice)
}

/// Ingredients read off the game itself: `D_i = C_i`, `S_i = C_i`, the
/// lower sections as open families, and for 1-D opponents the segment
/// spanned by `W_i`.
pub fn derive_aux(g: &ChoiceFormGame, variant: Variant) -> Aux {
    let space = g.space();
    let mut aux = Aux::default();
    match variant {
        Variant::V1 => aux.dominant = Some(g.choice_sets().to_vec()),
        Variant::V2 | Variant::V3 => {
            aux.inner = Some(g.choice_sets().to_vec());
            if variant == Variant::V2 {
                // Empty vertex lists stand in for opponents without a segment.
                aux.simplices = Some(
                    (0..g.players())
                        .map(|i| {
                            let minus = space.without(i);
                            let w = g.nonempty_sections(i);
                            let ends = (minus.dim() == 1 && minus.is_grid())
                                .then(|| Some((w.first()?, w.iter().last()?)))
                                .flatten();
                            ends.map_or_else(Vec::new, |(a, b)| {
                                vec![minus.embedding(a).expect("grid"), minus.embedding(b).expect("grid")]
                            })
                        })
                        .collect(),
                );
            }
        }
        Variant::V5 => {
            aux.open_families = Some(
                (0..g.players())
                    .map(|i| {
                        let t = section_correspondence(space, g.choice(i), i);
                        (0..space.factor(i).len())
                            .map(|y| t.lower_inverse(y).expect("point of X_i"))
                            .collect()
                    })
                    .collect(),
            )
        }
        Variant::V4 => {}
    }
    aux
}
