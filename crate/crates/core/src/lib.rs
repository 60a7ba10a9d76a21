//! Games in choice form on finite grids: exact equilibrium checkers,
//! discrete analogues of the topological existence hypotheses, and a solver
//! that follows the existence proofs step by step.
//!
//! Strategy sets are either abstract label sets or boxes sampled with a
//! uniform mesh. Everything is finite and exact; only convex-hull membership
//! uses floating point.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod correspondence;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod generate;
pub mod geometry;
pub mod solver;
pub mod space;
pub mod subset;

pub use correspondence::Correspondence;
pub use equilibrium::{check, enumerate, Check, Clause, EquilibriumCertificate, EquilibriumKind, GameRef};
pub use error::{Error, Result};
pub use game::{ChoiceFormGame, NormalFormGame, QualitativeGame};
pub use space::{Grid, Profile, ProductSpace, SpaceKind, StrategySpace};
pub use subset::ProductSubset;
