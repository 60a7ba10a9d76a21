use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by model construction, analysis and the solver pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("player {player} out of range for a {players}-player game")]
    PlayerOutOfRange { player: usize, players: usize },
    #[error("invalid strategy space: {0}")]
    InvalidSpace(String),
    #[error("size mismatch: {what} has {found} entries, expected {expected}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid utility value {value} for player {player}")]
    InvalidUtility { player: usize, value: f64 },
    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("missing auxiliary ingredient for condition {condition}: {ingredient}")]
    MissingAux {
        condition: &'static str,
        ingredient: &'static str,
    },
    #[error("cannot build proof correspondence for player {player}: condition {condition} ({detail})")]
    Construction {
        player: usize,
        condition: &'static str,
        detail: String,
    },
    #[error("combinatorial budget of {budget} exhausted after {subsets_checked} subsets (complete up to k = {complete_k})")]
    BudgetExceeded {
        budget: u64,
        subsets_checked: u64,
        complete_k: usize,
    },
    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),
    #[error("no fixed point within tolerance {tolerance}: best residual {residual} at {argmin:?}")]
    NoFixedPoint {
        argmin: Vec<usize>,
        residual: f64,
        tolerance: f64,
    },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
