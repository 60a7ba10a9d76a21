//! Proof-mirroring equilibrium search.

mod fixed_point;
mod pipeline;
mod proof;
mod selection;

pub use fixed_point::{
    check_tolerance, default_tolerance, fixed_point_of_correspondences, fixed_point_of_map,
    fixed_point_of_selections, scan, FixedPointResult,
};
pub use pipeline::{solve_ec, SolveError, SolverTrace};
pub use proof::{build_proof_correspondence, ProofCorrespondence};
pub use selection::{construct_selection, DiscreteSelection};
