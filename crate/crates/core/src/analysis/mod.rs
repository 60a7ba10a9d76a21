//! Grid analogues of the topological and convexity hypotheses.

pub mod hypotheses;
pub mod topology;
pub mod wcg;

pub use hypotheses::{
    check_theorem_hypotheses, inverse_interior_cover, simplex_points, Aux, Condition, HypothesisParams,
    HypothesisReport, Status, Variant,
};
pub use topology::{
    closure_h, glue, has_local_intersection_on, has_local_intersection_property, has_transfer_open_inverse,
    interior_h, inverse_interiors_cover, is_h_closed, is_h_lsc, is_h_lsc_on, is_h_open, is_h_usc,
    is_transfer_open_valued, GridTopology, SemicontinuityWitness, Verdict,
};
pub use wcg::{is_wcg, wcg_tier1, wcg_tier2, WcgMode, WcgVerdict, DEFAULT_BUDGET, DEFAULT_K_MAX};
