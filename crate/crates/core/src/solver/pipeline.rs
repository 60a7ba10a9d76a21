use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::analysis::hypotheses::{check_theorem_hypotheses, Aux, HypothesisParams, HypothesisReport, Variant};
use crate::equilibrium::{is_equilibrium_in_choice, is_strong_ec, EquilibriumCertificate, EquilibriumKind};
use crate::error::Error;
use crate::game::ChoiceFormGame;
use crate::solver::fixed_point::{
    default_tolerance, fixed_point_of_correspondences, fixed_point_of_selections, FixedPointResult,
};
use crate::solver::proof::build_proof_correspondence;
use crate::solver::selection::construct_selection;
use crate::space::Profile;

/// How a certificate was produced.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SolverTrace {
    pub variant: Variant,
    pub via_selection: bool,
    pub hypotheses: HypothesisReport,
    /// Hypotheses failed and the run continued anyway.
    pub forced: bool,
    /// Per-player greedy modulus on the selection route.
    pub selection_modulus: Option<Vec<f64>>,
    pub residual: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    /// The hypotheses could not be evaluated at all.
    #[error(transparent)]
    Input(Error),
    #[error("hypotheses of {} do not hold", .0.variant)]
    Hypotheses(Box<HypothesisReport>),
    #[error("{error}")]
    Search {
        report: Box<HypothesisReport>,
        forced: bool,
        error: Error,
    },
    /// The scan found a candidate the exact checker rejects.
    #[error("candidate {profile:?} (residual {residual}) is not an equilibrium: the hypotheses leave a gap at this mesh")]
    Unverified {
        report: Box<HypothesisReport>,
        forced: bool,
        profile: Profile,
        residual: f64,
    },
}

impl SolveError {
    pub fn report(&self) -> Option<&HypothesisReport> {
        match self {
            SolveError::Input(_) => None,
            SolveError::Hypotheses(r) => Some(r),
            SolveError::Search { report, .. } | SolveError::Unverified { report, .. } => Some(report),
        }
    }
}

/// Hypotheses, proof correspondences, fixed-point scan, exact verification.
///
/// V1 to V3 and V4 with `via_selection` scan the product of greedy
/// selections; V4 and V5 otherwise scan the product correspondence. V5
/// certifies a strong equilibrium in choice. `tol` defaults to one mesh step.
pub fn solve_ec(
    g: &ChoiceFormGame,
    variant: Variant,
    params: &HypothesisParams,
    aux: &Aux,
    tol: Option<f64>,
    force: bool,
) -> Result<EquilibriumCertificate, SolveError> {
    let report = check_theorem_hypotheses(g, variant, params, aux).map_err(SolveError::Input)?;
    let forced = !report.passed();
    if forced && !force {
        return Err(SolveError::Hypotheses(Box::new(report)));
    }
    let space = g.space();
    let tol = tol.unwrap_or_else(|| default_tolerance(space));
    let search_err = |report: &HypothesisReport, error: Error| SolveError::Search {
        report: Box::new(report.clone()),
        forced,
        error,
    };

    let mut proofs = Vec::with_capacity(g.players());
    for i in 0..g.players() {
        match build_proof_correspondence(g, i, variant, aux) {
            Ok(t) => proofs.push(t),
            Err(e) => return Err(search_err(&report, e)),
        }
    }
    let via_selection = report.via_selection;
    let selection_route = matches!(variant, Variant::V1 | Variant::V2 | Variant::V3) || via_selection;
    let (found, modulus): (Result<FixedPointResult, Error>, _) = if selection_route {
        let sels: Vec<_> = proofs
            .iter()
            .map(|t| construct_selection(&t.values, t.player, params.topology))
            .collect();
        let modulus = sels.iter().map(|s| s.modulus).collect();
        (fixed_point_of_selections(space, &sels, tol), Some(modulus))
    } else {
        let values: Vec<_> = proofs.iter().map(|t| &t.values).collect();
        (fixed_point_of_correspondences(space, &values, tol), None)
    };
    let found = found.map_err(|e| search_err(&report, e))?;

    let (kind, check) = if variant == Variant::V5 {
        (EquilibriumKind::Sec, is_strong_ec(g, &found.point))
    } else {
        (EquilibriumKind::Ec, is_equilibrium_in_choice(g, &found.point))
    };
    let check = check.map_err(|e| search_err(&report, e))?;
    if !check.holds {
        return Err(SolveError::Unverified {
            report: Box::new(report),
            forced,
            profile: found.point,
            residual: found.residual,
        });
    }
    Ok(EquilibriumCertificate {
        profile: found.point,
        kind,
        clauses: check.clauses,
        trace: Some(Box::new(SolverTrace {
            variant,
            via_selection,
            hypotheses: report,
            forced,
            selection_modulus: modulus,
            residual: found.residual,
            tolerance: found.tolerance,
        })),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::NormalFormGame;
    use crate::space::StrategySpace;
    use crate::subset::ProductSubset;
    use alloc::vec;

    fn pd() -> ChoiceFormGame {
        let s = |p| StrategySpace::labels(p, ["C", "D"]).unwrap();
        let u = vec![vec![3.0, 0.0, 5.0, 1.0], vec![3.0, 5.0, 0.0, 1.0]];
        NormalFormGame::new(vec![s(0), s(1)], u, None).unwrap().to_choice_form()
    }

    #[test]
    fn prisoners_dilemma_v4() {
        let c = solve_ec(&pd(), Variant::V4, &HypothesisParams::default(), &Aux::default(), None, false).unwrap();
        assert_eq!(c.profile, Profile(vec![1, 1]));
        assert_eq!(c.kind, EquilibriumKind::Ec);
        assert_eq!(c.trace.unwrap().residual, 0.0);
    }

    #[test]
    fn full_choice_v5_is_strong() {
        let s = |p| StrategySpace::interval(p, 0.0, 1.0, 0.5).unwrap();
        let g = ChoiceFormGame::new(vec![s(0), s(1)], vec![ProductSubset::full(9); 2]).unwrap();
        let aux = Aux {
            open_families: Some(vec![vec![ProductSubset::full(3); 3]; 2]),
            ..Default::default()
        };
        let c = solve_ec(&g, Variant::V5, &HypothesisParams::default(), &aux, None, false).unwrap();
        assert_eq!(c.kind, EquilibriumKind::Sec);
        assert_eq!(c.profile, Profile(vec![0, 0]));
    }

    #[test]
    fn pennies_fail_even_when_forced() {
        let s = |p| StrategySpace::interval(p, 0.0, 1.0, 1.0).unwrap();
        let u = vec![vec![1.0, -1.0, -1.0, 1.0], vec![-1.0, 1.0, 1.0, -1.0]];
        let g = NormalFormGame::new(vec![s(0), s(1)], u, None).unwrap().to_choice_form();
        let p = HypothesisParams::default();
        assert!(matches!(
            solve_ec(&g, Variant::V4, &p, &Aux::default(), None, false),
            Err(SolveError::Hypotheses(_))
        ));
        match solve_ec(&g, Variant::V4, &p, &Aux::default(), None, true) {
            Err(SolveError::Unverified { forced, .. }) => assert!(forced),
            other => panic!("{other:?}"),
        }
    }
}
