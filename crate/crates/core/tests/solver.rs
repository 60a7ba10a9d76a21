use choiceform_core::analysis::{GridTopology, HypothesisParams, Variant};
use choiceform_core::generate::{derive_aux, interval_game, IntervalGameConfig};
use choiceform_core::solver::{
    build_proof_correspondence, construct_selection, fixed_point_of_map, solve_ec, SolveError,
};
use choiceform_core::{
    enumerate, ChoiceFormGame, Correspondence, EquilibriumKind, GameRef, ProductSpace, ProductSubset, StrategySpace,
};
use proptest::prelude::*;

fn line(n: usize) -> ProductSpace {
    ProductSpace::single(StrategySpace::interval(0, 0.0, (n - 1) as f64 * 0.5, 0.5).unwrap())
}

fn game_from_bits(n: usize, bits: &[Vec<bool>]) -> ChoiceFormGame {
    let s = |p| StrategySpace::interval(p, 0.0, (n - 1) as f64 * 0.5, 0.5).unwrap();
    let choice = bits.iter().map(|b| ProductSubset::from_fn(n * n, |x| b[x])).collect();
    ChoiceFormGame::new(vec![s(0), s(1)], choice).unwrap()
}

#[test]
fn generated_games_solve_to_enumerated_equilibria() {
    let params = HypothesisParams::default();
    for seed in 0..20 {
        let g = interval_game(seed, IntervalGameConfig::default()).unwrap();
        let aux = derive_aux(&g, Variant::V4);
        let cert = solve_ec(&g, Variant::V4, &params, &aux, None, false).unwrap();
        let all: Vec<_> = enumerate(GameRef::Choice(&g), EquilibriumKind::Ec)
            .unwrap()
            .into_iter()
            .map(|c| c.profile)
            .collect();
        assert!(all.contains(&cert.profile), "seed {seed}");
    }
}

#[test]
fn solving_is_deterministic() {
    let g = interval_game(7, IntervalGameConfig::default()).unwrap();
    let aux = derive_aux(&g, Variant::V4);
    let params = HypothesisParams::default();
    let a = solve_ec(&g, Variant::V4, &params, &aux, None, false).unwrap();
    let b = solve_ec(&g, Variant::V4, &params, &aux, None, false).unwrap();
    assert_eq!(a, b);
    let selecting = HypothesisParams { via_selection: true, ..params };
    let a = solve_ec(&g, Variant::V4, &selecting, &aux, None, true);
    let b = solve_ec(&g, Variant::V4, &selecting, &aux, None, true);
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}

#[test]
fn forced_runs_report_verification_failures() {
    // Each player wants to differ from the other on a two-point grid.
    let g = game_from_bits(2, &[vec![false, true, true, false], vec![false, true, true, false]]);
    let params = HypothesisParams::default();
    let aux = derive_aux(&g, Variant::V4);
    match solve_ec(&g, Variant::V4, &params, &aux, None, true) {
        Ok(c) => assert!(enumerate(GameRef::Choice(&g), EquilibriumKind::Ec)
            .unwrap()
            .iter()
            .any(|e| e.profile == c.profile)),
        Err(SolveError::Unverified { .. }) | Err(SolveError::Search { .. }) => {}
        Err(e) => panic!("unexpected {e}"),
    }
}

#[test]
fn map_scan_finds_the_first_fixed_point() {
    let s = line(5);
    let r = fixed_point_of_map(&s, &[1, 1, 3, 3, 3], 0.5).unwrap();
    assert_eq!(r.point.0, vec![1]);
    assert_eq!(r.residual, 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn proof_correspondence_matches_pointwise(bits in prop::collection::vec(prop::collection::vec(any::<bool>(), 16), 2)) {
        let g = game_from_bits(4, &bits);
        let space = g.space();
        for i in 0..2 {
            let p = build_proof_correspondence(&g, i, Variant::V4, &choiceform_core::analysis::Aux::default());
            let sections: Vec<Vec<usize>> = (0..4)
                .map(|m| (0..4).filter(|&xi| g.choice(i).contains(space.join(i, m, xi))).collect())
                .collect();
            let union: Vec<usize> = sections.iter().flatten().copied().collect();
            if union.is_empty() {
                prop_assert!(p.is_err());
                continue;
            }
            let p = p.unwrap();
            let (lo, hi) = (*union.iter().min().unwrap(), *union.iter().max().unwrap());
            for (m, sec) in sections.iter().enumerate() {
                let expected: Vec<usize> = if sec.is_empty() { (lo..=hi).collect() } else { sec.clone() };
                prop_assert_eq!(p.values.value(m).to_vec(), expected);
                prop_assert_eq!(p.w.contains(m), !sec.is_empty());
            }
        }
    }

    #[test]
    fn selections_pick_values(bits in prop::collection::vec(prop::collection::vec(any::<bool>(), 6), 7), r in 1usize..3) {
        let dom = line(7);
        let cod = line(6);
        let t = Correspondence::from_fn(dom.clone(), cod.clone(), |x| {
            let mut v = ProductSubset::from_fn(6, |y| bits[x][y]);
            if v.is_empty() {
                v.insert(x % 6);
            }
            v
        })
        .unwrap();
        let sel = construct_selection(&t, 0, GridTopology::new(r));
        let mut jump: f64 = 0.0;
        for x in dom.iter() {
            prop_assert!(t.value(x).contains(sel.map[x]));
            for z in dom.neighbors(x, r) {
                jump = jump.max(cod.distance(sel.map[x], sel.map[z]));
            }
        }
        prop_assert_eq!(sel.modulus, jump);
    }

    #[test]
    fn correspondence_scan_results_verify(seed in 0u64..1000) {
        let g = interval_game(seed, IntervalGameConfig { points: 6, ..IntervalGameConfig::default() }).unwrap();
        let aux = derive_aux(&g, Variant::V4);
        let c = solve_ec(&g, Variant::V4, &HypothesisParams::default(), &aux, None, false).unwrap();
        prop_assert!(choiceform_core::check(GameRef::Choice(&g), EquilibriumKind::Ec, &c.profile).unwrap().holds);
    }
}
