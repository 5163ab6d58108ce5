mod common;

use common::*;
use proptest::prelude::*;
use shadowmin::{
    classify, conflicts, is_admissible, mu, mu_loc, solve_bruteforce, solve_cactus, solve_tree_dp, Bit,
    Coorientation, GeneratorKind, Kind, Mode, ShadowError, ShadowFile, Status, VertexId, validate_shadow,
};

const SELF_GLUED: &str = r#"{"version": 1,
 "arcs": [{"id": 0, "polygon": 0}, {"id": 1, "polygon": 0}],
 "vertices": [{"id": 0, "rotation": [[1, "head"], [0, "head"], [0, "tail"], [1, "tail"]], "transitions": [[1, 0], [0, 1]]}],
 "polygons": [{"id": 0, "sides": [0, 1], "corners": [{"vertex": 0, "neighbor": 0}, {"vertex": 0, "neighbor": 0}]}],
 "traversal": [0, 1], "outer": {"arc": 0, "side": "left"}}"#;

#[test]
fn basic_curves() {
    for (s, v) in [(circle(), 0), (fig8(), 2), (curl1(), 0)] {
        assert_eq!(solve_tree_dp(&s).unwrap().value, v);
        assert_eq!(solve_bruteforce(&s, Mode::Local).unwrap().value, v);
        let m = mu(&s).unwrap();
        assert_eq!(m.value, v);
        assert_eq!(m.status, Status::ExactTreeLike);
        assert!(is_admissible(&s, &m.witness).is_ok());
    }
}

#[test]
fn long_curl_chain_needs_no_conflicts() {
    let s = chain(50);
    assert_eq!(mu(&s).unwrap().value, 0);
}

#[test]
fn a_two_gon_can_force_a_conflict() {
    let s = tree(4, 30);
    let sol = mu(&s).unwrap();
    assert_eq!(sol.value, 2);
    assert_eq!(solve_bruteforce(&s, Mode::Local).unwrap().value, 2);
    let at: Vec<VertexId> = sol.conflict_report.conflicting_transitions.iter().map(|t| t.0).collect();
    assert_eq!(at.len(), 2);
    assert_eq!(at[0], at[1]);
    let out = Coorientation::all(&s, Bit::Outward);
    assert!(conflicts(&s, &out).conf > 2);
}

#[test]
fn trefoil_cactus_matches_exhaustive_search() {
    let s = trefoil();
    assert_eq!(classify(&s).kind, Kind::TreeNecklace);
    let c = solve_cactus(&s).unwrap();
    assert_eq!(c.value, solve_bruteforce(&s, Mode::TreeNecklace).unwrap().value);
    assert_eq!(c.status, Status::ExactTreeNecklace);
    assert!(mu_loc(&s).unwrap() <= c.value);
}

#[test]
fn holonomy_can_raise_the_minimum() {
    let s = decorated_necklace(5, vec![1, 2, 2], 0, 195);
    assert_eq!(s.arc_count(), 26);
    let local = mu_loc(&s).unwrap();
    let exact = mu(&s).unwrap().value;
    assert_eq!((local, exact), (4, 6));
    assert_eq!(solve_bruteforce(&s, Mode::Local).unwrap().value, 4);
    assert_eq!(solve_bruteforce(&s, Mode::TreeNecklace).unwrap().value, 6);
}

#[test]
fn general_shadows_get_a_lower_bound() {
    let s = validate_shadow(&ShadowFile::from_json(SELF_GLUED).unwrap()).unwrap();
    let sol = mu(&s).unwrap();
    assert_eq!(sol.status, Status::LowerBoundOnly);
    assert_eq!(sol.value, solve_bruteforce(&s, Mode::Local).unwrap().value);
}

#[test]
fn tree_dp_rejects_cycles() {
    assert!(matches!(solve_tree_dp(&trefoil()), Err(ShadowError::NotTreeLike)));
}

#[test]
fn brute_force_refuses_large_inputs() {
    assert!(matches!(solve_bruteforce(&chain(20), Mode::Local), Err(ShadowError::TooLarge(_))));
}

#[test]
fn decorated_necklaces_agree_with_search() {
    for seed in 0..40 {
        let s = gen(
            GeneratorKind::Necklace { m: 3, attach: Default::default() },
            seed,
        );
        let s = if seed % 2 == 0 { s } else { decorated_necklace(3, vec![2], 1, seed) };
        if s.arc_count() > 20 {
            continue;
        }
        assert_eq!(mu(&s).unwrap().value, solve_bruteforce(&s, Mode::TreeNecklace).unwrap().value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tree_dp_matches_search(s in tree_like(9)) {
        let dp = solve_tree_dp(&s).unwrap();
        prop_assert_eq!(dp.value, solve_bruteforce(&s, Mode::Local).unwrap().value);
        prop_assert!(is_admissible(&s, &dp.witness).is_ok());
        prop_assert_eq!(dp.value % 2, 0);
        prop_assert!(dp.value <= 2 * s.vertex_count());
    }

    #[test]
    fn cactus_matches_search(s in necklace_like()) {
        if s.arc_count() > 20 { return Ok(()); }
        let c = solve_cactus(&s).unwrap();
        prop_assert_eq!(c.value, solve_bruteforce(&s, Mode::TreeNecklace).unwrap().value);
        prop_assert!(mu_loc(&s).unwrap() <= c.value);
        prop_assert_eq!(c.value % 2, 0);
        prop_assert_eq!(c.conflict_report.per_vertex_parity.iter().filter(|&&p| p == 1).count() % 2, 0);
    }

    #[test]
    fn zero_iff_some_admissible_coorientation_is_conflict_free(s in tree_like(9)) {
        let n = s.arc_count();
        let free = (0..1u64 << n).any(|m| {
            let c = Coorientation::from_inward_mask(n, m);
            is_admissible(&s, &c).is_ok() && conflicts(&s, &c).conf == 0
        });
        prop_assert_eq!(mu(&s).unwrap().value == 0, free);
    }

    #[test]
    fn solving_is_deterministic(s in any_shadow()) {
        let (a, b) = (mu(&s).unwrap(), mu(&s).unwrap());
        prop_assert_eq!((a.value, a.witness, a.status, a.conflict_report), (b.value, b.witness, b.status, b.conflict_report));
    }
}
