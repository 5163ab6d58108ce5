mod common;

use std::f64::consts::{PI, TAU};

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shadowmin::gauss::{parse_angle, random_profile, sampled_depth, ObstructionVerdict};
use shadowmin::render::{layout, turning_number};
use shadowmin::{covering_depth, gauss_obstruction, pt_bounds, rotation_number, ShadowError, TurningProfile};

fn depth(b: Vec<f64>, rot: i64) -> i64 {
    covering_depth(&TurningProfile::new(b, rot).unwrap(), false).unwrap().depth
}

#[test]
fn rotation_numbers_of_the_basic_curves() {
    assert_eq!(rotation_number(&circle()).unwrap(), 1);
    assert_eq!(rotation_number(&fig8()).unwrap(), 0);
    assert_eq!(rotation_number(&curl1()).unwrap(), 2);
    assert_eq!(rotation_number(&trefoil()).unwrap(), 2);
    assert_eq!(rotation_number(&chain(4)).unwrap(), -5);
}

#[test]
fn monotone_profiles_have_depth_rot() {
    assert_eq!(depth(vec![0.0, TAU], 1), 1);
    assert_eq!(depth(vec![1.0, 1.0 - 3.0 * TAU], -3), 3);
}

#[test]
fn a_short_fold_does_not_raise_depth() {
    let t = PI;
    assert_eq!(depth(vec![0.0, t + 0.1, t - 0.1, TAU], 1), 1);
}

#[test]
fn a_long_excursion_raises_depth() {
    assert_eq!(depth(vec![0.0, TAU + 1.0, 0.0], 0), 2);
    assert_eq!(depth(vec![0.0, 1.0, 0.0], 0), 0);
}

#[test]
fn projectivized_depth_doubles_a_monotone_profile() {
    let p = TurningProfile::new(vec![0.0, TAU], 1).unwrap();
    assert_eq!(covering_depth(&p, true).unwrap().depth, 2);
}

#[test]
fn malformed_profiles_are_rejected() {
    assert!(matches!(TurningProfile::new(vec![0.0, 1.0, 2.0, TAU], 1), Err(ShadowError::Schema(_))));
    assert!(matches!(TurningProfile::new(vec![0.0, 1.0], 1), Err(ShadowError::Schema(_))));
    assert!(matches!(TurningProfile::new(vec![0.0, 0.0], 0), Err(ShadowError::Degenerate(_))));
    assert!(TurningProfile::from_json(r#"{"breakpoints": [0, "2pi"], "rot": 1}"#).is_ok());
    assert!(TurningProfile::from_json(r#"{"breakpoints": [0, "two"], "rot": 1}"#).is_err());
}

#[test]
fn bounds_of_the_basic_curves() {
    let b = pt_bounds(&curl1()).unwrap();
    assert_eq!((b.lower, b.parity, b.rot), (2, 0, 2));
    assert!(b.note.is_none());
    let b = pt_bounds(&fig8()).unwrap();
    assert_eq!((b.lower, b.parity), (0, 0));
    assert!(b.note.is_some());
    let b = pt_bounds(&circle()).unwrap();
    assert_eq!((b.lower, b.parity), (1, 1));
}

#[test]
fn obstruction_from_deep_evidence() {
    let deep = TurningProfile::new(vec![0.0, TAU + 1.0, -1.0, TAU], 1).unwrap();
    assert_eq!(covering_depth(&deep, false).unwrap().depth, 3);
    let r = gauss_obstruction(&circle(), Some(&deep)).unwrap();
    assert_eq!(r.verdict, ObstructionVerdict::PositiveMuImplied);
    assert_eq!(r.evidence_depth, Some(3));
    assert!(r.message.starts_with("mu > 0 implied by supplied evidence"));

    let shallow = TurningProfile::new(vec![0.0, TAU], 1).unwrap();
    assert_eq!(gauss_obstruction(&circle(), Some(&shallow)).unwrap().verdict, ObstructionVerdict::Inconclusive);
    assert_eq!(gauss_obstruction(&circle(), None).unwrap().verdict, ObstructionVerdict::Inconclusive);
    let r = gauss_obstruction(&fig8(), Some(&deep)).unwrap();
    assert_eq!(r.verdict, ObstructionVerdict::Inconclusive);
    assert!(r.message.starts_with("inconclusive"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sweep_matches_sampling(seed in any::<u64>()) {
        let p = random_profile(&mut ChaCha8Rng::seed_from_u64(seed));
        let d = covering_depth(&p, false).unwrap();
        prop_assert_eq!(d.depth, sampled_depth(&p, 10_000));
        prop_assert_eq!(p.coverage_at(d.witness_angle), d.depth);
        prop_assert!(d.depth >= p.rot.abs());
        prop_assert_eq!((d.depth - p.rot).rem_euclid(2), 0);
        let q = p.projectivized();
        prop_assert_eq!(covering_depth(&q, false).unwrap().depth, sampled_depth(&q, 10_000));
    }

    #[test]
    fn symbolic_angles_parse(a in -24i64..24, b in 1i64..12) {
        let want = a as f64 * PI / b as f64;
        for text in [format!("{a}pi/{b}"), format!("{a}/{b} pi"), format!("{a}*pi/{b}")] {
            let got = parse_angle(&text).unwrap();
            prop_assert!((got - want).abs() < 1e-12, "{} -> {}", text, got);
        }
    }

    #[test]
    fn rotation_number_matches_drawn_turning(s in tree_like(10)) {
        let lay = layout(&s).unwrap();
        prop_assert_eq!(rotation_number(&s).unwrap(), turning_number(&s, &lay));
    }

    #[test]
    fn necklace_rotation_matches_drawn_turning(s in necklace_like()) {
        let lay = layout(&s).unwrap();
        prop_assert_eq!(rotation_number(&s).unwrap(), turning_number(&s, &lay));
    }
}
