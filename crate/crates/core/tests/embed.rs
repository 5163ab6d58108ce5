mod common;

use common::*;
use proptest::prelude::*;
use shadowmin::embed::circle_record;
use shadowmin::{canonicalize, faces, from_gauss_code, validate_shadow, GaussCode, Side};

#[test]
fn face_counts_follow_euler() {
    assert_eq!(faces(&circle()).unwrap().len(), 2);
    assert_eq!(faces(&fig8()).unwrap().len(), 3);
    assert_eq!(faces(&trefoil()).unwrap().len(), 5);
}

#[test]
fn figure_eight_lobes_are_not_nested() {
    let s = fig8();
    let bits: Vec<bool> = s.polygons().iter().map(|p| p.corners[0].nested).collect();
    assert_eq!(bits, vec![false, false]);
}

#[test]
fn curl_has_exactly_one_lobe_inside_the_other() {
    let s = curl1();
    let mut bits: Vec<bool> = s.polygons().iter().map(|p| p.corners[0].nested).collect();
    bits.sort();
    assert_eq!(bits, vec![false, true]);
}

#[test]
fn circle_domain_lies_opposite_the_outer_side() {
    for side in [Side::Left, Side::Right] {
        let s = validate_shadow(&circle_record(side)).unwrap();
        assert_eq!(s.arc(shadowmin::ArcId(0)).domain_side, side.opposite());
    }
}

#[test]
fn gauss_code_a_a_gives_curl_or_figure_eight_by_outer_face() {
    let right = from_gauss_code(&GaussCode::parse("word: a a\nsigns: a=+1\nouter: 0 right").unwrap()).unwrap();
    assert_eq!(canonicalize(&right).to_json(), canonicalize(&curl1()).to_json());
    let left = from_gauss_code(&GaussCode::parse("word: a a\nsigns: a=+1\nouter: 0 left").unwrap()).unwrap();
    assert_eq!(canonicalize(&left).to_json(), canonicalize(&fig8()).to_json());
}

#[test]
fn interlaced_words_are_rejected() {
    let err = from_gauss_code(&GaussCode::parse("word: a b a b").unwrap()).unwrap_err();
    assert_eq!(err.code(), "E_INTERLACED");
}

#[test]
fn gauss_text_round_trips() {
    let code = GaussCode::parse("word: a b b a\nsigns: a=-1 b=+1\nouter: 2 left").unwrap();
    assert_eq!(GaussCode::parse(&code.to_text()).unwrap(), code);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tree_like_shadows_have_n_plus_two_faces(s in tree_like(12)) {
        prop_assert_eq!(faces(&s).unwrap().len(), s.vertex_count() + 2);
    }

    #[test]
    fn every_arc_side_lies_on_exactly_one_face(s in any_shadow()) {
        let fs = faces(&s).unwrap();
        let mut seen = std::collections::BTreeMap::new();
        for f in &fs {
            for &(a, side) in &f.boundary {
                *seen.entry((a.0, side == Side::Left)).or_insert(0) += 1;
            }
        }
        prop_assert_eq!(seen.len(), 2 * s.arc_count());
        prop_assert!(seen.values().all(|&c| c == 1));
        let (a, side) = s.outer_mark();
        let emb = s.embedding();
        prop_assert_eq!(emb.face(a, side), emb.outer_face);
    }

    #[test]
    fn outer_arc_domain_is_on_the_inner_side(s in any_shadow()) {
        let (a, side) = s.outer_mark();
        prop_assert_eq!(s.arc(a).domain_side, side.opposite());
    }
}
