mod common;

use common::*;
use proptest::prelude::*;
use shadowmin::format::ShadowFile;
use shadowmin::generate::{curl_chain, reverse_record};
use shadowmin::{canonicalize, mu, validate_shadow, Status};

#[test]
fn circle_is_valid_with_no_double_points() {
    let s = circle();
    assert_eq!((s.polygon_count(), s.arc_count(), s.vertex_count()), (1, 1, 0));
    let sol = mu(&s).unwrap();
    assert_eq!(sol.value, 0);
    assert_eq!(sol.status, Status::ExactTreeLike);
}

#[test]
fn figure_eight_has_two_arcs_one_vertex_two_transitions() {
    let s = fig8();
    assert_eq!(s.arc_count(), 2);
    assert_eq!(s.vertex_count(), 1);
    assert_eq!(s.transitions().count(), 2);
    assert!(s.polygons().iter().all(|p| p.k() == 1 && !p.corners[0].nested));
}

#[test]
fn mutual_nesting_is_rejected() {
    let mut f = fig8().to_file();
    f.embedding = None;
    for p in &mut f.polygons {
        p.corners[0].nested = Some(true);
    }
    assert_eq!(validate_shadow(&f).unwrap_err().code(), "E_EMBED");
}

#[test]
fn wrong_crossing_sign_is_rejected() {
    let mut f = fig8().to_file();
    let s = f.vertices[0].sign.unwrap();
    f.vertices[0].sign = Some(-s);
    assert!(validate_shadow(&f).is_err());
}

#[test]
fn unknown_fields_and_bad_versions_are_schema_errors() {
    let text = fig8().to_json();
    let bad = text.replacen("\"version\": 1", "\"version\": 2", 1);
    let f = ShadowFile::from_json(&bad).unwrap();
    assert_eq!(validate_shadow(&f).unwrap_err().code(), "E_SCHEMA");
    let extra = text.replacen("\"version\": 1", "\"version\": 1, \"colour\": 3", 1);
    assert_eq!(ShadowFile::from_json(&extra).unwrap_err().code(), "E_SCHEMA");
}

#[test]
fn canonical_form_ignores_relabeling() {
    let f = fig8().to_file();
    let g = permute(&f, &[1, 0], &[0], &[1, 0]);
    let a = canonicalize(&validate_shadow(&f).unwrap()).to_json();
    let b = canonicalize(&validate_shadow(&g).unwrap()).to_json();
    assert_eq!(a, b);
}

#[test]
fn curl_chain_in_reversed_polygon_order_has_the_same_canonical_form() {
    let s = curl_chain(3).unwrap();
    let f = s.to_file();
    let ident: Vec<u32> = (0..s.arc_count() as u32).collect();
    let vid: Vec<u32> = (0..s.vertex_count() as u32).collect();
    let g = permute(&f, &ident, &vid, &reversed(s.polygon_count()));
    assert_ne!(f, g);
    let a = canonicalize(&s).to_json();
    let b = canonicalize(&validate_shadow(&g).unwrap()).to_json();
    assert_eq!(a, b);
}

#[test]
fn reversing_the_traversal_keeps_the_shadow_valid() {
    for s in [fig8(), curl1(), trefoil(), chain(4)] {
        let r = validate_shadow(&reverse_record(&s.to_file())).unwrap();
        assert_eq!(r.vertex_count(), s.vertex_count());
        assert_eq!(mu(&r).unwrap().value, mu(&s).unwrap().value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn counts_and_transversality(s in any_shadow()) {
        let n = s.vertex_count();
        prop_assert_eq!(s.arc_count(), 2 * n);
        prop_assert_eq!(s.transitions().count(), 2 * n);
        prop_assert!(s.polygons().iter().all(|p| p.k() >= 1));
        for v in s.vertices() {
            for t in v.transitions {
                let a = v.rotation.iter().position(|e| e.arc == t.inp && e.end == shadowmin::End::Head).unwrap();
                let b = v.rotation.iter().position(|e| e.arc == t.out && e.end == shadowmin::End::Tail).unwrap();
                prop_assert_eq!((a + 2) % 4, b);
            }
        }
    }

    #[test]
    fn nesting_is_irreflexive_and_antisymmetric(s in any_shadow()) {
        for v in s.vertices() {
            let [a, b] = v.corners;
            prop_assert_ne!(a.polygon, b.polygon);
            let ca = s.corner(a);
            let cb = s.corner(b);
            prop_assert!(!(ca.nested && cb.nested));
        }
    }

    #[test]
    fn parse_serialize_parse_is_stable(s in any_shadow()) {
        let text = s.to_json();
        let once = validate_shadow(&ShadowFile::from_json(&text).unwrap()).unwrap();
        prop_assert_eq!(once.to_json(), text);
    }

    #[test]
    fn canonicalize_is_idempotent(s in any_shadow()) {
        let c = canonicalize(&s);
        prop_assert_eq!(canonicalize(&c).to_json(), c.to_json());
        prop_assert_eq!(mu(&c).unwrap().value, mu(&s).unwrap().value);
    }

    #[test]
    fn canonical_form_survives_random_relabeling(s in tree_like(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut pa: Vec<u32> = (0..s.arc_count() as u32).collect();
        let mut pv: Vec<u32> = (0..s.vertex_count() as u32).collect();
        let mut pp: Vec<u32> = (0..s.polygon_count() as u32).collect();
        pa.shuffle(&mut rng);
        pv.shuffle(&mut rng);
        pp.shuffle(&mut rng);
        let g = validate_shadow(&permute(&s.to_file(), &pa, &pv, &pp)).unwrap();
        prop_assert_eq!(canonicalize(&g).to_json(), canonicalize(&s).to_json());
    }
}
