mod common;

use common::*;
use proptest::prelude::*;
use shadowmin::render::{geometric_domain_sides, geometric_nested};
use shadowmin::{layout, mu, render_svg, validate_shadow, Bit, Coorientation, Shadow, ShadowError, ShadowFile};

const SELF_GLUED: &str = r#"{"version": 1,
 "arcs": [{"id": 0, "polygon": 0}, {"id": 1, "polygon": 0}],
 "vertices": [{"id": 0, "rotation": [[1, "head"], [0, "head"], [0, "tail"], [1, "tail"]], "transitions": [[1, 0], [0, 1]]}],
 "polygons": [{"id": 0, "sides": [0, 1], "corners": [{"vertex": 0, "neighbor": 0}, {"vertex": 0, "neighbor": 0}]}],
 "traversal": [0, 1], "outer": {"arc": 0, "side": "left"}}"#;

fn count(svg: &str, class: &str) -> usize {
    svg.matches(&format!("class=\"{class}\"")).count()
}

fn agrees_with_combinatorics(s: &Shadow) -> bool {
    let lay = layout(s).unwrap();
    let sides = geometric_domain_sides(s, &lay);
    let nested = geometric_nested(s, &lay);
    s.arcs().iter().all(|a| sides[a.id.idx()] == a.domain_side)
        && s.polygons().iter().all(|p| p.corners.iter().zip(&nested[p.id.idx()]).all(|(c, &g)| c.nested == g))
}

#[test]
fn curl_lobe_is_drawn_inside() {
    let s = curl1();
    let lay = layout(&s).unwrap();
    let inner = s.polygons().iter().position(|p| !p.corners[0].nested).unwrap();
    let (a, b) = (&lay.circles[inner], &lay.circles[1 - inner]);
    let d = ((a.center[0] - b.center[0]).powi(2) + (a.center[1] - b.center[1]).powi(2)).sqrt();
    assert!(d + a.radius <= b.radius + 1e-9);
}

#[test]
fn figure_eight_lobes_are_side_by_side() {
    let lay = layout(&fig8()).unwrap();
    let (a, b) = (&lay.circles[0], &lay.circles[1]);
    let d = ((a.center[0] - b.center[0]).powi(2) + (a.center[1] - b.center[1]).powi(2)).sqrt();
    assert!((d - a.radius - b.radius).abs() < 1e-9);
}

#[test]
fn figure_eight_witness_marks_both_conflicts() {
    let s = fig8();
    let svg = render_svg(&s, Some(&mu(&s).unwrap().witness)).unwrap();
    assert_eq!(count(&svg, "arc"), 2);
    assert_eq!(count(&svg, "outward"), 2);
    assert_eq!(count(&svg, "conflict"), 2);
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn plain_render_has_no_arrows() {
    let svg = render_svg(&curl1(), None).unwrap();
    assert_eq!(count(&svg, "arc"), 2);
    assert_eq!(count(&svg, "outward") + count(&svg, "inward") + count(&svg, "conflict"), 0);
}

#[test]
fn trefoil_is_drawn_as_a_ring() {
    let s = trefoil();
    let lay = layout(&s).unwrap();
    assert_eq!(lay.rings.len(), 1);
    assert_eq!(lay.rings[0].members.len(), 3);
    let svg = render_svg(&s, Some(&Coorientation::all(&s, Bit::Outward))).unwrap();
    assert_eq!(count(&svg, "annulus"), 2);
    assert_eq!(count(&svg, "arc"), 6);
    assert!(agrees_with_combinatorics(&s));
}

#[test]
fn general_shadows_have_no_layout() {
    let s = validate_shadow(&ShadowFile::from_json(SELF_GLUED).unwrap()).unwrap();
    assert!(matches!(layout(&s), Err(ShadowError::Layout(_))));
    assert_eq!(render_svg(&s, None).unwrap_err().code(), "E_LAYOUT");
}

#[test]
fn rendering_is_deterministic() {
    let s = decorated_necklace(5, vec![1, 2], 1, 4);
    let c = mu(&s).unwrap().witness;
    assert_eq!(render_svg(&s, Some(&c)).unwrap(), render_svg(&s, Some(&c)).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn drawing_reproduces_tree_like_embeddings(s in tree_like(10)) {
        prop_assert!(agrees_with_combinatorics(&s));
    }

    #[test]
    fn drawing_reproduces_necklace_embeddings(s in necklace_like()) {
        prop_assert!(agrees_with_combinatorics(&s));
    }
}
