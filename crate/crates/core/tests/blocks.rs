mod common;

use common::*;
use proptest::prelude::*;
use shadowmin::format::ShadowFile;
use shadowmin::generate::AttachmentSpec;
use shadowmin::{block_graph, classify, validate_shadow, GeneratorKind, Kind};

pub const SELF_GLUED: &str = r#"{"version": 1,
 "arcs": [{"id": 0, "polygon": 0}, {"id": 1, "polygon": 0}],
 "vertices": [{"id": 0, "rotation": [[1, "head"], [0, "head"], [0, "tail"], [1, "tail"]], "transitions": [[1, 0], [0, 1]]}],
 "polygons": [{"id": 0, "sides": [0, 1], "corners": [{"vertex": 0, "neighbor": 0}, {"vertex": 0, "neighbor": 0}]}],
 "traversal": [0, 1], "outer": {"arc": 0, "side": "left"}}"#;

#[test]
fn figure_eight_block_graph_is_one_edge() {
    let g = block_graph(&fig8());
    assert_eq!((g.nodes.len(), g.edges.len()), (2, 1));
    assert_eq!(classify(&fig8()).kind, Kind::TreeLike);
}

#[test]
fn curl_chain_block_graph_is_a_path() {
    for m in 1..8 {
        let s = chain(m);
        let g = block_graph(&s);
        assert_eq!((g.nodes.len(), g.edges.len()), (m + 1, m));
        let mut deg = vec![0; m + 1];
        for &(a, b) in &g.edges {
            deg[a.idx()] += 1;
            deg[b.idx()] += 1;
        }
        assert!(deg.iter().all(|&d| d <= 2));
        assert_eq!(deg.iter().filter(|&&d| d == 1).count(), 2);
        assert_eq!(classify(&s).kind, Kind::TreeLike);
    }
}

#[test]
fn trefoil_is_one_three_cycle() {
    let s = trefoil();
    let g = block_graph(&s);
    assert_eq!((g.nodes.len(), g.edges.len()), (3, 3));
    let c = classify(&s);
    assert_eq!(c.kind, Kind::TreeNecklace);
    assert_eq!(c.cycle_rank, 1);
    assert_eq!(c.necklace_cycles.len(), 1);
    assert_eq!(c.necklace_cycles[0].len(), 3);
}

#[test]
fn two_necklaces_joined_at_a_cut_vertex_have_rank_two() {
    let s = gen(
        GeneratorKind::Necklace {
            m: 3,
            attach: AttachmentSpec { curls: 0, trees: vec![], necklaces: vec![3] },
        },
        11,
    );
    let c = classify(&s);
    assert_eq!(c.kind, Kind::TreeNecklace);
    assert_eq!(c.cycle_rank, 2);
    assert_eq!(c.necklace_cycles.len(), 2);
}

#[test]
fn self_glued_polygon_is_general() {
    let s = validate_shadow(&ShadowFile::from_json(SELF_GLUED).unwrap()).unwrap();
    assert!(block_graph(&s).has_self_loop());
    let c = classify(&s);
    assert_eq!(c.kind, Kind::General);
    assert!(c.reason.is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_is_edges_minus_nodes_plus_one(s in any_shadow()) {
        let g = block_graph(&s);
        prop_assert_eq!(g.cycle_rank(), g.edges.len() + 1 - g.nodes.len());
        prop_assert_eq!(classify(&s).cycle_rank, g.cycle_rank());
    }

    #[test]
    fn tree_like_means_every_edge_is_a_bridge(s in any_shadow()) {
        let g = block_graph(&s);
        let c = classify(&s);
        prop_assert_eq!(c.kind == Kind::TreeLike, g.cycle_rank() == 0);
    }

    #[test]
    fn dropping_feedback_edges_leaves_a_spanning_tree(s in any_shadow()) {
        let g = block_graph(&s);
        let c = classify(&s);
        prop_assert_eq!(c.feedback_edges.len(), c.cycle_rank);
        let mut parent: Vec<usize> = (0..g.nodes.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (v, &(a, b)) in g.edges.iter().enumerate() {
            if c.feedback_edges.iter().any(|f| f.idx() == v) {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a.idx()), find(&mut parent, b.idx()));
            prop_assert_ne!(ra, rb, "tree edges must not close a cycle");
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        for x in 0..g.nodes.len() {
            prop_assert_eq!(find(&mut parent, x), root);
        }
    }

    #[test]
    fn classification_is_deterministic(s in necklace_like()) {
        prop_assert_eq!(classify(&s), classify(&s));
    }
}
