//! Canonical relabeling.

use crate::format::{ArcRecord, CornerRecord, OuterRecord, PolygonRecord, ShadowFile, VertexRecord};
use crate::model::{validate_shadow, Shadow};

/// Relabels a shadow so that equal shadows serialize identically.
///
/// Arcs are numbered along the traversal starting at the outer arc, double
/// points by first arrival, polygons by their smallest arc. Every cyclic
/// list starts at its smallest entry, polygon walks take the
/// lexicographically smaller direction, and transitions are listed in
/// passage order.
pub fn canonicalize(shadow: &Shadow) -> Shadow {
    let trav = shadow.traversal();
    let start = trav.iter().position(|&a| a == shadow.outer_mark().0).expect("outer arc is traversed");
    let mut arc_new = vec![0u32; shadow.arc_count()];
    for (i, &a) in trav.iter().cycle().skip(start).take(trav.len()).enumerate() {
        arc_new[a.idx()] = i as u32;
    }
    let mut arc_old = vec![0usize; shadow.arc_count()];
    for (old, &new) in arc_new.iter().enumerate() {
        arc_old[new as usize] = old;
    }
    let mut vertex_new = vec![u32::MAX; shadow.vertex_count()];
    let mut next = 0;
    for &old in &arc_old {
        if let Some(v) = shadow.arcs()[old].head {
            if vertex_new[v.idx()] == u32::MAX {
                vertex_new[v.idx()] = next;
                next += 1;
            }
        }
    }
    let mut polys: Vec<(u32, usize)> = shadow
        .polygons()
        .iter()
        .map(|p| (p.sides.iter().map(|a| arc_new[a.idx()]).min().expect("k >= 1"), p.id.idx()))
        .collect();
    polys.sort_unstable();
    let mut poly_new = vec![0u32; shadow.polygon_count()];
    for (i, &(_, old)) in polys.iter().enumerate() {
        poly_new[old] = i as u32;
    }

    let arcs = arc_old
        .iter()
        .enumerate()
        .map(|(new, &old)| ArcRecord {
            id: new as u32,
            polygon: poly_new[shadow.arcs()[old].polygon.idx()],
        })
        .collect();

    let mut vertices: Vec<VertexRecord> = shadow
        .vertices()
        .iter()
        .map(|v| {
            let mut rotation: Vec<(u32, _)> = v.rotation.iter().map(|e| (arc_new[e.arc.idx()], e.end)).collect();
            let min_at = (0..4).min_by_key(|&i| rotation[i]).expect("four ends");
            rotation.rotate_left(min_at);
            let mut transitions: Vec<(u32, u32)> =
                v.transitions.iter().map(|t| (arc_new[t.inp.idx()], arc_new[t.out.idx()])).collect();
            transitions.sort_unstable();
            VertexRecord {
                id: vertex_new[v.id.idx()],
                rotation,
                transitions,
                sign: None,
            }
        })
        .collect();
    vertices.sort_by_key(|v| v.id);

    let mut polygons: Vec<PolygonRecord> = shadow
        .polygons()
        .iter()
        .map(|p| {
            let k = p.k();
            let sides: Vec<u32> = p.sides.iter().map(|a| arc_new[a.idx()]).collect();
            let corners: Vec<(u32, u32)> = p
                .corners
                .iter()
                .map(|c| (vertex_new[c.vertex.idx()], poly_new[c.neighbor.idx()]))
                .collect();
            let mut best: Option<(Vec<u32>, Vec<(u32, u32)>)> = None;
            for reverse in [false, true] {
                for r in 0..k {
                    let (s, c): (Vec<u32>, Vec<(u32, u32)>) = if reverse {
                        (
                            (0..k).map(|j| sides[(2 * k + r - j) % k]).collect(),
                            corners.iter().enumerate().map(|(j, _)| corners[(3 * k + r - j - 1) % k]).collect(),
                        )
                    } else {
                        (
                            (0..k).map(|j| sides[(r + j) % k]).collect(),
                            corners.iter().enumerate().map(|(j, _)| corners[(r + j) % k]).collect(),
                        )
                    };
                    if best.as_ref().is_none_or(|b| (&s, &c) < (&b.0, &b.1)) {
                        best = Some((s, c));
                    }
                }
            }
            let (sides, corners) = best.expect("k >= 1");
            PolygonRecord {
                id: poly_new[p.id.idx()],
                sides,
                corners: corners
                    .into_iter()
                    .map(|(vertex, neighbor)| CornerRecord { vertex, neighbor, nested: None })
                    .collect(),
            }
        })
        .collect();
    polygons.sort_by_key(|p| p.id);

    let file = ShadowFile {
        version: 1,
        arcs,
        vertices,
        polygons,
        traversal: (0..shadow.arc_count() as u32).collect(),
        outer: OuterRecord { arc: 0, side: shadow.outer_mark().1 },
        embedding: None,
    };
    validate_shadow(&file).expect("relabeling preserves validity")
}
