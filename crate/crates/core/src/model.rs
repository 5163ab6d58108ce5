//! Decorated shadows: the embedded 4-regular graph of a generic immersed
//! circle, its traversal, and its building-polygon decomposition.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::embed::{self, Embedding};
use crate::error::{Result, ShadowError};
use crate::format::{
    ArcRecord, CornerRecord, EmbeddingRecord, OuterRecord, PolygonRecord, ShadowFile, VertexRecord,
};

macro_rules! id_type {
    ($name:ident) => {
        #[derive(
            Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
        )]
        #[serde(transparent)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn idx(self) -> usize {
                self.0 as usize
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

id_type!(ArcId);
id_type!(VertexId);
id_type!(PolygonId);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Tail,
    Head,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    #[inline]
    pub(crate) fn bit(self) -> u8 {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArcEnd {
    pub arc: ArcId,
    pub end: End,
}

impl ArcEnd {
    pub fn new(arc: u32, end: End) -> Self {
        ArcEnd { arc: ArcId(arc), end }
    }
}

/// One passage of the immersed circle through a double point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub inp: ArcId,
    pub out: ArcId,
}

/// Position of a corner inside its polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CornerRef {
    pub polygon: PolygonId,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    /// Counterclockwise.
    pub rotation: [ArcEnd; 4],
    pub transitions: [Transition; 2],
    /// +1 iff the second branch crosses the first from right to left.
    pub crossing_sign: i8,
    pub corners: [CornerRef; 2],
}

impl Vertex {
    pub fn position(&self, end: ArcEnd) -> Option<usize> {
        self.rotation.iter().position(|&e| e == end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corner {
    pub vertex: VertexId,
    pub neighbor: PolygonId,
    /// True iff the neighbor lies inside the bounded domain of this polygon.
    pub nested: bool,
    /// End of the incoming side (`sides[i]`) at the corner vertex.
    pub arrival: ArcEnd,
    /// End of the outgoing side (`sides[i+1]`) at the corner vertex.
    pub departure: ArcEnd,
    /// For each of the vertex's two transitions: 0 when this polygon's arc in
    /// the transition is `sides[i]`, 1 when it is `sides[i+1]`.
    pub branch_side: [u8; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    pub id: PolygonId,
    pub sides: Vec<ArcId>,
    pub corners: Vec<Corner>,
    /// `forward[i]` is true when the boundary walk runs along `sides[i]` in its
    /// traversal direction.
    pub forward: Vec<bool>,
}

impl Polygon {
    pub fn k(&self) -> usize {
        self.sides.len()
    }

    pub fn nested_corner_count(&self) -> usize {
        self.corners.iter().filter(|c| c.nested).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub id: ArcId,
    pub polygon: PolygonId,
    pub tail: Option<VertexId>,
    pub head: Option<VertexId>,
    /// Side of the oriented arc on which its polygon's bounded domain lies.
    pub domain_side: Side,
    /// Position of the arc in the traversal.
    pub position: usize,
}

/// A validated, immutable decorated shadow.
#[derive(Debug, Clone)]
pub struct Shadow {
    pub(crate) arcs: Vec<Arc>,
    pub(crate) vertices: Vec<Vertex>,
    pub(crate) polygons: Vec<Polygon>,
    pub(crate) traversal: Vec<ArcId>,
    pub(crate) outer: (ArcId, Side),
    pub(crate) embedding: Embedding,
}

/// Outward/inward choice per polygon side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bit {
    Outward,
    Inward,
}

/// One bit per arc, indexed by arc id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coorientation {
    pub bits: Vec<Bit>,
}

impl Coorientation {
    pub fn all(shadow: &Shadow, bit: Bit) -> Self {
        Coorientation {
            bits: vec![bit; shadow.arc_count()],
        }
    }

    /// Bit `i` of `mask` set means arc `i` is inward.
    pub fn from_inward_mask(len: usize, mask: u64) -> Self {
        Coorientation {
            bits: (0..len)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Bit::Inward
                    } else {
                        Bit::Outward
                    }
                })
                .collect(),
        }
    }

    pub fn get(&self, arc: ArcId) -> Bit {
        self.bits[arc.idx()]
    }

    pub fn set(&mut self, arc: ArcId, bit: Bit) {
        self.bits[arc.idx()] = bit;
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl Shadow {
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn polygon_count(&self) -> usize {
        self.polygons.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id.idx()]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id.idx()]
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn polygon(&self, id: PolygonId) -> &Polygon {
        &self.polygons[id.idx()]
    }

    pub fn corner(&self, c: CornerRef) -> &Corner {
        &self.polygons[c.polygon.idx()].corners[c.index]
    }

    pub fn traversal(&self) -> &[ArcId] {
        &self.traversal
    }

    pub fn outer_mark(&self) -> (ArcId, Side) {
        self.outer
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// Polygon carrying the outer mark.
    pub fn root_polygon(&self) -> PolygonId {
        self.arcs[self.outer.0.idx()].polygon
    }

    /// All transitions as `(vertex, branch index, transition)`.
    pub fn transitions(&self) -> impl Iterator<Item = (VertexId, usize, Transition)> + '_ {
        self.vertices
            .iter()
            .flat_map(|v| (0..2).map(move |j| (v.id, j, v.transitions[j])))
    }

    /// Serializes back to the interchange record, with derived fields.
    pub fn to_file(&self) -> ShadowFile {
        ShadowFile {
            version: 1,
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcRecord {
                    id: a.id.0,
                    polygon: a.polygon.0,
                })
                .collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexRecord {
                    id: v.id.0,
                    rotation: v.rotation.iter().map(|e| (e.arc.0, e.end)).collect(),
                    transitions: v.transitions.iter().map(|t| (t.inp.0, t.out.0)).collect(),
                    sign: Some(v.crossing_sign),
                })
                .collect(),
            polygons: self
                .polygons
                .iter()
                .map(|p| PolygonRecord {
                    id: p.id.0,
                    sides: p.sides.iter().map(|a| a.0).collect(),
                    corners: p
                        .corners
                        .iter()
                        .map(|c| CornerRecord {
                            vertex: c.vertex.0,
                            neighbor: c.neighbor.0,
                            nested: Some(c.nested),
                        })
                        .collect(),
                })
                .collect(),
            traversal: self.traversal.iter().map(|a| a.0).collect(),
            outer: OuterRecord {
                arc: self.outer.0 .0,
                side: self.outer.1,
            },
            embedding: Some(EmbeddingRecord {
                domain_side: self.arcs.iter().map(|a| (a.id.0, a.domain_side)).collect(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_json()
    }
}

/// Sign of a double point whose first branch is `first` (in, out) and second
/// is `second`, read off the counterclockwise rotation.
pub(crate) fn crossing_sign_of(rotation: &[ArcEnd; 4], first: Transition, second: Transition) -> i8 {
    let h1 = rotation
        .iter()
        .position(|&e| e == ArcEnd { arc: first.inp, end: End::Head })
        .expect("validated rotation");
    let h2 = rotation
        .iter()
        .position(|&e| e == ArcEnd { arc: second.inp, end: End::Head })
        .expect("validated rotation");
    if h2 == (h1 + 1) % 4 {
        1
    } else {
        -1
    }
}

fn dense_order<T>(items: &[T], id: impl Fn(&T) -> u32, what: &str) -> Result<Vec<usize>> {
    let mut order = vec![usize::MAX; items.len()];
    for (i, it) in items.iter().enumerate() {
        let k = id(it) as usize;
        if k >= items.len() || order[k] != usize::MAX {
            return Err(ShadowError::Schema(format!(
                "{what} ids must be dense and unique (bad id {k})"
            )));
        }
        order[k] = i;
    }
    Ok(order)
}

/// Validates a raw shadow record and derives the embedding data.
pub fn validate_shadow(raw: &ShadowFile) -> Result<Shadow> {
    if raw.version != 1 {
        return Err(ShadowError::Schema(format!("unsupported version {}", raw.version)));
    }
    let n_arcs = raw.arcs.len();
    let n_vertices = raw.vertices.len();
    let n_polygons = raw.polygons.len();
    if n_vertices == 0 {
        if n_arcs != 1 || n_polygons != 1 {
            return Err(ShadowError::Schema(
                "a shadow without double points has exactly one arc and one polygon".into(),
            ));
        }
    } else if n_arcs != 2 * n_vertices {
        return Err(ShadowError::Schema(format!(
            "{n_arcs} arcs for {n_vertices} double points; expected {}",
            2 * n_vertices
        )));
    }
    if n_polygons == 0 {
        return Err(ShadowError::Schema("no polygons".into()));
    }
    let arc_order = dense_order(&raw.arcs, |a| a.id, "arc")?;
    let vertex_order = dense_order(&raw.vertices, |v| v.id, "vertex")?;
    let polygon_order = dense_order(&raw.polygons, |p| p.id, "polygon")?;

    let arc_ok = |a: u32| (a as usize) < n_arcs;
    let mut arc_polygon = Vec::with_capacity(n_arcs);
    for &i in &arc_order {
        let rec = &raw.arcs[i];
        if rec.polygon as usize >= n_polygons {
            return Err(ShadowError::Schema(format!("arc {} names unknown polygon", rec.id)));
        }
        arc_polygon.push(PolygonId(rec.polygon));
    }

    // Vertices: rotation and transitions.
    let mut tail: Vec<Option<VertexId>> = vec![None; n_arcs];
    let mut head: Vec<Option<VertexId>> = vec![None; n_arcs];
    let mut vertices = Vec::with_capacity(n_vertices);
    for (vid, &i) in vertex_order.iter().enumerate() {
        let rec = &raw.vertices[i];
        if rec.rotation.len() != 4 || rec.transitions.len() != 2 {
            return Err(ShadowError::Schema(format!(
                "vertex {vid} needs 4 rotation entries and 2 transitions"
            )));
        }
        let mut rotation = [ArcEnd::new(0, End::Tail); 4];
        for (j, &(a, end)) in rec.rotation.iter().enumerate() {
            if !arc_ok(a) {
                return Err(ShadowError::Schema(format!("vertex {vid} names unknown arc {a}")));
            }
            rotation[j] = ArcEnd::new(a, end);
            let slot = match end {
                End::Tail => &mut tail[a as usize],
                End::Head => &mut head[a as usize],
            };
            if slot.is_some() {
                return Err(ShadowError::Planar(format!(
                    "arc {a} {end:?} appears at more than one rotation slot"
                )));
            }
            *slot = Some(VertexId(vid as u32));
        }
        let heads = rotation.iter().filter(|e| e.end == End::Head).count();
        if heads != 2 {
            return Err(ShadowError::Planar(format!(
                "vertex {vid} must carry two heads and two tails"
            )));
        }
        let mut transitions = [Transition { inp: ArcId(0), out: ArcId(0) }; 2];
        for (j, &(inp, out)) in rec.transitions.iter().enumerate() {
            if !arc_ok(inp) || !arc_ok(out) {
                return Err(ShadowError::Schema(format!("vertex {vid} transition names unknown arc")));
            }
            let pi = rotation.iter().position(|&e| e == ArcEnd::new(inp, End::Head));
            let po = rotation.iter().position(|&e| e == ArcEnd::new(out, End::Tail));
            match (pi, po) {
                (Some(pi), Some(po)) if (pi + 2) % 4 == po => {}
                (Some(_), Some(_)) => {
                    return Err(ShadowError::Planar(format!(
                        "vertex {vid}: transition {inp}->{out} is not transverse"
                    )))
                }
                _ => {
                    return Err(ShadowError::Planar(format!(
                        "vertex {vid}: transition {inp}->{out} does not match the rotation"
                    )))
                }
            }
            transitions[j] = Transition { inp: ArcId(inp), out: ArcId(out) };
        }
        if transitions[0].inp == transitions[1].inp {
            return Err(ShadowError::Planar(format!("vertex {vid}: duplicate transition")));
        }
        let sign = crossing_sign_of(&rotation, transitions[0], transitions[1]);
        if let Some(given) = rec.sign {
            if given != sign {
                return Err(ShadowError::Planar(format!(
                    "vertex {vid}: sign {given} contradicts rotation (derived {sign})"
                )));
            }
        }
        vertices.push(Vertex {
            id: VertexId(vid as u32),
            rotation,
            transitions,
            crossing_sign: sign,
            corners: [CornerRef { polygon: PolygonId(0), index: 0 }; 2],
        });
    }
    if n_vertices > 0 && (tail.iter().any(Option::is_none) || head.iter().any(Option::is_none)) {
        return Err(ShadowError::Planar("every arc needs exactly one tail and one head".into()));
    }

    // Traversal: a single Euler circle following the transitions.
    if raw.traversal.len() != n_arcs {
        return Err(ShadowError::Euler("traversal must list every arc exactly once".into()));
    }
    let mut position = vec![usize::MAX; n_arcs];
    for (i, &a) in raw.traversal.iter().enumerate() {
        if !arc_ok(a) || position[a as usize] != usize::MAX {
            return Err(ShadowError::Euler("traversal must list every arc exactly once".into()));
        }
        position[a as usize] = i;
    }
    let traversal: Vec<ArcId> = raw.traversal.iter().map(|&a| ArcId(a)).collect();
    if n_vertices > 0 {
        let mut next_of = vec![None; n_arcs];
        for v in &vertices {
            for t in &v.transitions {
                next_of[t.inp.idx()] = Some(t.out);
            }
        }
        for i in 0..n_arcs {
            let e = traversal[i];
            let f = traversal[(i + 1) % n_arcs];
            if next_of[e.idx()] != Some(f) {
                return Err(ShadowError::Euler(format!(
                    "traversal step {e}->{f} is not a transition"
                )));
            }
        }
    }

    // Polygons.
    let mut owner: Vec<Option<PolygonId>> = vec![None; n_arcs];
    let mut polygons = Vec::with_capacity(n_polygons);
    for (pid, &i) in polygon_order.iter().enumerate() {
        let rec = &raw.polygons[i];
        let pid = PolygonId(pid as u32);
        let k = rec.sides.len();
        if k == 0 {
            return Err(ShadowError::Decomp(format!("polygon {pid} has no sides")));
        }
        for &a in &rec.sides {
            if !arc_ok(a) {
                return Err(ShadowError::Schema(format!("polygon {pid} names unknown arc {a}")));
            }
            if owner[a as usize].replace(pid).is_some() {
                return Err(ShadowError::Decomp(format!("arc {a} is claimed twice")));
            }
            if arc_polygon[a as usize] != pid {
                return Err(ShadowError::Decomp(format!(
                    "arc {a} lists polygon {} but is a side of {pid}",
                    arc_polygon[a as usize]
                )));
            }
        }
        if n_vertices == 0 {
            if !rec.corners.is_empty() {
                return Err(ShadowError::Decomp("embedded circle has no corners".into()));
            }
            polygons.push(Polygon {
                id: pid,
                sides: vec![ArcId(rec.sides[0])],
                corners: Vec::new(),
                forward: vec![true],
            });
            continue;
        }
        if rec.corners.len() != k {
            return Err(ShadowError::Decomp(format!(
                "polygon {pid} has {k} sides but {} corners",
                rec.corners.len()
            )));
        }
        for c in &rec.corners {
            if c.vertex as usize >= n_vertices || c.neighbor as usize >= n_polygons {
                return Err(ShadowError::Schema(format!("polygon {pid} corner names unknown id")));
            }
        }
        let sides: Vec<ArcId> = rec.sides.iter().map(|&a| ArcId(a)).collect();
        let corner_vertices: Vec<VertexId> = rec.corners.iter().map(|c| VertexId(c.vertex)).collect();
        let forward = walk_directions(&sides, &corner_vertices, &tail, &head, &vertices)
            .ok_or_else(|| {
                ShadowError::Decomp(format!("boundary walk of polygon {pid} does not close"))
            })?;
        let corners = (0..k)
            .map(|i| {
                let (arr, dep) = corner_ends(&sides, &forward, i);
                Corner {
                    vertex: corner_vertices[i],
                    neighbor: PolygonId(rec.corners[i].neighbor),
                    nested: false,
                    arrival: arr,
                    departure: dep,
                    branch_side: [0, 0],
                }
            })
            .collect();
        polygons.push(Polygon { id: pid, sides, corners, forward });
    }
    if owner.iter().any(Option::is_none) {
        return Err(ShadowError::Decomp("some arc is not a side of any polygon".into()));
    }

    // Each vertex carries exactly two corners pairing its four ends.
    let mut seen: Vec<Vec<CornerRef>> = vec![Vec::new(); n_vertices];
    for p in &polygons {
        for (i, c) in p.corners.iter().enumerate() {
            seen[c.vertex.idx()].push(CornerRef { polygon: p.id, index: i });
        }
    }
    for (vid, refs) in seen.iter().enumerate() {
        if refs.len() != 2 {
            return Err(ShadowError::Decomp(format!(
                "double point {vid} is a corner of {} polygon corners; expected 2",
                refs.len()
            )));
        }
        let v = &vertices[vid];
        let mut used = [false; 4];
        for r in refs {
            let c = &polygons[r.polygon.idx()].corners[r.index];
            for e in [c.arrival, c.departure] {
                let pos = v.position(e).expect("walk ends lie at the corner vertex");
                if used[pos] {
                    return Err(ShadowError::Decomp(format!(
                        "corners at double point {vid} overlap"
                    )));
                }
                used[pos] = true;
            }
        }
        let a = refs[0];
        let b = refs[1];
        let ca = &polygons[a.polygon.idx()].corners[a.index];
        let cb = &polygons[b.polygon.idx()].corners[b.index];
        if ca.neighbor != b.polygon || cb.neighbor != a.polygon {
            return Err(ShadowError::Decomp(format!(
                "corner neighbors at double point {vid} do not match the gluing"
            )));
        }
    }
    for (vid, refs) in seen.into_iter().enumerate() {
        let v = &mut vertices[vid];
        v.corners = [refs[0], refs[1]];
        for r in refs {
            let c = &mut polygons[r.polygon.idx()].corners[r.index];
            for j in 0..2 {
                let t = v.transitions[j];
                let in_end = ArcEnd { arc: t.inp, end: End::Head };
                let out_end = ArcEnd { arc: t.out, end: End::Tail };
                c.branch_side[j] = if c.arrival == in_end || c.arrival == out_end {
                    0
                } else {
                    debug_assert!(c.departure == in_end || c.departure == out_end);
                    1
                };
            }
        }
    }

    let outer_arc = raw.outer.arc;
    if !arc_ok(outer_arc) {
        return Err(ShadowError::Schema(format!("outer mark names unknown arc {outer_arc}")));
    }

    let arcs: Vec<Arc> = (0..n_arcs)
        .map(|a| Arc {
            id: ArcId(a as u32),
            polygon: arc_polygon[a],
            tail: tail[a],
            head: head[a],
            domain_side: Side::Left,
            position: position[a],
        })
        .collect();

    let mut shadow = Shadow {
        arcs,
        vertices,
        polygons,
        traversal,
        outer: (ArcId(outer_arc), raw.outer.side),
        embedding: Embedding::default(),
    };
    let embedding = embed::compute_embedding(&shadow)?;
    let derived = embed::derive_embedding(&shadow, &embedding)?;
    shadow.embedding = embedding;
    for (a, side) in derived.domain_side.iter().enumerate() {
        shadow.arcs[a].domain_side = *side;
    }
    for (p, nested) in derived.nested.iter().enumerate() {
        for (i, &b) in nested.iter().enumerate() {
            shadow.polygons[p].corners[i].nested = b;
        }
    }

    // Cross-check optional derived fields.
    if let Some(emb) = &raw.embedding {
        for (&a, &side) in &emb.domain_side {
            if a as usize >= n_arcs {
                return Err(ShadowError::Schema(format!("domain_side names unknown arc {a}")));
            }
            if shadow.arcs[a as usize].domain_side != side {
                return Err(ShadowError::Embed(format!(
                    "domain_side of arc {a} contradicts the embedding"
                )));
            }
        }
    }
    for (pid, &i) in polygon_order.iter().enumerate() {
        for (ci, c) in raw.polygons[i].corners.iter().enumerate() {
            if let Some(b) = c.nested {
                if shadow.polygons[pid].corners[ci].nested != b {
                    return Err(ShadowError::Embed(format!(
                        "nested bit of polygon {pid} corner {ci} contradicts the embedding"
                    )));
                }
            }
        }
    }
    Ok(shadow)
}

pub(crate) fn end_vertex(
    a: ArcId,
    fwd: bool,
    tail: &[Option<VertexId>],
    head: &[Option<VertexId>],
) -> (Option<VertexId>, Option<VertexId>) {
    if fwd {
        (tail[a.idx()], head[a.idx()])
    } else {
        (head[a.idx()], tail[a.idx()])
    }
}

fn arrival_end(a: ArcId, fwd: bool) -> ArcEnd {
    ArcEnd { arc: a, end: if fwd { End::Head } else { End::Tail } }
}

fn departure_end(a: ArcId, fwd: bool) -> ArcEnd {
    ArcEnd { arc: a, end: if fwd { End::Tail } else { End::Head } }
}

fn corner_ends(sides: &[ArcId], forward: &[bool], i: usize) -> (ArcEnd, ArcEnd) {
    let j = (i + 1) % sides.len();
    (arrival_end(sides[i], forward[i]), departure_end(sides[j], forward[j]))
}

fn adjacent(v: &Vertex, a: ArcEnd, b: ArcEnd) -> bool {
    match (v.position(a), v.position(b)) {
        (Some(x), Some(y)) => (x + 1) % 4 == y || (y + 1) % 4 == x,
        _ => false,
    }
}

/// Finds a direction for every side so that consecutive sides meet at the
/// listed corner vertex with rotation-adjacent ends.
fn walk_directions(
    sides: &[ArcId],
    corners: &[VertexId],
    tail: &[Option<VertexId>],
    head: &[Option<VertexId>],
    vertices: &[Vertex],
) -> Option<Vec<bool>> {
    let k = sides.len();
    let ok = |i: usize, fi: bool, fj: bool| -> bool {
        let j = (i + 1) % k;
        let v = corners[i];
        let (_, end_i) = end_vertex(sides[i], fi, tail, head);
        let (start_j, _) = end_vertex(sides[j], fj, tail, head);
        if end_i != Some(v) || start_j != Some(v) {
            return false;
        }
        let a = arrival_end(sides[i], fi);
        let b = departure_end(sides[j], fj);
        a != b && adjacent(&vertices[v.idx()], a, b)
    };
    // Iterative backtracking; branching only occurs when both ends of a side
    // sit at the same double point.
    let mut dirs = vec![true; k];
    let mut choice = vec![0u8; k];
    let mut i = 0usize;
    loop {
        if choice[i] >= 2 {
            choice[i] = 0;
            if i == 0 {
                return None;
            }
            i -= 1;
            choice[i] += 1;
            continue;
        }
        dirs[i] = choice[i] == 0;
        let good = if i == 0 { true } else { ok(i - 1, dirs[i - 1], dirs[i]) };
        if !good {
            choice[i] += 1;
            continue;
        }
        if i + 1 == k {
            if ok(k - 1, dirs[k - 1], dirs[0]) {
                return Some(dirs);
            }
            choice[i] += 1;
            continue;
        }
        i += 1;
        choice[i] = 0;
    }
}

/// Convenience for building domain-side maps in fixtures.
pub fn domain_side_map(shadow: &Shadow) -> BTreeMap<u32, Side> {
    shadow.arcs.iter().map(|a| (a.id.0, a.domain_side)).collect()
}
