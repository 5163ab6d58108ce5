//! Face traversal of the rotation system, the region tree of the smoothed
//! decomposition, and the Gauss-code importer for tree-like curves.
//!
//! Smoothing every double point along the polygon corners turns the building
//! polygons into pairwise disjoint circles on the sphere. Faces of the shadow
//! that meet across a non-corner sector of a double point fall into the same
//! complementary region; regions and circles form a tree. Rooting that tree at
//! the region of the outer face, the bounded domain of a polygon is the
//! subtree hanging below its circle.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShadowError};
use crate::format::{ArcRecord, CornerRecord, OuterRecord, PolygonRecord, ShadowFile, VertexRecord};
use crate::model::{validate_shadow, ArcEnd, ArcId, End, PolygonId, Shadow, Side};

pub type FaceId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: FaceId,
    pub boundary: Vec<(ArcId, Side)>,
}

#[derive(Debug, Clone, Default)]
pub struct Embedding {
    pub faces: Vec<Face>,
    /// `[face on the left, face on the right]` per arc.
    pub face_of: Vec<[FaceId; 2]>,
    pub outer_face: FaceId,
    pub region_of_face: Vec<u32>,
    pub region_count: usize,
    /// For each polygon: the region inside its bounded domain adjacent to it.
    pub inner_region: Vec<u32>,
    /// For each polygon: the region on the unbounded side adjacent to it.
    pub outer_region: Vec<u32>,
    /// Region merged at each double point (the two non-corner sectors).
    pub vertex_region: Vec<u32>,
    tin: Vec<u32>,
    tout: Vec<u32>,
}

impl Embedding {
    pub fn face(&self, arc: ArcId, side: Side) -> FaceId {
        self.face_of[arc.idx()][side.bit() as usize]
    }

    pub fn region(&self, arc: ArcId, side: Side) -> u32 {
        self.region_of_face[self.face(arc, side) as usize]
    }

    /// True when region `r` lies in the bounded domain of polygon `p`.
    pub fn region_in_domain(&self, r: u32, p: PolygonId) -> bool {
        let root = self.inner_region[p.idx()] as usize;
        let r = r as usize;
        self.tin[root] <= self.tin[r] && self.tout[r] <= self.tout[root]
    }

    pub fn face_in_domain(&self, f: FaceId, p: PolygonId) -> bool {
        self.region_in_domain(self.region_of_face[f as usize], p)
    }

    /// True when the circle of `q` lies inside the bounded domain of `p`.
    pub fn polygon_inside(&self, q: PolygonId, p: PolygonId) -> bool {
        q != p && self.region_in_domain(self.outer_region[q.idx()], p)
    }
}

/// Derived per-arc domain sides and per-corner nesting bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedEmbedding {
    pub domain_side: Vec<Side>,
    pub nested: Vec<Vec<bool>>,
}

#[inline]
fn dart(e: ArcEnd) -> (ArcId, Side) {
    match e.end {
        End::Tail => (e.arc, Side::Left),
        End::Head => (e.arc, Side::Right),
    }
}

/// Standard face traversal of the rotation system. Fails unless
/// V - E + F = 2.
pub fn faces(shadow: &Shadow) -> Result<Vec<Face>> {
    Ok(trace_faces(shadow)?.0)
}

fn trace_faces(shadow: &Shadow) -> Result<(Vec<Face>, Vec<[FaceId; 2]>)> {
    let n_arcs = shadow.arc_count();
    if shadow.vertex_count() == 0 {
        let faces = vec![
            Face { id: 0, boundary: vec![(ArcId(0), Side::Left)] },
            Face { id: 1, boundary: vec![(ArcId(0), Side::Right)] },
        ];
        return Ok((faces, vec![[0, 1]]));
    }
    let mut face_of = vec![[u32::MAX; 2]; n_arcs];
    let mut faces = Vec::new();
    for a in 0..n_arcs {
        for side in [Side::Left, Side::Right] {
            if face_of[a][side.bit() as usize] != u32::MAX {
                continue;
            }
            let id = faces.len() as FaceId;
            let mut boundary = Vec::new();
            let (mut arc, mut s) = (ArcId(a as u32), side);
            loop {
                let slot = &mut face_of[arc.idx()][s.bit() as usize];
                if *slot != u32::MAX {
                    if *slot == id && (arc, s) == (ArcId(a as u32), side) {
                        break;
                    }
                    return Err(ShadowError::Planar("face traversal is not a permutation".into()));
                }
                *slot = id;
                boundary.push((arc, s));
                let info = shadow.arc(arc);
                let (v, end) = match s {
                    Side::Left => (info.head, End::Head),
                    Side::Right => (info.tail, End::Tail),
                };
                let v = shadow.vertex(v.expect("validated"));
                let pos = v.position(ArcEnd { arc, end }).expect("validated");
                let (na, ns) = dart(v.rotation[(pos + 3) % 4]);
                arc = na;
                s = ns;
            }
            faces.push(Face { id, boundary });
        }
    }
    let euler = shadow.vertex_count() as i64 - n_arcs as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(ShadowError::Planar(format!(
            "V - E + F = {euler}; the rotation system is not planar"
        )));
    }
    Ok((faces, face_of))
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

/// Faces, regions, and the rooted region tree.
pub(crate) fn compute_embedding(shadow: &Shadow) -> Result<Embedding> {
    let (faces, face_of) = trace_faces(shadow)?;
    let (outer_arc, outer_side) = shadow.outer;
    let outer_face = face_of[outer_arc.idx()][outer_side.bit() as usize];

    let nf = faces.len();
    let mut uf: Vec<u32> = (0..nf as u32).collect();
    let sector_face = |v: &crate::model::Vertex, j: usize| -> FaceId {
        let (a, s) = dart(v.rotation[j]);
        face_of[a.idx()][s.bit() as usize]
    };
    let mut vertex_face = Vec::with_capacity(shadow.vertex_count());
    for v in shadow.vertices() {
        let mut corner_sector = [false; 4];
        for r in &v.corners {
            let c = shadow.corner(*r);
            let pa = v.position(c.arrival).expect("validated");
            let pb = v.position(c.departure).expect("validated");
            let j = if (pa + 1) % 4 == pb { pa } else { pb };
            corner_sector[j] = true;
        }
        let free: Vec<usize> = (0..4).filter(|&j| !corner_sector[j]).collect();
        debug_assert_eq!(free.len(), 2);
        let f0 = sector_face(v, free[0]);
        let f1 = sector_face(v, free[1]);
        let (r0, r1) = (find(&mut uf, f0), find(&mut uf, f1));
        if r0 != r1 {
            uf[r0 as usize] = r1;
        }
        vertex_face.push(f0);
    }
    let mut region_index: HashMap<u32, u32> = HashMap::new();
    let mut region_of_face = vec![0u32; nf];
    for f in 0..nf {
        let r = find(&mut uf, f as u32);
        let next = region_index.len() as u32;
        region_of_face[f] = *region_index.entry(r).or_insert(next);
    }
    let region_count = region_index.len();
    let np = shadow.polygon_count();
    if region_count != np + 1 {
        return Err(ShadowError::Embed(format!(
            "{region_count} complementary regions for {np} polygons; the polygons are not disjoint circles"
        )));
    }

    // Each polygon separates two regions: its walk-left and walk-right sides.
    let mut sides_of = Vec::with_capacity(np);
    for p in shadow.polygons() {
        let mut pair: Option<(u32, u32)> = None;
        for (i, &a) in p.sides.iter().enumerate() {
            let l = region_of_face[face_of[a.idx()][0] as usize];
            let r = region_of_face[face_of[a.idx()][1] as usize];
            let walk = if p.forward[i] { (l, r) } else { (r, l) };
            match pair {
                None => pair = Some(walk),
                Some(q) if q == walk => {}
                Some(_) => {
                    return Err(ShadowError::Embed(format!(
                        "boundary walk of polygon {} does not separate the sphere",
                        p.id
                    )))
                }
            }
        }
        let pair = pair.expect("nonempty polygon");
        if pair.0 == pair.1 {
            return Err(ShadowError::Embed(format!(
                "polygon {} has the same region on both sides",
                p.id
            )));
        }
        sides_of.push(pair);
    }

    // Root the region tree at the outer face.
    let mut adj: Vec<Vec<(u32, usize)>> = vec![Vec::new(); region_count];
    for (p, &(a, b)) in sides_of.iter().enumerate() {
        adj[a as usize].push((b, p));
        adj[b as usize].push((a, p));
    }
    let root = region_of_face[outer_face as usize];
    let mut inner_region = vec![u32::MAX; np];
    let mut outer_region = vec![u32::MAX; np];
    let mut tin = vec![u32::MAX; region_count];
    let mut tout = vec![0u32; region_count];
    let mut clock = 0u32;
    let mut stack: Vec<(u32, usize)> = vec![(root, 0)];
    tin[root as usize] = clock;
    clock += 1;
    while let Some(top) = stack.last_mut() {
        let (r, it) = *top;
        if let Some(&(next, p)) = adj[r as usize].get(it) {
            top.1 += 1;
            if tin[next as usize] != u32::MAX {
                if inner_region[p] == u32::MAX && outer_region[p] == u32::MAX {
                    return Err(ShadowError::Embed("region graph contains a cycle".into()));
                }
                continue;
            }
            tin[next as usize] = clock;
            clock += 1;
            inner_region[p] = next;
            outer_region[p] = r;
            stack.push((next, 0));
        } else {
            tout[r as usize] = clock;
            clock += 1;
            stack.pop();
        }
    }
    if tin.contains(&u32::MAX) {
        return Err(ShadowError::Embed("region graph is disconnected".into()));
    }
    let vertex_region = vertex_face.iter().map(|&f| region_of_face[f as usize]).collect();
    Ok(Embedding {
        faces,
        face_of,
        outer_face,
        region_of_face,
        region_count,
        inner_region,
        outer_region,
        vertex_region,
        tin,
        tout,
    })
}

/// Domain side of every arc and the nesting bit of every corner.
pub fn derive_embedding(shadow: &Shadow, emb: &Embedding) -> Result<DerivedEmbedding> {
    let mut domain_side = vec![Side::Left; shadow.arc_count()];
    for a in shadow.arcs() {
        let inner = emb.inner_region[a.polygon.idx()];
        let l = emb.region_of_face[emb.face_of[a.id.idx()][0] as usize];
        let r = emb.region_of_face[emb.face_of[a.id.idx()][1] as usize];
        domain_side[a.id.idx()] = if l == inner {
            Side::Left
        } else if r == inner {
            Side::Right
        } else {
            return Err(ShadowError::Embed(format!(
                "arc {} does not border the domain of its polygon",
                a.id
            )));
        };
    }
    let nested = shadow
        .polygons()
        .iter()
        .map(|p| {
            p.corners
                .iter()
                .map(|c| emb.vertex_region[c.vertex.idx()] == emb.inner_region[p.id.idx()])
                .collect()
        })
        .collect();
    Ok(DerivedEmbedding { domain_side, nested })
}

/// Double-occurrence word with crossing signs and an outer arc side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussCode {
    pub word: Vec<String>,
    pub signs: BTreeMap<String, i8>,
    /// Arc `i` runs from word position `i` to `i + 1`.
    pub outer_arc: usize,
    pub outer_side: Side,
}

impl GaussCode {
    /// Parses the text form:
    ///
    /// ```text
    /// word: a b a b
    /// signs: a=+1 b=-1
    /// outer: 0 right
    /// ```
    ///
    /// `signs` defaults to +1 for unlisted letters; `outer` defaults to
    /// `0 right`. Lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut word = None;
        let mut signs = BTreeMap::new();
        let mut outer_arc = 0usize;
        let mut outer_side = Side::Right;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| ShadowError::Schema(format!("expected `key: value`, got `{line}`")))?;
            match key.trim() {
                "word" => word = Some(rest.split_whitespace().map(str::to_owned).collect()),
                "signs" => {
                    for tok in rest.split_whitespace() {
                        let (l, s) = tok
                            .split_once('=')
                            .ok_or_else(|| ShadowError::Schema(format!("bad sign `{tok}`")))?;
                        let s = match s {
                            "+" | "+1" | "1" => 1,
                            "-" | "-1" => -1,
                            _ => return Err(ShadowError::Schema(format!("bad sign `{tok}`"))),
                        };
                        signs.insert(l.to_owned(), s);
                    }
                }
                "outer" => {
                    let mut it = rest.split_whitespace();
                    outer_arc = it
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| ShadowError::Schema("bad outer arc".into()))?;
                    outer_side = match it.next() {
                        None | Some("right") => Side::Right,
                        Some("left") => Side::Left,
                        Some(t) => return Err(ShadowError::Schema(format!("bad outer side `{t}`"))),
                    };
                }
                other => return Err(ShadowError::Schema(format!("unknown key `{other}`"))),
            }
        }
        let word = word.ok_or_else(|| ShadowError::Schema("missing `word:` line".into()))?;
        Ok(GaussCode { word, signs, outer_arc, outer_side })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("word: {}\n", self.word.join(" "));
        if !self.signs.is_empty() {
            let parts: Vec<String> = self
                .signs
                .iter()
                .map(|(l, &v)| format!("{l}={}", if v > 0 { "+1" } else { "-1" }))
                .collect();
            s.push_str(&format!("signs: {}\n", parts.join(" ")));
        }
        let side = match self.outer_side {
            Side::Left => "left",
            Side::Right => "right",
        };
        s.push_str(&format!("outer: {} {side}\n", self.outer_arc));
        s
    }
}

/// Builds the decorated shadow of a tree-like (interlacement-free) Gauss code.
/// Building polygons are the regions of the non-crossing chord diagram.
pub fn from_gauss_code(code: &GaussCode) -> Result<Shadow> {
    validate_shadow(&gauss_code_record(code)?)
}

/// Same as [`from_gauss_code`] but returns the raw record (derived fields unset).
pub fn gauss_code_record(code: &GaussCode) -> Result<ShadowFile> {
    let len = code.word.len();
    if len == 0 {
        if code.outer_arc != 0 {
            return Err(ShadowError::Schema("outer arc out of range".into()));
        }
        return Ok(circle_record(code.outer_side));
    }
    if !len.is_multiple_of(2) {
        return Err(ShadowError::Schema("word length must be even".into()));
    }
    if code.outer_arc >= len {
        return Err(ShadowError::Schema("outer arc out of range".into()));
    }
    // Letters in first-occurrence order, occurrence positions, interlacement.
    let mut letter_index: HashMap<&str, usize> = HashMap::new();
    let mut occ: Vec<[usize; 2]> = Vec::new();
    let mut count: Vec<u8> = Vec::new();
    let mut letter_at = vec![0usize; len];
    for (pos, l) in code.word.iter().enumerate() {
        let next = letter_index.len();
        let id = *letter_index.entry(l.as_str()).or_insert(next);
        if id == occ.len() {
            occ.push([pos, usize::MAX]);
            count.push(0);
        }
        if count[id] >= 2 {
            return Err(ShadowError::Schema(format!("letter `{l}` occurs more than twice")));
        }
        occ[id][count[id] as usize] = pos;
        count[id] += 1;
        letter_at[pos] = id;
    }
    if count.iter().any(|&c| c != 2) {
        return Err(ShadowError::Schema("every letter must occur exactly twice".into()));
    }
    let mut stack = Vec::new();
    for &id in &letter_at {
        if stack.last() == Some(&id) {
            stack.pop();
        } else {
            stack.push(id);
        }
    }
    if !stack.is_empty() {
        return Err(ShadowError::Interlaced(
            "chords cross; supply an explicit decorated shadow".into(),
        ));
    }
    for l in code.signs.keys() {
        if !letter_index.contains_key(l.as_str()) {
            return Err(ShadowError::Schema(format!("sign for unknown letter `{l}`")));
        }
    }
    let letters: Vec<&str> = {
        let mut v = vec![""; occ.len()];
        for (l, &i) in &letter_index {
            v[i] = l;
        }
        v
    };
    let n = occ.len();
    let prev = |p: usize| (p + len - 1) % len;
    let other = |p: usize| {
        let o = occ[letter_at[p]];
        if o[0] == p {
            o[1]
        } else {
            o[0]
        }
    };

    let vertices: Vec<VertexRecord> = (0..n)
        .map(|v| {
            let [p, q] = occ[v];
            let h1 = (prev(p) as u32, End::Head);
            let t1 = (p as u32, End::Tail);
            let h2 = (prev(q) as u32, End::Head);
            let t2 = (q as u32, End::Tail);
            let sign = code.signs.get(letters[v]).copied().unwrap_or(1);
            let rotation = if sign > 0 { vec![h1, h2, t1, t2] } else { vec![h1, t2, t1, h2] };
            VertexRecord {
                id: v as u32,
                rotation,
                transitions: vec![(prev(p) as u32, p as u32), (prev(q) as u32, q as u32)],
                sign: Some(sign),
            }
        })
        .collect();

    // Seifert circles: arc i continues with the arc leaving the other
    // occurrence of the letter at position i + 1.
    let succ = |i: usize| other((i + 1) % len);
    let mut polygon_of = vec![usize::MAX; len];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..len {
        if polygon_of[start] != usize::MAX {
            continue;
        }
        let pid = cycles.len();
        let mut cyc = Vec::new();
        let mut a = start;
        while polygon_of[a] == usize::MAX {
            polygon_of[a] = pid;
            cyc.push(a);
            a = succ(a);
        }
        cycles.push(cyc);
    }
    let polygons: Vec<PolygonRecord> = cycles
        .iter()
        .enumerate()
        .map(|(pid, cyc)| PolygonRecord {
            id: pid as u32,
            sides: cyc.iter().map(|&a| a as u32).collect(),
            corners: cyc
                .iter()
                .map(|&a| {
                    let pos = (a + 1) % len;
                    // The other corner at this letter arrives along the arc
                    // ending at the other occurrence.
                    let neighbor = polygon_of[prev(other(pos))];
                    CornerRecord {
                        vertex: letter_at[pos] as u32,
                        neighbor: neighbor as u32,
                        nested: None,
                    }
                })
                .collect(),
        })
        .collect();
    Ok(ShadowFile {
        version: 1,
        arcs: (0..len)
            .map(|a| ArcRecord { id: a as u32, polygon: polygon_of[a] as u32 })
            .collect(),
        vertices,
        polygons,
        traversal: (0..len as u32).collect(),
        outer: OuterRecord { arc: code.outer_arc as u32, side: code.outer_side },
        embedding: None,
    })
}

/// The embedded circle, traversed counterclockwise when `outer` is `Right`.
pub fn circle_record(outer: Side) -> ShadowFile {
    ShadowFile {
        version: 1,
        arcs: vec![ArcRecord { id: 0, polygon: 0 }],
        vertices: Vec::new(),
        polygons: vec![PolygonRecord { id: 0, sides: vec![0], corners: Vec::new() }],
        traversal: vec![0],
        outer: OuterRecord { arc: 0, side: outer },
        embedding: None,
    }
}
