//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blocks::{classify, Kind};
use crate::embed::{circle_record, from_gauss_code, GaussCode};
use crate::error::{Result, ShadowError};
use crate::format::{ArcRecord, CornerRecord, OuterRecord, PolygonRecord, ShadowFile, VertexRecord};
use crate::model::{validate_shadow, End, Shadow, Side};

/// What to hang off a necklace.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttachmentSpec {
    /// Circles inserted as kinks at random arcs and sides.
    #[serde(default)]
    pub curls: usize,
    /// Random tree-like pieces of these sizes, each glued in at one new double point.
    #[serde(default)]
    pub trees: Vec<usize>,
    /// Further necklaces (odd sizes) joined through new cut vertices.
    #[serde(default)]
    pub necklaces: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum GeneratorKind {
    TreeLikeRandom {
        n: usize,
    },
    CurlChain {
        m: usize,
    },
    Necklace {
        m: usize,
        #[serde(default)]
        attach: AttachmentSpec,
    },
    FigureEight,
    Curl,
    Trefoil,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub kind: GeneratorKind,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, seed: u64) -> Self {
        GeneratorSpec { kind, seed }
    }

    pub fn expected_kind(&self) -> Kind {
        match &self.kind {
            GeneratorKind::Necklace { .. } | GeneratorKind::Trefoil => Kind::TreeNecklace,
            _ => Kind::TreeLike,
        }
    }
}

/// Builds the instance and checks it validates and classifies as requested.
pub fn generate(spec: &GeneratorSpec) -> Result<ShadowFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let shadow = match &spec.kind {
        GeneratorKind::TreeLikeRandom { n } => tree_like_random(*n, &mut rng)?,
        GeneratorKind::CurlChain { m } => curl_chain(*m)?,
        GeneratorKind::FigureEight => figure_eight(),
        GeneratorKind::Curl => curl(),
        GeneratorKind::Trefoil => necklace(3)?,
        GeneratorKind::Necklace { m, attach } => {
            let mut s = necklace(*m)?;
            for &size in &attach.necklaces {
                let piece = necklace(size)?;
                s = attach_random(&s, &piece, &mut rng)?;
            }
            for &size in &attach.trees {
                let piece = tree_like_random(size, &mut rng)?;
                s = attach_random(&s, &piece, &mut rng)?;
            }
            for _ in 0..attach.curls {
                s = attach_random(&s, &validate_shadow(&circle_record(Side::Right))?, &mut rng)?;
            }
            s
        }
    };
    let got = classify(&shadow).kind;
    if got != spec.expected_kind() {
        return Err(ShadowError::Spec(format!(
            "generated instance classifies as {got:?}, expected {:?}",
            spec.expected_kind()
        )));
    }
    let mut file = shadow.to_file();
    file.embedding = None;
    Ok(file)
}

/// Uniform random non-crossing perfect matching on `2n` points, returned as
/// a word of chord labels (cycle lemma on a shuffled ±1 sequence).
pub fn random_noncrossing_word(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut steps: Vec<i32> = std::iter::repeat_n(1, n).chain(std::iter::repeat_n(-1, n + 1)).collect();
    steps.shuffle(rng);
    // Rotate to start just after the first minimum of the prefix sums.
    let mut sum = 0;
    let mut min = 0;
    let mut at = 0;
    for (i, &s) in steps.iter().enumerate() {
        sum += s;
        if sum < min {
            min = sum;
            at = i + 1;
        }
    }
    let len = steps.len();
    steps.rotate_left(at % len);
    steps.pop();
    let mut open = Vec::new();
    let mut word = vec![0; 2 * n];
    let mut next = 0;
    for (i, &s) in steps.iter().enumerate() {
        if s > 0 {
            open.push(i);
            word[i] = next;
            next += 1;
        } else {
            let j = open.pop().expect("balanced");
            word[i] = word[j];
        }
    }
    word
}

fn letter(i: usize) -> String {
    format!("c{i}")
}

/// Random interlacement-free Gauss code with random signs and outer side.
pub fn random_tree_like_code(n: usize, rng: &mut impl Rng) -> GaussCode {
    let word: Vec<String> = random_noncrossing_word(n, rng).into_iter().map(letter).collect();
    let signs = (0..n)
        .map(|i| (letter(i), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    GaussCode {
        outer_arc: if n == 0 { 0 } else { rng.gen_range(0..2 * n) },
        outer_side: if rng.gen_bool(0.5) { Side::Left } else { Side::Right },
        word,
        signs,
    }
}

pub fn tree_like_random(n: usize, rng: &mut impl Rng) -> Result<Shadow> {
    from_gauss_code(&random_tree_like_code(n, rng))
}

pub fn figure_eight() -> Shadow {
    from_gauss_code(&GaussCode::parse("word: a a\nsigns: a=+1\nouter: 0 left\n").expect("fixture"))
        .expect("fixture")
}

pub fn curl() -> Shadow {
    from_gauss_code(&GaussCode::parse("word: a a\nsigns: a=+1\nouter: 0 right\n").expect("fixture"))
        .expect("fixture")
}

/// `m` nested kinks (a spiral winding `m + 1` times): word
/// `a1 .. am am .. a1` with equal signs and the outer face chosen so that
/// every loop lies inside the previous one.
pub fn curl_chain(m: usize) -> Result<Shadow> {
    if m == 0 {
        return validate_shadow(&circle_record(Side::Right));
    }
    let letters: Vec<String> = (0..m).map(letter).collect();
    let word: Vec<String> = letters.iter().chain(letters.iter().rev()).cloned().collect();
    for sign in [1, -1] {
        for outer_arc in [2 * m - 1, m - 1] {
            for outer_side in [Side::Right, Side::Left] {
                let code = GaussCode {
                    word: word.clone(),
                    signs: letters.iter().map(|l| (l.clone(), sign)).collect(),
                    outer_arc,
                    outer_side,
                };
                let s = from_gauss_code(&code)?;
                let nesting = s.polygons().iter().filter(|p| p.nested_corner_count() > 0).count();
                if nesting == m && crate::solve::solve_tree_dp(&s)?.value == 0 {
                    return Ok(s);
                }
            }
        }
    }
    Err(ShadowError::Spec(format!("no inflection-free nesting found for a chain of {m} curls")))
}

/// Closure of the two-strand braid with `m` crossings (odd `m`): `m` lobes
/// on a ring. `m = 3` is the trefoil shadow.
pub fn necklace(m: usize) -> Result<Shadow> {
    validate_shadow(&necklace_record(m)?)
}

pub fn necklace_record(m: usize) -> Result<ShadowFile> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(ShadowError::Spec(format!(
            "a one-component necklace needs an odd number of lobes >= 3, got {m}"
        )));
    }
    let e = 2 * m;
    let arcs: Vec<ArcRecord> = (0..e)
        .map(|i| ArcRecord { id: i as u32, polygon: (i % m) as u32 })
        .collect();
    let vertices = (0..m)
        .map(|c| {
            let in_a = (c + m - 1) % m;
            let in_b = in_a + m;
            let (in_outer, in_inner) = if in_a.is_multiple_of(2) { (in_a, in_b) } else { (in_b, in_a) };
            let (out_outer, out_inner) = if c % 2 == 0 { (c, c + m) } else { (c + m, c) };
            VertexRecord {
                id: c as u32,
                rotation: vec![
                    (out_inner as u32, End::Tail),
                    (in_inner as u32, End::Head),
                    (in_outer as u32, End::Head),
                    (out_outer as u32, End::Tail),
                ],
                transitions: vec![(in_outer as u32, out_inner as u32), (in_inner as u32, out_outer as u32)],
                sign: None,
            }
        })
        .collect();
    let polygons = (0..m)
        .map(|c| {
            let (outer, inner) = if c % 2 == 0 { (c, c + m) } else { (c + m, c) };
            PolygonRecord {
                id: c as u32,
                sides: vec![outer as u32, inner as u32],
                corners: vec![
                    CornerRecord { vertex: ((c + 1) % m) as u32, neighbor: ((c + 1) % m) as u32, nested: None },
                    CornerRecord { vertex: c as u32, neighbor: ((c + m - 1) % m) as u32, nested: None },
                ],
            }
        })
        .collect();
    Ok(ShadowFile {
        version: 1,
        arcs,
        vertices,
        polygons,
        traversal: (0..e as u32).collect(),
        outer: OuterRecord { arc: 0, side: Side::Right },
        embedding: None,
    })
}

/// Same curve traversed backwards.
pub fn reverse_record(file: &ShadowFile) -> ShadowFile {
    let mut out = file.clone();
    out.strip_derived();
    for v in &mut out.vertices {
        for r in &mut v.rotation {
            r.1 = match r.1 {
                End::Head => End::Tail,
                End::Tail => End::Head,
            };
        }
        for t in &mut v.transitions {
            *t = (t.1, t.0);
        }
    }
    out.traversal.reverse();
    out.outer.side = out.outer.side.opposite();
    out
}

/// Inserts `piece` as a kink at a new double point on arc `e` of `host`, on
/// the given side. The piece is cut open at its outer-mark arc.
pub fn insert_at(host: &Shadow, e: u32, side: Side, piece: &Shadow) -> Result<Shadow> {
    if e as usize >= host.arc_count() {
        return Err(ShadowError::Spec(format!("host has no arc {e}")));
    }
    let mut a = host.to_file();
    a.strip_derived();
    let mut b = piece.to_file();
    // The piece's outer face must meet the host: on the right of the cut
    // arc for a left insertion.
    let want = side.opposite();
    let piece = if b.outer.side != want {
        b = reverse_record(&b);
        validate_shadow(&b)?
    } else {
        b.strip_derived();
        piece.clone()
    };
    let c = b.outer.arc;

    let na = a.arcs.len() as u32;
    let nb = b.arcs.len() as u32;
    let va = a.vertices.len() as u32;
    let vb = b.vertices.len() as u32;
    let pa = a.polygons.len() as u32;
    let w = va + vb;
    let host_circle = a.vertices.is_empty();
    let piece_circle = b.vertices.is_empty();
    let ea = e;
    let eb = if host_circle { e } else { na };
    let boff = na + u32::from(!host_circle);
    let c1 = boff + c;
    let c2 = if piece_circle { c1 } else { boff + nb };
    let p_host = a.arcs[e as usize].polygon;
    let p_piece = pa + b.arcs[c as usize].polygon;

    let mut arcs = a.arcs.clone();
    if !host_circle {
        arcs.push(ArcRecord { id: eb, polygon: p_host });
    }
    for r in &b.arcs {
        arcs.push(ArcRecord { id: boff + r.id, polygon: pa + r.polygon });
    }
    if !piece_circle {
        arcs.push(ArcRecord { id: c2, polygon: p_piece });
    }

    let mut vertices = a.vertices.clone();
    for v in &mut vertices {
        for r in &mut v.rotation {
            if r.0 == e && r.1 == End::Head {
                r.0 = eb;
            }
        }
        for t in &mut v.transitions {
            if t.0 == e {
                t.0 = eb;
            }
        }
    }
    for v in &b.vertices {
        let rotation = v
            .rotation
            .iter()
            .map(|&(arc, end)| {
                if arc == c && end == End::Tail {
                    (c2, end)
                } else {
                    (boff + arc, end)
                }
            })
            .collect();
        let transitions = v
            .transitions
            .iter()
            .map(|&(i, o)| (boff + i, if o == c { c2 } else { boff + o }))
            .collect();
        vertices.push(VertexRecord { id: va + v.id, rotation, transitions, sign: None });
    }
    let rotation = match side {
        Side::Left => vec![(ea, End::Head), (eb, End::Tail), (c1, End::Tail), (c2, End::Head)],
        Side::Right => vec![(ea, End::Head), (c2, End::Head), (c1, End::Tail), (eb, End::Tail)],
    };
    vertices.push(VertexRecord { id: w, rotation, transitions: vec![(ea, c1), (c2, eb)], sign: None });

    let split = |sides: &[u32], corners: &[CornerRecord], at: usize, first: u32, second: u32, neighbor: u32, same: bool| {
        let mut s = Vec::with_capacity(sides.len() + 1);
        let mut cs = Vec::with_capacity(corners.len() + 1);
        let wc = CornerRecord { vertex: w, neighbor, nested: None };
        if same {
            // A circle cut once: one side, one corner.
            s.push(first);
            cs.push(wc);
            return (s, cs);
        }
        for (i, &x) in sides.iter().enumerate() {
            if i == at {
                s.push(first);
                cs.push(wc.clone());
                s.push(second);
            } else {
                s.push(x);
            }
            if let Some(cr) = corners.get(i) {
                cs.push(cr.clone());
            }
        }
        (s, cs)
    };

    let mut polygons = Vec::with_capacity(a.polygons.len() + b.polygons.len());
    let hp = host.polygon(crate::model::PolygonId(p_host));
    for r in &a.polygons {
        if r.id != p_host {
            polygons.push(r.clone());
            continue;
        }
        let at = r.sides.iter().position(|&x| x == e).expect("arc on its polygon");
        let (first, second) = if hp.forward[at] { (ea, eb) } else { (eb, ea) };
        let (sides, corners) = split(&r.sides, &r.corners, at, first, second, p_piece, host_circle);
        polygons.push(PolygonRecord { id: r.id, sides, corners });
    }
    let qp = piece.polygon(crate::model::PolygonId(p_piece - pa));
    for r in &b.polygons {
        let sides: Vec<u32> = r.sides.iter().map(|&x| boff + x).collect();
        let corners: Vec<CornerRecord> = r
            .corners
            .iter()
            .map(|cr| CornerRecord { vertex: va + cr.vertex, neighbor: pa + cr.neighbor, nested: None })
            .collect();
        if pa + r.id != p_piece {
            polygons.push(PolygonRecord { id: pa + r.id, sides, corners });
            continue;
        }
        let at = r.sides.iter().position(|&x| x == c).expect("arc on its polygon");
        let (first, second) = if qp.forward[at] { (c2, c1) } else { (c1, c2) };
        let (sides, corners) = split(&sides, &corners, at, first, second, p_host, piece_circle);
        polygons.push(PolygonRecord { id: pa + r.id, sides, corners });
    }

    // Traversal: host up to e_a, then the piece from c1 round to c2, then e_b.
    let bt = &b.traversal;
    let start = bt.iter().position(|&x| x == c).expect("cut arc in traversal");
    let mut piece_walk = vec![c1];
    for i in 1..bt.len() {
        piece_walk.push(boff + bt[(start + i) % bt.len()]);
    }
    if !piece_circle {
        piece_walk.push(c2);
    }
    let mut traversal = Vec::with_capacity(arcs.len());
    for &x in &a.traversal {
        if x == e {
            traversal.push(ea);
            traversal.extend_from_slice(&piece_walk);
            if !host_circle {
                traversal.push(eb);
            }
        } else {
            traversal.push(x);
        }
    }

    let file = ShadowFile {
        version: 1,
        arcs,
        vertices,
        polygons,
        traversal,
        outer: a.outer,
        embedding: None,
    };
    validate_shadow(&file)
}

fn attach_random(host: &Shadow, piece: &Shadow, rng: &mut impl Rng) -> Result<Shadow> {
    let e = rng.gen_range(0..host.arc_count()) as u32;
    let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
    insert_at(host, e, side, piece)
}
