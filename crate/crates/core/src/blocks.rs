//! Block-adjacency graph: building polygons as nodes, double points as edges.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShadowError};
use crate::model::{PolygonId, Shadow, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockGraph {
    pub nodes: Vec<PolygonId>,
    /// Edge `v` joins the two polygons meeting at double point `v`.
    pub edges: Vec<(PolygonId, PolygonId)>,
}

impl BlockGraph {
    pub fn cycle_rank(&self) -> usize {
        // Connected, so b1 = E - V + 1.
        self.edges.len() + 1 - self.nodes.len()
    }

    pub fn has_self_loop(&self) -> bool {
        self.edges.iter().any(|(a, b)| a == b)
    }
}

pub fn block_graph(shadow: &Shadow) -> BlockGraph {
    BlockGraph {
        nodes: (0..shadow.polygon_count() as u32).map(PolygonId).collect(),
        edges: shadow
            .vertices()
            .iter()
            .map(|v| (v.corners[0].polygon, v.corners[1].polygon))
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    TreeLike,
    TreeNecklace,
    General,
}

/// A simple cycle of the block graph: polygon `i` is glued to polygon
/// `i + 1` (cyclically) at the double point stored next to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCycle {
    pub steps: Vec<(PolygonId, VertexId)>,
}

impl BlockCycle {
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.steps.iter().map(|s| s.1)
    }

    pub fn polygons(&self) -> impl Iterator<Item = PolygonId> + '_ {
        self.steps.iter().map(|s| s.0)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: Kind,
    /// Fundamental cycles, one per feedback edge (the necklaces when `kind`
    /// is `TreeNecklace`).
    pub necklace_cycles: Vec<BlockCycle>,
    pub feedback_edges: Vec<VertexId>,
    pub cycle_rank: usize,
    /// Why a cyclic shadow fell into `General`, if it did.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Classification {
    /// Cycle index per double point (`None` for bridges).
    pub fn cycle_of_vertex(&self, n_vertices: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n_vertices];
        for (i, c) in self.necklace_cycles.iter().enumerate() {
            for v in c.vertices() {
                out[v.idx()] = Some(i);
            }
        }
        out
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Spanning tree + feedback edges. Edges are inserted in decreasing vertex id
/// order, so each rejected edge is the smallest id on its fundamental cycle.
pub(crate) fn spanning_tree(g: &BlockGraph) -> (Vec<bool>, Vec<VertexId>) {
    let mut parent: Vec<usize> = (0..g.nodes.len()).collect();
    let mut in_tree = vec![false; g.edges.len()];
    let mut feedback = Vec::new();
    for v in (0..g.edges.len()).rev() {
        let (a, b) = g.edges[v];
        let (ra, rb) = (find(&mut parent, a.idx()), find(&mut parent, b.idx()));
        if ra == rb {
            feedback.push(VertexId(v as u32));
        } else {
            parent[ra] = rb;
            in_tree[v] = true;
        }
    }
    feedback.sort();
    (in_tree, feedback)
}

/// Path of tree edges from `from` to `to`, as (polygon, vertex) steps starting
/// at `from`.
fn tree_path(
    g: &BlockGraph,
    in_tree: &[bool],
    from: PolygonId,
    to: PolygonId,
) -> Vec<(PolygonId, VertexId)> {
    let n = g.nodes.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (v, &(a, b)) in g.edges.iter().enumerate() {
        if in_tree[v] {
            adj[a.idx()].push((b.idx(), v));
            adj[b.idx()].push((a.idx(), v));
        }
    }
    let mut prev = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[from.idx()] = true;
    queue.push_back(from.idx());
    while let Some(x) = queue.pop_front() {
        if x == to.idx() {
            break;
        }
        for &(y, v) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, v));
                queue.push_back(y);
            }
        }
    }
    let mut rev = Vec::new();
    let mut x = to.idx();
    while let Some((p, v)) = prev[x] {
        rev.push((PolygonId(p as u32), VertexId(v as u32)));
        x = p;
    }
    rev.reverse();
    rev
}

/// Fundamental cycles of the feedback edges. Cycle `i` starts at the
/// polygon of the first corner of feedback edge `i` and closes through it.
pub(crate) fn fundamental_cycles(g: &BlockGraph, in_tree: &[bool], feedback: &[VertexId]) -> Vec<BlockCycle> {
    feedback
        .iter()
        .map(|&f| {
            let (a, b) = g.edges[f.idx()];
            // Walk a -> ... -> b along the tree, then close b -> a through f.
            let mut steps = tree_path(g, in_tree, a, b);
            steps.push((b, f));
            BlockCycle { steps }
        })
        .collect()
}

pub fn classify(shadow: &Shadow) -> Classification {
    let g = block_graph(shadow);
    let rank = g.cycle_rank();
    let (in_tree, feedback) = spanning_tree(&g);
    debug_assert_eq!(feedback.len(), rank);
    let cycles = fundamental_cycles(&g, &in_tree, &feedback);
    let general = |reason: String, cycles: Vec<BlockCycle>| Classification {
        kind: Kind::General,
        necklace_cycles: cycles,
        feedback_edges: feedback.clone(),
        cycle_rank: rank,
        reason: Some(reason),
    };
    if rank == 0 {
        return Classification {
            kind: Kind::TreeLike,
            necklace_cycles: Vec::new(),
            feedback_edges: Vec::new(),
            cycle_rank: 0,
            reason: None,
        };
    }
    if g.has_self_loop() {
        return general("a polygon is glued to itself".into(), cycles);
    }
    // Cactus: fundamental cycles are pairwise edge-disjoint.
    let mut used = vec![false; g.edges.len()];
    let cactus = cycles
        .iter()
        .flat_map(|c| c.vertices())
        .all(|v| !std::mem::replace(&mut used[v.idx()], true));
    if !cactus {
        return general("block graph is not a cactus".into(), cycles);
    }
    let bad = cycles
        .iter()
        .enumerate()
        .find_map(|(i, c)| annular(shadow, c).err().map(|why| format!("cycle {i}: {why}")));
    if let Some(reason) = bad {
        return general(reason, cycles);
    }
    Classification {
        kind: Kind::TreeNecklace,
        necklace_cycles: cycles,
        feedback_edges: feedback,
        cycle_rank: rank,
        reason: None,
    }
}

/// Combinatorial annulus check for one block cycle.
fn annular(shadow: &Shadow, cycle: &BlockCycle) -> std::result::Result<(), String> {
    let m = cycle.len();
    let polys: Vec<PolygonId> = cycle.polygons().collect();
    // (i) consecutive gluings at distinct double points
    if m >= 2 {
        for i in 0..m {
            let prev = cycle.steps[(i + m - 1) % m].1;
            if prev == cycle.steps[i].1 {
                return Err("consecutive gluings share a double point".into());
            }
        }
    }
    let mut distinct = polys.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != m {
        return Err("cycle repeats a polygon".into());
    }
    let emb = shadow.embedding();
    // (ii) no cycle polygon nested in another
    for &p in &polys {
        for &q in &polys {
            if emb.polygon_inside(q, p) {
                return Err(format!("polygon {q} is nested inside polygon {p}"));
            }
        }
    }
    // (iii) outside the polygon domains, the faces split into exactly two
    // components when crossing only arcs that are not sides of cycle polygons.
    let on_cycle = |p: PolygonId| distinct.binary_search(&p).is_ok();
    let nf = emb.faces.len();
    let keep: Vec<bool> = (0..nf as u32)
        .map(|f| !polys.iter().any(|&p| emb.face_in_domain(f, p)))
        .collect();
    let mut parent: Vec<usize> = (0..nf).collect();
    for a in shadow.arcs() {
        if on_cycle(a.polygon) {
            continue;
        }
        let [l, r] = emb.face_of[a.id.idx()];
        let (l, r) = (l as usize, r as usize);
        if keep[l] && keep[r] {
            let (x, y) = (find(&mut parent, l), find(&mut parent, r));
            if x != y {
                parent[x] = y;
            }
        }
    }
    let mut roots: Vec<usize> = (0..nf).filter(|&f| keep[f]).map(|f| find(&mut parent, f)).collect();
    roots.sort();
    roots.dedup();
    if roots.len() != 2 {
        return Err(format!(
            "complement of the cycle has {} components instead of 2",
            roots.len()
        ));
    }
    Ok(())
}

/// Checks that `vertices` traces a closed walk of distinct block edges and
/// returns it as a cycle.
pub fn cycle_from_vertices(shadow: &Shadow, vertices: &[VertexId]) -> Result<BlockCycle> {
    let m = vertices.len();
    if m == 0 {
        return Err(ShadowError::NotCycle("empty vertex list".into()));
    }
    for v in vertices {
        if v.idx() >= shadow.vertex_count() {
            return Err(ShadowError::NotCycle(format!("unknown double point {v}")));
        }
    }
    let mut sorted = vertices.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != m {
        return Err(ShadowError::NotCycle("repeated double point".into()));
    }
    let ends = |v: VertexId| {
        let x = shadow.vertex(v);
        (x.corners[0].polygon, x.corners[1].polygon)
    };
    // Polygon shared by edge i and edge i+1.
    let shared = |i: usize| -> Option<PolygonId> {
        let (a, b) = ends(vertices[i]);
        let (c, d) = ends(vertices[(i + 1) % m]);
        [a, b].into_iter().find(|&p| p == c || p == d)
    };
    let mut steps = Vec::with_capacity(m);
    if m == 1 {
        let (a, b) = ends(vertices[0]);
        if a != b {
            return Err(ShadowError::NotCycle("single edge is not a loop".into()));
        }
        steps.push((a, vertices[0]));
        return Ok(BlockCycle { steps });
    }
    // Entry polygon of edge 0 is the one it shares with the last edge.
    let mut cur = shared(m - 1)
        .ok_or_else(|| ShadowError::NotCycle("consecutive edges share no polygon".into()))?;
    for i in 0..m {
        let (a, b) = ends(vertices[i]);
        let next = if a == cur {
            b
        } else if b == cur {
            a
        } else {
            return Err(ShadowError::NotCycle(format!(
                "double point {} does not touch polygon {cur}",
                vertices[i]
            )));
        };
        steps.push((cur, vertices[i]));
        cur = next;
    }
    if cur != steps[0].0 {
        return Err(ShadowError::NotCycle("walk does not close".into()));
    }
    let mut polys: Vec<PolygonId> = steps.iter().map(|s| s.0).collect();
    polys.sort();
    polys.dedup();
    if polys.len() != m {
        return Err(ShadowError::NotCycle("walk repeats a polygon".into()));
    }
    Ok(BlockCycle { steps })
}
