//! Block-tree dynamic program.
//!
//! Every double point couples the two polygons glued there through two
//! transitions, so a child block sees its parent through the pair of parent
//! arc signs at the gluing (four states). Inside one polygon the sides form
//! a cycle and the corner costs only involve consecutive sides, so each
//! polygon is solved by a cycle DP over its sides. Non-tree edges of the
//! block graph are handled by fixing the parent-side sign pair on each of
//! them and taking the best of the `4^r` resulting tree problems. When
//! necklace parities are enforced, each subtree also reports the conflict
//! parity it contributes to the cycle through its parent gluing.

use std::time::Instant;

use rayon::prelude::*;

use super::{Solution, Stats, Status};
use crate::blocks::{block_graph, classify, spanning_tree, Classification, Kind};
use crate::coorient::polygon_admissible;
use crate::error::{Result, ShadowError};
use crate::model::{Bit, Coorientation, Shadow};

/// Largest cycle rank accepted by the exact necklace solver.
pub const FEEDBACK_GUARD: usize = 10;
/// Largest cycle rank for which the local bound is computed by conditioning
/// instead of exhaustive search.
pub const LOCAL_FEEDBACK_GUARD: usize = 8;

const INF: u32 = u32::MAX / 4;

type Table = [[u32; 2]; 4];

#[derive(Debug, Clone, Copy)]
enum CornerKind {
    /// Gluing to the parent block; costs are charged here.
    Parent,
    Child(usize),
    /// Non-tree gluing whose sign pair is the conditioned state.
    Fixed(usize),
    /// Non-tree gluing charged against the conditioned state.
    Charged(usize),
}

#[derive(Debug, Clone)]
struct CornerPlan {
    kind: CornerKind,
    branch_side: [u8; 2],
    channel: Option<u8>,
}

#[derive(Debug, Clone)]
struct PolyPlan {
    sides: Vec<usize>,
    dbit: Vec<u8>,
    corners: Vec<CornerPlan>,
    channels: usize,
    has_out: bool,
    nested: usize,
}

struct Plan {
    polys: Vec<PolyPlan>,
    /// Children before parents.
    order: Vec<usize>,
    root: usize,
    feedback: usize,
}

impl Plan {
    fn new(shadow: &Shadow, cls: &Classification, parity: bool) -> Plan {
        let g = block_graph(shadow);
        let (in_tree, feedback) = spanning_tree(&g);
        let np = shadow.polygon_count();
        let nv = shadow.vertex_count();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); np];
        for (v, &(a, b)) in g.edges.iter().enumerate() {
            if in_tree[v] {
                adj[a.idx()].push((b.idx(), v));
                adj[b.idx()].push((a.idx(), v));
            }
        }
        let root = shadow.root_polygon().idx();
        let mut parent_vertex = vec![None; np];
        let mut seen = vec![false; np];
        let mut pre = Vec::with_capacity(np);
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(q) = stack.pop() {
            pre.push(q);
            for &(r, v) in &adj[q] {
                if !seen[r] {
                    seen[r] = true;
                    parent_vertex[r] = Some(v);
                    stack.push(r);
                }
            }
        }
        debug_assert_eq!(pre.len(), np);
        let order: Vec<usize> = pre.into_iter().rev().collect();

        let cycle_of = if parity {
            cls.cycle_of_vertex(nv)
        } else {
            vec![None; nv]
        };
        let mut fb_index = vec![None; nv];
        for (i, f) in feedback.iter().enumerate() {
            fb_index[f.idx()] = Some(i);
        }

        let polys = shadow
            .polygons()
            .iter()
            .map(|p| {
                let q = p.id.idx();
                let out_cycle = parent_vertex[q].and_then(|v| cycle_of[v]);
                let mut channel_cycles: Vec<usize> = out_cycle.into_iter().collect();
                let mut channel = |z: Option<usize>| -> Option<u8> {
                    let z = z?;
                    let pos = channel_cycles.iter().position(|&c| c == z).unwrap_or_else(|| {
                        channel_cycles.push(z);
                        channel_cycles.len() - 1
                    });
                    Some(pos as u8)
                };
                let corners = p
                    .corners
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let v = c.vertex.idx();
                        let kind = if parent_vertex[q] == Some(v) {
                            CornerKind::Parent
                        } else if in_tree[v] {
                            CornerKind::Child(c.neighbor.idx())
                        } else {
                            let f = fb_index[v].expect("non-tree edge is a feedback edge");
                            let first = shadow.vertex(c.vertex).corners[0];
                            if first.polygon == p.id && first.index == i {
                                CornerKind::Fixed(f)
                            } else {
                                CornerKind::Charged(f)
                            }
                        };
                        let channel = match kind {
                            CornerKind::Fixed(_) => None,
                            _ => channel(cycle_of[v]),
                        };
                        CornerPlan {
                            kind,
                            branch_side: c.branch_side,
                            channel,
                        }
                    })
                    .collect();
                PolyPlan {
                    sides: p.sides.iter().map(|a| a.idx()).collect(),
                    dbit: p
                        .sides
                        .iter()
                        .map(|&a| shadow.arc(a).domain_side.bit())
                        .collect(),
                    corners,
                    channels: channel_cycles.len(),
                    has_out: out_cycle.is_some(),
                    nested: p.nested_corner_count(),
                }
            })
            .collect();
        Plan {
            polys,
            order,
            root,
            feedback: feedback.len(),
        }
    }
}

/// One cycle DP over the sides of a polygon, kept for back-tracing.
struct Run {
    nst: usize,
    /// Per starting bit: `(corners + 1) * nst` cells of `(cost, back)`.
    layers: [Vec<(u32, u32)>; 2],
    /// Per outgoing parity: `(cost, x0, final state)`.
    best: [(u32, u8, u32); 2],
    expanded: u64,
}

struct Step {
    x: Vec<u8>,
    /// `(child polygon, sign pair, parity)` for each child corner.
    children: Vec<(usize, u8, u8)>,
}

#[inline]
fn sign(dbit: u8, x: u8) -> u8 {
    // outward (x = 0) puts the convex side opposite the domain
    dbit ^ x ^ 1
}

impl PolyPlan {
    fn y_pair(&self, i: usize, xi: u8, xn: u8) -> u8 {
        let k = self.sides.len();
        let c = &self.corners[i];
        let s0 = sign(self.dbit[i], xi);
        let s1 = sign(self.dbit[(i + 1) % k], xn);
        let y = |j: usize| if c.branch_side[j] == 0 { s0 } else { s1 };
        y(0) | y(1) << 1
    }

    /// Options `(cost, parity)` at corner `i`.
    fn options(&self, i: usize, y: u8, sigma: u8, fb: &[u8], tables: &[Table]) -> [(u32, u8); 2] {
        let none = (INF, 0);
        match self.corners[i].kind {
            CornerKind::Parent => {
                let c = (y ^ sigma).count_ones();
                [(c, (c & 1) as u8), none]
            }
            CornerKind::Child(q) => {
                let t = tables[q][y as usize];
                [(t[0], 0), (t[1], 1)]
            }
            CornerKind::Fixed(f) => [if y == fb[f] { (0, 0) } else { none }, none],
            CornerKind::Charged(f) => {
                let c = (y ^ fb[f]).count_ones();
                [(c, (c & 1) as u8), none]
            }
        }
    }

    fn run(&self, sigma: u8, fb: &[u8], tables: &[Table]) -> Run {
        let k = self.sides.len();
        let m = self.corners.len();
        let nst = 4usize << self.channels;
        let closing_mask: u32 = if self.has_out { !1 } else { !0 };
        let mut best = [(INF, 0u8, 0u32); 2];
        let mut expanded = 0u64;
        let mut layers = [Vec::new(), Vec::new()];
        for x0 in 0..2u8 {
            let mut cells = vec![(INF, 0u32); (m + 1) * nst];
            let allin0 = x0 as usize;
            cells[x0 as usize | allin0 << 1] = (0, 0);
            for i in 0..m {
                let last = (i + 1) % k == 0;
                let (cur, next) = cells.split_at_mut((i + 1) * nst);
                let cur = &cur[i * nst..];
                for (st, &(cost, _)) in cur.iter().enumerate() {
                    if cost >= INF {
                        continue;
                    }
                    let xi = (st & 1) as u8;
                    let allin = st >> 1 & 1;
                    let mask = st >> 2;
                    for xn in 0..2u8 {
                        if last && xn != x0 {
                            continue;
                        }
                        let y = self.y_pair(i, xi, xn);
                        let opts = self.options(i, y, sigma, fb, tables);
                        for (o, &(c, par)) in opts.iter().enumerate() {
                            if c >= INF {
                                continue;
                            }
                            expanded += 1;
                            let mut nmask = mask;
                            if par == 1 {
                                if let Some(ch) = self.corners[i].channel {
                                    nmask ^= 1 << ch;
                                }
                            }
                            let nallin = allin & xn as usize;
                            let ns = xn as usize | nallin << 1 | nmask << 2;
                            let total = cost + c;
                            if total < next[ns].0 {
                                next[ns] = (total, (st as u32) << 1 | o as u32);
                            }
                        }
                    }
                }
            }
            let fin = &cells[m * nst..];
            for (st, &(cost, _)) in fin.iter().enumerate() {
                if cost >= INF || (st & 1) as u8 != x0 {
                    continue;
                }
                let allin = st >> 1 & 1 == 1;
                if allin && polygon_admissible(k, self.nested, k).is_err() {
                    continue;
                }
                let mask = (st >> 2) as u32;
                if mask & closing_mask != 0 {
                    continue;
                }
                let p = (mask & 1) as usize * self.has_out as usize;
                if cost < best[p].0 {
                    best[p] = (cost, x0, st as u32);
                }
            }
            layers[x0 as usize] = cells;
        }
        Run {
            nst,
            layers,
            best,
            expanded,
        }
    }

    fn trace(&self, run: &Run, p: usize, sigma: u8, fb: &[u8], tables: &[Table]) -> Step {
        let k = self.sides.len();
        let m = self.corners.len();
        let (cost, x0, mut st) = run.best[p];
        debug_assert!(cost < INF);
        let cells = &run.layers[x0 as usize];
        let mut x = vec![x0; k];
        let mut children = Vec::new();
        for i in (0..m).rev() {
            let back = cells[(i + 1) * run.nst + st as usize].1;
            let prev = back >> 1;
            let o = (back & 1) as usize;
            let xn = (st & 1) as u8;
            let xi = (prev & 1) as u8;
            if (i + 1) % k != 0 {
                x[i + 1] = xn;
            }
            x[i] = xi;
            if let CornerKind::Child(q) = self.corners[i].kind {
                let y = self.y_pair(i, xi, xn);
                let par = self.options(i, y, sigma, fb, tables)[o].1;
                children.push((q, y, par));
            }
            st = prev;
        }
        Step { x, children }
    }
}

struct Outcome {
    cost: u32,
    tables: Vec<Table>,
    expanded: u64,
    runs: u64,
}

fn bottom_up(plan: &Plan, fb: &[u8]) -> Outcome {
    let mut tables = vec![[[INF; 2]; 4]; plan.polys.len()];
    let mut cost = INF;
    let mut expanded = 0;
    let mut runs = 0;
    for &q in &plan.order {
        let pp = &plan.polys[q];
        if q == plan.root {
            let r = pp.run(0, fb, &tables);
            expanded += r.expanded;
            runs += 1;
            cost = r.best[0].0;
        } else {
            for sigma in 0..4u8 {
                let r = pp.run(sigma, fb, &tables);
                expanded += r.expanded;
                runs += 1;
                tables[q][sigma as usize] = [r.best[0].0, r.best[1].0];
            }
        }
    }
    Outcome {
        cost,
        tables,
        expanded,
        runs,
    }
}

fn top_down(plan: &Plan, fb: &[u8], tables: &[Table], arcs: usize) -> Coorientation {
    let mut bits = vec![Bit::Outward; arcs];
    let mut stack = vec![(plan.root, 0u8, 0usize)];
    while let Some((q, sigma, p)) = stack.pop() {
        let pp = &plan.polys[q];
        let run = pp.run(sigma, fb, tables);
        let step = pp.trace(&run, p, sigma, fb, tables);
        for (i, &a) in pp.sides.iter().enumerate() {
            bits[a] = if step.x[i] == 1 { Bit::Inward } else { Bit::Outward };
        }
        for (c, y, par) in step.children {
            stack.push((c, y, par as usize));
        }
    }
    Coorientation { bits }
}

fn decode(state: u64, r: usize) -> Vec<u8> {
    (0..r).map(|i| (state >> (2 * i) & 3) as u8).collect()
}

/// Best coorientation over all feedback states. With `parity` every
/// necklace cycle must carry an even number of conflicts.
pub(crate) fn solve_conditioned(shadow: &Shadow, cls: &Classification, parity: bool) -> Result<Solution> {
    let start = Instant::now();
    let plan = Plan::new(shadow, cls, parity);
    let r = plan.feedback;
    let states = 1u64 << (2 * r);
    let (cost, best_state, expanded, runs) = (0..states)
        .into_par_iter()
        .map(|s| {
            let out = bottom_up(&plan, &decode(s, r));
            (out.cost, s, out.expanded, out.runs)
        })
        .reduce(
            || (INF, u64::MAX, 0, 0),
            |a, b| {
                let w = if (a.0, a.1) <= (b.0, b.1) { a } else { b };
                (w.0, w.1, a.2 + b.2, a.3 + b.3)
            },
        );
    if cost >= INF {
        return Err(ShadowError::Spec(
            "no admissible cycle-compatible coorientation exists".into(),
        ));
    }
    let fb = decode(best_state, r);
    let out = bottom_up(&plan, &fb);
    let witness = top_down(&plan, &fb, &out.tables, shadow.arc_count());
    let status = match cls.kind {
        Kind::TreeLike => Status::ExactTreeLike,
        Kind::TreeNecklace if parity => Status::ExactTreeNecklace,
        _ => Status::LowerBoundOnly,
    };
    let stats = Stats {
        nodes: runs + out.runs,
        states: expanded + out.expanded,
        wall: start.elapsed(),
    };
    let sol = Solution::new(shadow, witness, status, stats);
    debug_assert_eq!(sol.value, cost as usize);
    Ok(sol)
}

/// Exact minimum for tree-like shadows, linear in the number of double points.
pub fn solve_tree_dp(shadow: &Shadow) -> Result<Solution> {
    let cls = classify(shadow);
    if cls.kind != Kind::TreeLike {
        return Err(ShadowError::NotTreeLike);
    }
    solve_conditioned(shadow, &cls, false)
}

/// Exact minimum for tree-necklace shadows: the tree DP conditioned on the
/// feedback gluings, keeping only even conflict parity on every necklace.
pub fn solve_cactus(shadow: &Shadow) -> Result<Solution> {
    let cls = classify(shadow);
    if cls.kind == Kind::General {
        return Err(ShadowError::NotNecklace);
    }
    if cls.cycle_rank > FEEDBACK_GUARD {
        return Err(ShadowError::TooLarge(format!(
            "cycle rank {} exceeds the feedback guard of {FEEDBACK_GUARD}",
            cls.cycle_rank
        )));
    }
    solve_conditioned(shadow, &cls, true)
}
