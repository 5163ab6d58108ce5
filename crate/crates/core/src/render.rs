//! Circle layouts of tree-like and tree-necklace shadows, SVG output, and
//! the coordinate-based checks that come with them.
//!
//! Every building polygon is drawn as a circle; polygons meeting at a double
//! point are tangent there. Tree edges are placed by trying the four
//! possible (direction, inside/outside) choices and keeping the one whose
//! local picture reproduces the rotation at the double point. Necklaces are
//! drawn as rings of equal circles.

use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use crate::blocks::{classify, Kind};
use crate::coorient::{arc_sign, conflicts};
use crate::error::{Result, ShadowError};
use crate::model::{ArcEnd, ArcId, Bit, Coorientation, End, PolygonId, Shadow, Side, VertexId};

type Pt = [f64; 2];

fn unit(a: f64) -> Pt {
    [a.cos(), a.sin()]
}

fn add(p: Pt, q: Pt) -> Pt {
    [p[0] + q[0], p[1] + q[1]]
}

fn sub(p: Pt, q: Pt) -> Pt {
    [p[0] - q[0], p[1] - q[1]]
}

fn scale(p: Pt, s: f64) -> Pt {
    [p[0] * s, p[1] * s]
}

fn norm(p: Pt) -> f64 {
    p[0].hypot(p[1])
}

fn angle_of(p: Pt) -> f64 {
    p[1].atan2(p[0])
}

fn dot(p: Pt, q: Pt) -> f64 {
    p[0] * q[0] + p[1] * q[1]
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircleGeom {
    pub center: Pt,
    pub radius: f64,
    /// Boundary walk runs counterclockwise.
    pub ccw: bool,
    /// Angle of each corner as seen from the center.
    pub corner_angles: Vec<f64>,
}

impl CircleGeom {
    fn dir(&self) -> f64 {
        if self.ccw {
            1.0
        } else {
            -1.0
        }
    }

    fn at(&self, angle: f64) -> Pt {
        add(self.center, scale(unit(angle), self.radius))
    }

    /// Start angle and unsigned sweep of side `i` in walk order.
    fn side_span(&self, i: usize) -> (f64, f64) {
        let k = self.corner_angles.len();
        if k == 0 {
            return (0.0, TAU);
        }
        if k == 1 {
            return (self.corner_angles[0], TAU);
        }
        let from = self.corner_angles[(i + k - 1) % k];
        let to = self.corner_angles[i % k];
        (from, ((to - from) * self.dir()).rem_euclid(TAU))
    }

    /// Sampled boundary, counterclockwise or not as walked.
    pub fn outline(&self, samples: usize) -> Vec<Pt> {
        (0..samples)
            .map(|j| self.at(self.dir() * TAU * j as f64 / samples as f64))
            .collect()
    }
}

/// Ring of equal circles carrying one necklace.
#[derive(Debug, Clone, PartialEq)]
pub struct RingGeom {
    pub center: Pt,
    /// Distance from the ring center to the member centers.
    pub radius: f64,
    pub member_radius: f64,
    pub members: Vec<PolygonId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub circles: Vec<CircleGeom>,
    pub rings: Vec<RingGeom>,
}

impl Layout {
    fn side_index(shadow: &Shadow, a: ArcId) -> (PolygonId, usize) {
        let p = shadow.arc(a).polygon;
        let i = shadow.polygon(p).sides.iter().position(|&s| s == a).expect("arc belongs to its polygon");
        (p, i)
    }

    /// Point at parameter `t ∈ [0, 1]` along arc `a`, in its orientation.
    pub fn arc_point(&self, shadow: &Shadow, a: ArcId, t: f64) -> Pt {
        let (p, i) = Self::side_index(shadow, a);
        let c = &self.circles[p.idx()];
        let (start, sweep) = c.side_span(i);
        let w = if shadow.polygon(p).forward[i] { t } else { 1.0 - t };
        c.at(start + c.dir() * sweep * w)
    }

    /// Unit tangent of arc `a` at parameter `t`, in its orientation.
    pub fn arc_tangent(&self, shadow: &Shadow, a: ArcId, t: f64) -> Pt {
        let (p, i) = Self::side_index(shadow, a);
        let c = &self.circles[p.idx()];
        let (start, _) = c.side_span(i);
        let sweep = c.side_span(i).1;
        let fwd = shadow.polygon(p).forward[i];
        let w = if fwd { t } else { 1.0 - t };
        let ang = start + c.dir() * sweep * w;
        let s = c.dir() * if fwd { 1.0 } else { -1.0 };
        scale([-ang.sin(), ang.cos()], s)
    }

    pub fn arc_polyline(&self, shadow: &Shadow, a: ArcId) -> Vec<Pt> {
        let (p, i) = Self::side_index(shadow, a);
        let sweep = self.circles[p.idx()].side_span(i).1;
        let n = ((sweep / TAU * 64.0).ceil() as usize).max(8);
        (0..=n).map(|j| self.arc_point(shadow, a, j as f64 / n as f64)).collect()
    }

    pub fn vertex_point(&self, shadow: &Shadow, v: VertexId) -> Pt {
        let cr = shadow.vertex(v).corners[0];
        let c = &self.circles[cr.polygon.idx()];
        c.at(c.corner_angles[cr.index])
    }
}

/// Even-odd ray casting.
pub fn point_in_polygon(pt: Pt, poly: &[Pt]) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (a[1] > pt[1]) != (b[1] > pt[1]) {
            let x = a[0] + (pt[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
            if pt[0] < x {
                inside = !inside;
            }
        }
    }
    inside
}

fn child_scale(k: usize) -> f64 {
    0.42 * (1.4 * (PI / k.max(2) as f64).sin()).min(1.0)
}

/// Spreads the free corners evenly between the fixed ones along the walk.
/// `None` when the fixed corners are out of walk order.
fn corner_angles(k: usize, fixed: &[(usize, f64)], ccw: bool) -> Option<Vec<f64>> {
    let dir = if ccw { 1.0 } else { -1.0 };
    if fixed.is_empty() {
        return Some((0..k).map(|j| dir * TAU * j as f64 / k as f64).collect());
    }
    let mut fixed = fixed.to_vec();
    fixed.sort_by_key(|f| f.0);
    let mut out = vec![0.0; k];
    let mut total = 0.0;
    for (n, &(ia, ta)) in fixed.iter().enumerate() {
        let (ib, tb) = fixed[(n + 1) % fixed.len()];
        let (steps, gap) = if fixed.len() == 1 {
            (k, TAU)
        } else {
            let steps = (ib + k - ia) % k;
            let gap = ((tb - ta) * dir).rem_euclid(TAU);
            if steps == 0 || gap < 1e-9 {
                return None;
            }
            (steps, gap)
        };
        total += gap;
        for s in 0..steps {
            out[(ia + s) % k] = ta + dir * gap * s as f64 / steps as f64;
        }
    }
    ((total - TAU).abs() < 1e-6).then_some(out)
}

struct Builder<'a> {
    shadow: &'a Shadow,
    circles: Vec<Option<CircleGeom>>,
    rings: Vec<RingGeom>,
    ring_of: Vec<Option<usize>>,
    cycles: Vec<Vec<(PolygonId, VertexId)>>,
    queue: VecDeque<PolygonId>,
}

impl<'a> Builder<'a> {
    fn corner_index(&self, v: VertexId, p: PolygonId) -> usize {
        let c = self.shadow.vertex(v).corners.iter().find(|c| c.polygon == p).expect("polygon meets vertex");
        c.index
    }

    fn circle(&self, p: PolygonId) -> &CircleGeom {
        self.circles[p.idx()].as_ref().expect("placed")
    }

    /// Leaving direction and bending of one arc end at its double point.
    fn end_key(&self, e: ArcEnd) -> (Pt, f64) {
        let (p, i) = Layout::side_index(self.shadow, e.arc);
        let c = self.circle(p);
        let (start, sweep) = c.side_span(i);
        let fwd = self.shadow.polygon(p).forward[i];
        // walk parameter at this end, and the walk sense leaving it
        let (w, sense) = match (e.end, fwd) {
            (End::Tail, true) | (End::Head, false) => (0.0, 1.0),
            (End::Head, true) | (End::Tail, false) => (1.0, -1.0),
        };
        let ang = start + c.dir() * sweep * w;
        let s = c.dir() * sense;
        (scale([-ang.sin(), ang.cos()], s), s / (2.0 * c.radius))
    }

    fn rotation_ok(&self, v: VertexId) -> bool {
        let vx = self.shadow.vertex(v);
        let keys: Vec<(Pt, f64)> = vx.rotation.iter().map(|&e| self.end_key(e)).collect();
        let t0 = keys[0].0;
        let mut order: Vec<usize> = (0..4).collect();
        order.sort_by(|&a, &b| {
            let ga = (dot(keys[a].0, t0) < 0.0) as u8;
            let gb = (dot(keys[b].0, t0) < 0.0) as u8;
            ga.cmp(&gb).then(keys[a].1.total_cmp(&keys[b].1))
        });
        let shift = order.iter().position(|&i| i == 0).expect("four ends");
        (0..4).all(|i| order[(shift + i) % 4] == i)
    }

    fn outer_ok(&self) -> bool {
        let (a, side) = self.shadow.outer_mark();
        let lay = self.snapshot();
        let m = lay.arc_point(self.shadow, a, 0.5);
        let t = lay.arc_tangent(self.shadow, a, 0.5);
        let left = [-t[1], t[0]];
        let (p, _) = Layout::side_index(self.shadow, a);
        let h = 1e-3 * self.circle(p).radius;
        let q = add(m, scale(left, if side == Side::Left { h } else { -h }));
        let in_circle = self
            .circles
            .iter()
            .flatten()
            .any(|c| norm(sub(q, c.center)) < c.radius);
        let in_hole = self.rings.iter().any(|r| norm(sub(q, r.center)) < r.radius);
        !in_circle && !in_hole
    }

    fn snapshot(&self) -> Layout {
        Layout {
            circles: self
                .circles
                .iter()
                .map(|c| {
                    c.clone().unwrap_or(CircleGeom {
                        center: [0.0, 0.0],
                        radius: 1.0,
                        ccw: true,
                        corner_angles: Vec::new(),
                    })
                })
                .collect(),
            rings: self.rings.clone(),
        }
    }

    fn try_place(&mut self, p: PolygonId, center: Pt, radius: f64, fixed: &[(usize, f64)], ccw: bool) -> bool {
        let k = self.shadow.polygon(p).corners.len();
        match corner_angles(k, fixed, ccw) {
            Some(corner_angles) => {
                self.circles[p.idx()] = Some(CircleGeom { center, radius, ccw, corner_angles });
                true
            }
            None => false,
        }
    }

    fn place_root(&mut self) -> Result<()> {
        let root = self.shadow.root_polygon();
        if let Some(z) = self.ring_of[root.idx()] {
            return self.place_ring(z, root, None);
        }
        for ccw in [true, false] {
            if self.try_place(root, [0.0, 0.0], 1.0, &[], ccw) && self.outer_ok() {
                self.queue.push_back(root);
                return Ok(());
            }
        }
        Err(ShadowError::Layout("no placement of the outer polygon fits the outer mark".into()))
    }

    fn place_child(&mut self, parent: PolygonId, j: usize) -> Result<()> {
        let pc = self.circle(parent).clone();
        let corner = self.shadow.polygon(parent).corners[j].clone();
        let (q, v) = (corner.neighbor, corner.vertex);
        let x = pc.at(pc.corner_angles[j]);
        let n = scale(sub(x, pc.center), 1.0 / pc.radius);
        let r_parent = pc.radius * child_scale(pc.corner_angles.len());
        if let Some(z) = self.ring_of[q.idx()] {
            return self.place_ring(z, q, Some((v, x, n, r_parent)));
        }
        let jq = self.corner_index(v, q);
        for nested in [false, true] {
            let center = add(x, scale(n, if nested { -r_parent } else { r_parent }));
            let ang = angle_of(sub(x, center));
            for ccw in [true, false] {
                if self.try_place(q, center, r_parent, &[(jq, ang)], ccw) && self.rotation_ok(v) {
                    self.queue.push_back(q);
                    return Ok(());
                }
            }
        }
        self.circles[q.idx()] = None;
        Err(ShadowError::Layout(format!("no tangent placement reproduces the rotation at vertex {}", v.0)))
    }

    fn place_ring(&mut self, z: usize, entry_poly: PolygonId, entry: Option<(VertexId, Pt, Pt, f64)>) -> Result<()> {
        let mut steps = self.cycles[z].clone();
        let m = steps.len();
        if m < 3 {
            return Err(ShadowError::Layout(format!("necklace of length {m} has no ring layout")));
        }
        let at = steps.iter().position(|s| s.0 == entry_poly).expect("entry is a member");
        steps.rotate_left(at);
        if steps.iter().any(|s| self.circles[s.0.idx()].is_some()) {
            return Err(ShadowError::Layout("polygon shared by two necklaces".into()));
        }
        let s = (PI / m as f64).sin();
        let nested_opts: &[bool] = if entry.is_some() { &[false, true] } else { &[false] };
        for &nested in nested_opts {
            for rho in [1.0, -1.0] {
                for ccw0 in [true, false] {
                    let (r, c0, ring_dir) = match entry {
                        Some((_, x, n, r_parent)) => {
                            let r = r_parent / (1.0 + 1.0 / s);
                            let out = if nested { scale(n, -1.0) } else { n };
                            (r, add(x, scale(out, r)), out)
                        }
                        None => (1.0, [0.0, -1.0 / s], [0.0, -1.0]),
                    };
                    let big = r / s;
                    let center = add(c0, scale(ring_dir, big));
                    let beta = angle_of(scale(ring_dir, -1.0));
                    let centers: Vec<Pt> = (0..m)
                        .map(|i| add(center, scale(unit(beta + rho * TAU * i as f64 / m as f64), big)))
                        .collect();
                    if self.try_ring(&steps, &centers, r, ccw0, entry.map(|e| (e.0, e.1))) {
                        self.rings.push(RingGeom {
                            center,
                            radius: big,
                            member_radius: r,
                            members: steps.iter().map(|s| s.0).collect(),
                        });
                        if entry.is_none() && !self.outer_ok() {
                            self.rings.pop();
                        } else {
                            for st in &steps {
                                self.queue.push_back(st.0);
                            }
                            return Ok(());
                        }
                    }
                    for st in &steps {
                        self.circles[st.0.idx()] = None;
                    }
                }
            }
        }
        Err(ShadowError::Layout("no ring placement reproduces the rotation system".into()))
    }

    fn try_ring(
        &mut self,
        steps: &[(PolygonId, VertexId)],
        centers: &[Pt],
        r: f64,
        ccw0: bool,
        entry: Option<(VertexId, Pt)>,
    ) -> bool {
        let m = steps.len();
        for i in 0..m {
            let (p, v_next) = steps[i];
            let v_prev = steps[(i + m - 1) % m].1;
            let c = centers[i];
            let toward = |q: Pt| angle_of(sub(q, c));
            let mut fixed = vec![
                (self.corner_index(v_prev, p), toward(centers[(i + m - 1) % m])),
                (self.corner_index(v_next, p), toward(centers[(i + 1) % m])),
            ];
            if i == 0 {
                if let Some((v, x)) = entry {
                    fixed.push((self.corner_index(v, p), toward(x)));
                }
            }
            let opts: &[bool] = if i == 0 { &[ccw0][..] } else { &[true, false] };
            let placed = opts
                .iter()
                .any(|&ccw| self.try_place(p, c, r, &fixed, ccw) && (i == 0 || self.rotation_ok(v_prev)));
            if !placed {
                return false;
            }
        }
        self.rotation_ok(steps[m - 1].1) && entry.is_none_or(|(v, _)| self.rotation_ok(v))
    }

    fn run(mut self) -> Result<Layout> {
        self.place_root()?;
        while let Some(p) = self.queue.pop_front() {
            for j in 0..self.shadow.polygon(p).corners.len() {
                let q = self.shadow.polygon(p).corners[j].neighbor;
                if self.circles[q.idx()].is_none() {
                    self.place_child(p, j)?;
                }
            }
        }
        for v in self.shadow.vertices() {
            if !self.rotation_ok(v.id) {
                return Err(ShadowError::Layout(format!("layout does not reproduce the rotation at vertex {}", v.id.0)));
            }
        }
        Ok(Layout {
            circles: self.circles.into_iter().map(|c| c.expect("connected")).collect(),
            rings: self.rings,
        })
    }
}

/// Circle layout; `E_LAYOUT` for general shadows.
pub fn layout(shadow: &Shadow) -> Result<Layout> {
    let cls = classify(shadow);
    if cls.kind == Kind::General {
        return Err(ShadowError::Layout(
            cls.reason.unwrap_or_else(|| "general shadows have no circle layout".into()),
        ));
    }
    let mut ring_of = vec![None; shadow.polygon_count()];
    for (z, c) in cls.necklace_cycles.iter().enumerate() {
        for p in c.polygons() {
            if ring_of[p.idx()].is_some() {
                return Err(ShadowError::Layout("polygon shared by two necklaces".into()));
            }
            ring_of[p.idx()] = Some(z);
        }
    }
    Builder {
        shadow,
        circles: vec![None; shadow.polygon_count()],
        rings: Vec::new(),
        ring_of,
        cycles: cls.necklace_cycles.iter().map(|c| c.steps.clone()).collect(),
        queue: VecDeque::new(),
    }
    .run()
}

const OUTLINE_SAMPLES: usize = 256;

/// Domain side of every arc, read off the coordinates: a point just left of
/// the arc midpoint is tested against the polygon outline.
pub fn geometric_domain_sides(shadow: &Shadow, lay: &Layout) -> Vec<Side> {
    shadow
        .arcs()
        .iter()
        .map(|a| {
            let c = &lay.circles[a.polygon.idx()];
            let m = lay.arc_point(shadow, a.id, 0.5);
            let t = lay.arc_tangent(shadow, a.id, 0.5);
            let q = add(m, scale([-t[1], t[0]], 0.02 * c.radius));
            if point_in_polygon(q, &c.outline(OUTLINE_SAMPLES)) {
                Side::Left
            } else {
                Side::Right
            }
        })
        .collect()
}

/// Per polygon and corner: whether the neighbor's center lies inside the
/// polygon outline.
pub fn geometric_nested(shadow: &Shadow, lay: &Layout) -> Vec<Vec<bool>> {
    shadow
        .polygons()
        .iter()
        .map(|p| {
            let outline = lay.circles[p.id.idx()].outline(OUTLINE_SAMPLES);
            p.corners
                .iter()
                .map(|c| point_in_polygon(lay.circles[c.neighbor.idx()].center, &outline))
                .collect()
        })
        .collect()
}

/// Total turning of the traversal polyline, in full turns.
pub fn turning_number(shadow: &Shadow, lay: &Layout) -> i64 {
    let mut pts: Vec<Pt> = Vec::new();
    for &a in shadow.traversal() {
        let mut line = lay.arc_polyline(shadow, a);
        line.pop();
        pts.extend(line);
    }
    let n = pts.len();
    let mut total = 0.0;
    for i in 0..n {
        let d0 = sub(pts[(i + 1) % n], pts[i]);
        let d1 = sub(pts[(i + 2) % n], pts[(i + 1) % n]);
        if norm(d0) == 0.0 || norm(d1) == 0.0 {
            continue;
        }
        let cross = d0[0] * d1[1] - d0[1] * d1[0];
        total += cross.atan2(dot(d0, d1));
    }
    (total / TAU).round() as i64
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

const PX: f64 = 100.0;

fn px(p: Pt) -> (String, String) {
    (num(p[0] * PX), num(-p[1] * PX))
}

/// SVG 1.1 drawing: arcs, necklace annuli, and with a coorientation its
/// arrows and a star per conflicting transition.
pub fn render_svg(shadow: &Shadow, coorientation: Option<&Coorientation>) -> Result<String> {
    let lay = layout(shadow)?;
    let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
    for c in &lay.circles {
        for d in 0..2 {
            lo[d] = lo[d].min(c.center[d] - c.radius);
            hi[d] = hi[d].max(c.center[d] + c.radius);
        }
    }
    let margin = 0.2;
    let (x0, y0) = ((lo[0] - margin) * PX, (-hi[1] - margin) * PX);
    let (w, h) = ((hi[0] - lo[0] + 2.0 * margin) * PX, (hi[1] - lo[1] + 2.0 * margin) * PX);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        num(x0),
        num(y0),
        num(w),
        num(h),
        num(w),
        num(h)
    );
    let _ = writeln!(
        s,
        r##"<defs><marker id="head" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="5" markerHeight="5" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#1f5fbf"/></marker></defs>"##
    );
    for ring in &lay.rings {
        for rr in [ring.radius - ring.member_radius, ring.radius + ring.member_radius] {
            let (cx, cy) = px(ring.center);
            let _ = writeln!(
                s,
                r##"<circle class="annulus" cx="{cx}" cy="{cy}" r="{}" fill="none" stroke="#999999" stroke-width="1"/>"##,
                num(rr * PX)
            );
        }
    }
    for a in shadow.arcs() {
        let pts = lay.arc_polyline(shadow, a.id);
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = px(*p);
            let _ = write!(d, "{}{x},{y}", if i == 0 { "M" } else { " L" });
        }
        let _ = writeln!(
            s,
            r##"<path class="arc" data-arc="{}" data-polygon="{}" d="{d}" fill="none" stroke="#000000" stroke-width="2"/>"##,
            a.id.0, a.polygon.0
        );
    }
    if let Some(c) = coorientation {
        if c.len() != shadow.arc_count() {
            return Err(ShadowError::Schema(format!(
                "coorientation has {} bits for {} sides",
                c.len(),
                shadow.arc_count()
            )));
        }
        for a in shadow.arcs() {
            let bit = c.get(a.id);
            let radius = lay.circles[a.polygon.idx()].radius;
            let m = lay.arc_point(shadow, a.id, 0.5);
            let t = lay.arc_tangent(shadow, a.id, 0.5);
            let left = [-t[1], t[0]];
            let toward = match arc_sign(a.domain_side, bit) {
                Side::Left => left,
                Side::Right => scale(left, -1.0),
            };
            let tip = add(m, scale(toward, 0.25 * radius));
            let (x1, y1) = px(m);
            let (x2, y2) = px(tip);
            let class = if bit == Bit::Inward { "inward" } else { "outward" };
            let _ = writeln!(
                s,
                r##"<line class="{class}" data-arc="{}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#1f5fbf" stroke-width="1.5" marker-end="url(#head)"/>"##,
                a.id.0
            );
        }
        let report = conflicts(shadow, c);
        for &(v, branch) in &report.conflicting_transitions {
            let x = lay.vertex_point(shadow, v);
            let r = shadow
                .vertex(v)
                .corners
                .iter()
                .map(|cr| lay.circles[cr.polygon.idx()].radius)
                .fold(f64::MAX, f64::min);
            let centre = add(x, scale(unit(PI / 2.0 + PI * (branch as f64 - 1.0)), 0.2 * r));
            let mut pts = String::new();
            for j in 0..10 {
                let rad = if j % 2 == 0 { 0.12 * r } else { 0.05 * r };
                let (px_, py_) = px(add(centre, scale(unit(PI / 2.0 + PI * j as f64 / 5.0), rad)));
                let _ = write!(pts, "{}{px_},{py_}", if j == 0 { "" } else { " " });
            }
            let _ = writeln!(
                s,
                r##"<polygon class="conflict" data-vertex="{}" data-branch="{branch}" points="{pts}" fill="#d62728"/>"##,
                v.0
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
