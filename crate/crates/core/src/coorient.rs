//! Admissibility, arc signs, conflicts, holonomy and certificates.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blocks::{classify, cycle_from_vertices, BlockCycle, Kind};
use crate::error::{Result, ShadowError};
use crate::format::{CertificateFile, CoBit};
use crate::model::{ArcId, Bit, Coorientation, Polygon, PolygonId, Shadow, Side, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// A 1-gon is inward.
    OneGonOutward,
    /// A 2-gon has no outward side.
    TwoGonOutwardSide,
    /// An all-inward k-gon holds more than k - 3 nested neighbours.
    NestedBound,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::OneGonOutward => "1-gon must be outward",
            Condition::TwoGonOutwardSide => "2-gon needs an outward side",
            Condition::NestedBound => "all-inward k-gon holds more than k-3 nested neighbours",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub polygon: PolygonId,
    pub condition: Condition,
}

/// Per-polygon admissibility from the number of inward sides.
#[inline]
pub(crate) fn polygon_admissible(k: usize, nested: usize, inward: usize) -> std::result::Result<(), Condition> {
    if inward < k {
        return Ok(());
    }
    match k {
        1 => Err(Condition::OneGonOutward),
        2 => Err(Condition::TwoGonOutwardSide),
        _ if nested + 3 > k => Err(Condition::NestedBound),
        _ => Ok(()),
    }
}

fn check_polygon(p: &Polygon, c: &Coorientation) -> Option<Violation> {
    let inward = p.sides.iter().filter(|&&a| c.get(a) == Bit::Inward).count();
    polygon_admissible(p.k(), p.nested_corner_count(), inward)
        .err()
        .map(|condition| Violation { polygon: p.id, condition })
}

/// First violated condition in polygon order, or `Ok`.
pub fn is_admissible(shadow: &Shadow, c: &Coorientation) -> std::result::Result<(), Violation> {
    debug_assert_eq!(c.len(), shadow.arc_count());
    match shadow.polygons().iter().find_map(|p| check_polygon(p, c)) {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

/// Side of each oriented arc on which the convex side lies.
pub fn arc_signs(shadow: &Shadow, c: &Coorientation) -> Vec<Side> {
    shadow
        .arcs()
        .iter()
        .map(|a| arc_sign(a.domain_side, c.get(a.id)))
        .collect()
}

#[inline]
pub(crate) fn arc_sign(domain_side: Side, bit: Bit) -> Side {
    match bit {
        Bit::Inward => domain_side,
        Bit::Outward => domain_side.opposite(),
    }
}

/// The single conflict predicate: the convex sides disagree across the
/// transition.
#[inline]
pub(crate) fn is_conflict(s_in: Side, s_out: Side) -> bool {
    s_in != s_out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictReport {
    /// `(vertex, branch)` with branch 1 or 2, sorted.
    pub conflicting_transitions: Vec<(VertexId, u8)>,
    pub conf: usize,
    pub per_vertex_parity: Vec<u8>,
}

pub fn conflicts(shadow: &Shadow, c: &Coorientation) -> ConflictReport {
    let s = arc_signs(shadow, c);
    let mut list = Vec::new();
    let mut parity = vec![0u8; shadow.vertex_count()];
    for (v, j, t) in shadow.transitions() {
        if is_conflict(s[t.inp.idx()], s[t.out.idx()]) {
            list.push((v, j as u8 + 1));
            parity[v.idx()] ^= 1;
        }
    }
    ConflictReport {
        conf: list.len(),
        conflicting_transitions: list,
        per_vertex_parity: parity,
    }
}

/// Conflict count only.
pub fn conf(shadow: &Shadow, c: &Coorientation) -> usize {
    let s = arc_signs(shadow, c);
    shadow
        .transitions()
        .filter(|(_, _, t)| is_conflict(s[t.inp.idx()], s[t.out.idx()]))
        .count()
}

/// Holonomy around a block cycle given as its list of double points.
pub fn holonomy(shadow: &Shadow, c: &Coorientation, cycle: &[VertexId]) -> Result<i8> {
    let cyc = cycle_from_vertices(shadow, cycle)?;
    Ok(holonomy_of(&conflicts(shadow, c), &cyc))
}

pub fn holonomy_of(report: &ConflictReport, cycle: &BlockCycle) -> i8 {
    let odd = cycle
        .vertices()
        .fold(0u8, |acc, v| acc ^ report.per_vertex_parity[v.idx()]);
    if odd == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Local,
    TreeNecklace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Accept { conf: usize },
    Inadmissible(Violation),
    Holonomy { cycle: usize },
    OverBudget { conf: usize, budget: i64 },
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        matches!(self, Verdict::Accept { .. })
    }

    pub fn reason(&self) -> &'static str {
        match self {
            Verdict::Accept { .. } => "ACCEPT",
            Verdict::Inadmissible(_) => "INADMISSIBLE",
            Verdict::Holonomy { .. } => "HOLONOMY",
            Verdict::OverBudget { .. } => "OVER_BUDGET",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept { conf } => write!(f, "ACCEPT conf={conf}"),
            Verdict::Inadmissible(v) => write!(f, "INADMISSIBLE polygon {}: {}", v.polygon, v.condition),
            Verdict::Holonomy { cycle } => write!(f, "HOLONOMY necklace cycle {cycle} has holonomy -1"),
            Verdict::OverBudget { conf, budget } => write!(f, "OVER_BUDGET conf={conf} > {budget}"),
        }
    }
}

/// Linear-time check of a coorientation against a budget. In `TreeNecklace`
/// mode the shadow must classify as tree-like or tree-necklace.
pub fn verify_certificate(shadow: &Shadow, c: &Coorientation, budget: i64, mode: Mode) -> Result<Verdict> {
    if c.len() != shadow.arc_count() {
        return Err(ShadowError::Schema(format!(
            "coorientation has {} bits for {} arcs",
            c.len(),
            shadow.arc_count()
        )));
    }
    if let Err(v) = is_admissible(shadow, c) {
        return Ok(Verdict::Inadmissible(v));
    }
    let report = conflicts(shadow, c);
    if mode == Mode::TreeNecklace {
        let cls = classify(shadow);
        if cls.kind == Kind::General {
            return Err(ShadowError::NotNecklace);
        }
        if let Some(i) = cls
            .necklace_cycles
            .iter()
            .position(|z| holonomy_of(&report, z) < 0)
        {
            return Ok(Verdict::Holonomy { cycle: i });
        }
    }
    if report.conf as i64 > budget {
        return Ok(Verdict::OverBudget { conf: report.conf, budget });
    }
    Ok(Verdict::Accept { conf: report.conf })
}

impl Coorientation {
    /// Reads the arc map of a certificate; every arc must be listed.
    pub fn from_certificate(shadow: &Shadow, cert: &CertificateFile) -> Result<Self> {
        let n = shadow.arc_count();
        let mut bits = Vec::with_capacity(n);
        for a in 0..n as u32 {
            let b = cert
                .coorientation
                .get(&a)
                .ok_or_else(|| ShadowError::Schema(format!("certificate misses arc {a}")))?;
            bits.push(match b {
                CoBit::Out => Bit::Outward,
                CoBit::In => Bit::Inward,
            });
        }
        if let Some(&extra) = cert.coorientation.keys().find(|&&a| a as usize >= n) {
            return Err(ShadowError::Schema(format!("certificate names unknown arc {extra}")));
        }
        Ok(Coorientation { bits })
    }

    pub fn to_certificate(&self, budget: Option<i64>) -> CertificateFile {
        let coorientation: BTreeMap<u32, CoBit> = self
            .bits
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let cb = match b {
                    Bit::Outward => CoBit::Out,
                    Bit::Inward => CoBit::In,
                };
                (i as u32, cb)
            })
            .collect();
        CertificateFile { coorientation, budget }
    }

    pub fn inward_arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b == Bit::Inward)
            .map(|(i, _)| ArcId(i as u32))
    }
}
