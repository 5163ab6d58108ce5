//! Rotation number, turning profiles and the covering depth of the Gauss map.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ShadowError};
use crate::model::{Shadow, Side};

/// Coincidence tolerance for angles.
pub const ANGLE_TOL: f64 = 1e-9;

/// Whitney index from the crossing signs, with the base point on the arc
/// carrying the outer mark.
///
/// Walking from the base point, each double point is first met along one
/// transition and later along the other; `s_v` is the crossing sign in that
/// passage order. Then `rot = eps - sum s_v`, where `eps = +1` when the
/// outer face lies on the right of the marked arc (the curve runs
/// counterclockwise there).
pub fn rotation_number(shadow: &Shadow) -> Result<i64> {
    let (outer_arc, outer_side) = shadow.outer_mark();
    let trav = shadow.traversal();
    let start = trav
        .iter()
        .position(|&a| a == outer_arc)
        .ok_or_else(|| ShadowError::NoOuter(format!("outer arc {outer_arc} is not traversed")))?;
    let mut first_seen = vec![None; shadow.vertex_count()];
    let len = trav.len();
    for step in 0..len {
        let a = trav[(start + step) % len];
        if let Some(v) = shadow.arc(a).head {
            let vx = shadow.vertex(v);
            if first_seen[v.idx()].is_none() {
                let j = vx.transitions.iter().position(|t| t.inp == a).expect("validated");
                first_seen[v.idx()] = Some(j);
            }
        }
    }
    let mut sum = 0i64;
    for v in shadow.vertices() {
        let first = first_seen[v.id.idx()].expect("every vertex is passed");
        let s = if first == 0 { v.crossing_sign } else { -v.crossing_sign };
        sum += s as i64;
    }
    let eps = match outer_side {
        Side::Right => 1,
        Side::Left => -1,
    };
    Ok(eps - sum)
}

/// Piecewise monotone tangent angle: interval `i` runs from
/// `breakpoints[i]` to `breakpoints[i + 1]`, and the last breakpoint equals
/// the first plus `2π·rot`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TurningProfile {
    #[serde(deserialize_with = "de_angles")]
    pub breakpoints: Vec<f64>,
    pub rot: i64,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AngleRecord {
    Radians(f64),
    Symbolic(String),
}

/// Parses `"pi"`, `"-3pi/4"`, `"2*pi"`, `"1/3 pi"` and plain numbers.
pub fn parse_angle(text: &str) -> Option<f64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let Some(at) = t.find("pi") else {
        return t.parse().ok();
    };
    let (before, after) = (&t[..at], &t[at + 2..]);
    let ratio = |s: &str| -> Option<f64> {
        match s.split_once('/') {
            Some((a, b)) => Some(a.parse::<f64>().ok()? / b.parse::<f64>().ok()?),
            None => s.parse().ok(),
        }
    };
    let coeff = match before {
        "" | "+" => 1.0,
        "-" => -1.0,
        b => ratio(b)?,
    };
    let div = match after {
        "" => 1.0,
        a => a.strip_prefix('/')?.parse::<f64>().ok()?,
    };
    Some(coeff * PI / div)
}

fn de_angles<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<f64>, D::Error> {
    Vec::<AngleRecord>::deserialize(d)?
        .into_iter()
        .map(|a| match a {
            AngleRecord::Radians(x) => Ok(x),
            AngleRecord::Symbolic(s) => {
                parse_angle(&s).ok_or_else(|| serde::de::Error::custom(format!("bad angle {s:?}")))
            }
        })
        .collect()
}

impl TurningProfile {
    pub fn new(breakpoints: Vec<f64>, rot: i64) -> Result<Self> {
        let p = TurningProfile { breakpoints, rot };
        p.validate()?;
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: TurningProfile = serde_json::from_str(text).map_err(|e| ShadowError::Schema(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let b = &self.breakpoints;
        if b.len() < 2 {
            return Err(ShadowError::Schema("a profile needs at least two breakpoints".into()));
        }
        if b.iter().any(|x| !x.is_finite()) {
            return Err(ShadowError::Schema("breakpoints must be finite".into()));
        }
        if b.iter().all(|&x| (x - b[0]).abs() <= ANGLE_TOL) {
            return Err(ShadowError::Degenerate("all angles coincide".into()));
        }
        let closure = b[0] + TAU * self.rot as f64;
        if (b[b.len() - 1] - closure).abs() > ANGLE_TOL * (1.0 + closure.abs()) {
            return Err(ShadowError::Schema(format!(
                "last breakpoint {} differs from first + 2π·rot = {closure}",
                b[b.len() - 1]
            )));
        }
        let dirs = self.directions();
        if dirs.contains(&0) {
            return Err(ShadowError::Degenerate("an interval has zero length".into()));
        }
        for w in dirs.windows(2) {
            if w[0] == w[1] {
                return Err(ShadowError::Schema(
                    "consecutive intervals must alternate in direction".into(),
                ));
            }
        }
        Ok(())
    }

    fn directions(&self) -> Vec<i8> {
        self.breakpoints
            .windows(2)
            .map(|w| {
                let d = w[1] - w[0];
                if d.abs() <= ANGLE_TOL {
                    0
                } else if d > 0.0 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    pub fn interval_count(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// Direction changes, counted cyclically.
    pub fn fold_count(&self) -> usize {
        let d = self.directions();
        let m = d.len();
        (0..m).filter(|&i| d[i] != d[(i + 1) % m]).count()
    }

    /// Angles doubled: the tangent line instead of the oriented tangent.
    pub fn projectivized(&self) -> TurningProfile {
        TurningProfile {
            breakpoints: self.breakpoints.iter().map(|x| 2.0 * x).collect(),
            rot: 2 * self.rot,
        }
    }

    /// Number of monotone intervals covering `u`, with winding multiplicity.
    pub fn coverage_at(&self, u: f64) -> i64 {
        self.breakpoints
            .windows(2)
            .map(|w| {
                let (lo, hi) = if w[0] < w[1] { (w[0], w[1]) } else { (w[1], w[0]) };
                // integers k with lo < u + 2πk < hi
                let kmin = ((lo - u) / TAU).floor() as i64 + 1;
                let kmax = ((hi - u) / TAU).ceil() as i64 - 1;
                (kmax - kmin + 1).max(0)
            })
            .sum()
    }
}

fn wrap(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Depth {
    pub depth: i64,
    pub witness_angle: f64,
}

/// Minimum covering depth over regular directions, by a sweep over the
/// sectors between critical angles.
pub fn covering_depth(profile: &TurningProfile, projectivize: bool) -> Result<Depth> {
    let owned;
    let p = if projectivize {
        owned = profile.projectivized();
        &owned
    } else {
        profile
    };
    p.validate()?;
    let mut crit: Vec<f64> = p.breakpoints.iter().map(|&x| wrap(x)).collect();
    crit.sort_by(|a, b| a.total_cmp(b));
    let mut uniq: Vec<f64> = Vec::with_capacity(crit.len());
    for c in crit {
        if uniq.last().is_none_or(|&l| c - l > ANGLE_TOL) {
            uniq.push(c);
        }
    }
    if uniq.len() > 1 && uniq[0] + TAU - uniq[uniq.len() - 1] <= ANGLE_TOL {
        uniq.pop();
    }
    let s = uniq.len();
    let index = |x: f64| -> usize {
        let w = wrap(x);
        let i = uniq.partition_point(|&c| c < w - ANGLE_TOL);
        if i == s {
            0
        } else {
            i
        }
    };
    // Sector j runs from uniq[j] to uniq[j + 1] (cyclically).
    let mut base = 0i64;
    let mut diff = vec![0i64; s + 1];
    for w in p.breakpoints.windows(2) {
        let (lo, hi) = if w[0] < w[1] { (w[0], w[1]) } else { (w[1], w[0]) };
        let len = hi - lo;
        let mut full = (len / TAU).floor() as i64;
        let mut rem = len - full as f64 * TAU;
        if rem > TAU - ANGLE_TOL {
            full += 1;
            rem = 0.0;
        }
        base += full;
        if rem > ANGLE_TOL {
            let a = index(lo);
            let b = index(hi);
            if a < b {
                diff[a] += 1;
                diff[b] -= 1;
            } else {
                diff[a] += 1;
                diff[s] -= 1;
                diff[0] += 1;
                diff[b] -= 1;
            }
        }
    }
    let mut best = (i64::MAX, 0usize);
    let mut run = 0;
    for j in 0..s {
        run += diff[j];
        if base + run < best.0 {
            best = (base + run, j);
        }
    }
    let j = best.1;
    let start = uniq[j];
    let end = if j + 1 < s { uniq[j + 1] } else { uniq[0] + TAU };
    Ok(Depth {
        depth: best.0,
        witness_angle: wrap((start + end) / 2.0),
    })
}

/// Dense-sampling reference for [`covering_depth`]: minimum over
/// `samples` equally spaced directions that avoid every breakpoint image.
pub fn sampled_depth(profile: &TurningProfile, samples: usize) -> i64 {
    let crit: Vec<f64> = profile.breakpoints.iter().map(|&x| wrap(x)).collect();
    (0..samples)
        .map(|j| TAU * (j as f64 + 0.5) / samples as f64)
        .filter(|&u| {
            crit.iter().all(|&c| {
                let d = (u - c).abs();
                d.min(TAU - d) > ANGLE_TOL
            })
        })
        .map(|u| profile.coverage_at(u))
        .min()
        .unwrap_or(i64::MAX)
}

/// Random profile with angles on the grid `2π/720`, `rot` in `-3..=3` and
/// up to six folds.
pub fn random_profile(rng: &mut impl Rng) -> TurningProfile {
    const Q: i64 = 720;
    let unit = TAU / Q as f64;
    loop {
        let rot: i64 = rng.gen_range(-3..=3);
        let folds = 2 * rng.gen_range(0..=3usize);
        let theta0: i64 = rng.gen_range(0..Q);
        let target = theta0 + rot * Q;
        let mut pts = vec![theta0];
        if folds == 0 {
            if rot == 0 {
                continue;
            }
            pts.push(target);
        } else {
            let up_first = rng.gen_bool(0.5);
            let mut cur = theta0;
            for i in 0..folds - 1 {
                let up = (i % 2 == 0) == up_first;
                let step = rng.gen_range(1..=2 * Q);
                cur += if up { step } else { -step };
                pts.push(cur);
            }
            // Last interval must keep alternating.
            let last_up = ((folds - 1) % 2 == 0) == up_first;
            if (last_up && target <= cur) || (!last_up && target >= cur) {
                continue;
            }
            pts.push(target);
        }
        let p = TurningProfile {
            breakpoints: pts.into_iter().map(|k| k as f64 * unit).collect(),
            rot,
        };
        if p.validate().is_ok() {
            return p;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PtBounds {
    pub lower: i64,
    pub parity: u8,
    pub rot: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Lower bound and parity of the least Gauss multiplicity.
pub fn pt_bounds(shadow: &Shadow) -> Result<PtBounds> {
    let rot = rotation_number(shadow)?;
    let lower = rot.abs();
    Ok(PtBounds {
        lower,
        parity: (lower % 2) as u8,
        rot,
        note: (lower == 0).then(|| "rot = 0: every direction is met an even number of times; 0 is not excluded".into()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObstructionVerdict {
    /// The supplied profile covers every direction more than |rot| times,
    /// so the shadow has no inflection-free realization.
    PositiveMuImplied,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub verdict: ObstructionVerdict,
    pub bounds: PtBounds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence_depth: Option<i64>,
    pub message: String,
}

/// Applies the implication `pt > |rot| ⟹ μ > 0` to a profile the caller
/// asserts is forced for every realization of the shadow.
pub fn gauss_obstruction(shadow: &Shadow, evidence: Option<&TurningProfile>) -> Result<ObstructionReport> {
    let bounds = pt_bounds(shadow)?;
    let Some(profile) = evidence else {
        return Ok(ObstructionReport {
            verdict: ObstructionVerdict::Inconclusive,
            message: "inconclusive: no profile evidence supplied".into(),
            bounds,
            evidence_depth: None,
        });
    };
    if profile.rot.abs() != bounds.lower {
        return Ok(ObstructionReport {
            verdict: ObstructionVerdict::Inconclusive,
            message: format!(
                "inconclusive: profile has rot {} but the shadow has rot {}",
                profile.rot, bounds.rot
            ),
            bounds,
            evidence_depth: None,
        });
    }
    let d = covering_depth(profile, false)?.depth;
    let (verdict, message) = if d > bounds.lower {
        (
            ObstructionVerdict::PositiveMuImplied,
            format!("mu > 0 implied by supplied evidence: depth {d} > |rot| = {}", bounds.lower),
        )
    } else {
        (
            ObstructionVerdict::Inconclusive,
            format!("inconclusive: depth {d} does not exceed |rot| = {}", bounds.lower),
        )
    };
    Ok(ObstructionReport {
        verdict,
        bounds,
        evidence_depth: Some(d),
        message,
    })
}
