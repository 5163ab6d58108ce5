use std::time::Instant;

use rayon::prelude::*;

use super::{Solution, Stats, Status};
use crate::blocks::{classify, Kind};
use crate::coorient::{polygon_admissible, Mode};
use crate::error::{Result, ShadowError};
use crate::model::{Coorientation, Shadow};

/// Largest total side count the exhaustive search accepts.
pub const BRUTE_FORCE_GUARD: usize = 26;

/// High arcs fixed per parallel chunk.
const SPLIT: usize = 6;

struct Tables {
    arcs: usize,
    /// `(in arc, out arc, vertex, domain-side mismatch)` per transition.
    trans: Vec<(usize, usize, usize, u8)>,
    incident: Vec<Vec<usize>>,
    polygon_of: Vec<usize>,
    k: Vec<usize>,
    nested: Vec<usize>,
    cycle_of: Vec<Option<usize>>,
    cycles: usize,
}

#[derive(Clone)]
struct State {
    inward: Vec<usize>,
    bad: usize,
    conflict: Vec<u8>,
    conf: usize,
    cycle_parity: Vec<u8>,
    odd: usize,
}

impl Tables {
    fn new(shadow: &Shadow, track_cycles: bool) -> Result<Self> {
        let arcs = shadow.arc_count();
        let mut incident = vec![Vec::new(); arcs];
        let mut trans = Vec::new();
        for (v, _, t) in shadow.transitions() {
            let d = shadow.arc(t.inp).domain_side.bit() ^ shadow.arc(t.out).domain_side.bit();
            incident[t.inp.idx()].push(trans.len());
            incident[t.out.idx()].push(trans.len());
            trans.push((t.inp.idx(), t.out.idx(), v.idx(), d));
        }
        let (cycle_of, cycles) = if track_cycles {
            let cls = classify(shadow);
            if cls.kind == Kind::General {
                return Err(ShadowError::NotNecklace);
            }
            (cls.cycle_of_vertex(shadow.vertex_count()), cls.necklace_cycles.len())
        } else {
            (vec![None; shadow.vertex_count()], 0)
        };
        Ok(Tables {
            arcs,
            trans,
            incident,
            polygon_of: shadow.arcs().iter().map(|a| a.polygon.idx()).collect(),
            k: shadow.polygons().iter().map(|p| p.k()).collect(),
            nested: shadow.polygons().iter().map(|p| p.nested_corner_count()).collect(),
            cycle_of,
            cycles,
        })
    }

    fn bad(&self, p: usize, inward: usize) -> bool {
        polygon_admissible(self.k[p], self.nested[p], inward).is_err()
    }

    fn state(&self, mask: u64) -> State {
        let inb = |a: usize| (mask >> a & 1) as u8;
        let mut inward = vec![0; self.k.len()];
        for a in 0..self.arcs {
            inward[self.polygon_of[a]] += inb(a) as usize;
        }
        let bad = (0..self.k.len()).filter(|&p| self.bad(p, inward[p])).count();
        let mut cycle_parity = vec![0u8; self.cycles];
        let conflict: Vec<u8> = self
            .trans
            .iter()
            .map(|&(e, f, v, d)| {
                let c = d ^ inb(e) ^ inb(f);
                if let Some(z) = self.cycle_of[v] {
                    cycle_parity[z] ^= c;
                }
                c
            })
            .collect();
        State {
            inward,
            bad,
            conf: conflict.iter().map(|&c| c as usize).sum(),
            conflict,
            odd: cycle_parity.iter().map(|&c| c as usize).sum(),
            cycle_parity,
        }
    }

    fn flip(&self, s: &mut State, a: usize, to_inward: bool) {
        let p = self.polygon_of[a];
        let was = self.bad(p, s.inward[p]);
        if to_inward {
            s.inward[p] += 1;
        } else {
            s.inward[p] -= 1;
        }
        let now = self.bad(p, s.inward[p]);
        if was != now {
            if now {
                s.bad += 1;
            } else {
                s.bad -= 1;
            }
        }
        for &t in &self.incident[a] {
            s.conflict[t] ^= 1;
            if s.conflict[t] == 1 {
                s.conf += 1;
            } else {
                s.conf -= 1;
            }
            if let Some(z) = self.cycle_of[self.trans[t].2] {
                s.cycle_parity[z] ^= 1;
                if s.cycle_parity[z] == 1 {
                    s.odd += 1;
                } else {
                    s.odd -= 1;
                }
            }
        }
    }
}

/// Lexicographic key with arc 0 most significant, outward before inward.
fn lex_key(mask: u64, arcs: usize) -> u64 {
    if arcs == 0 {
        0
    } else {
        mask.reverse_bits() >> (64 - arcs)
    }
}

/// Exhaustive minimum over all coorientations. In `TreeNecklace` mode only
/// cycle-compatible coorientations count. Ties go to the lexicographically
/// smallest witness.
pub fn solve_bruteforce(shadow: &Shadow, mode: Mode) -> Result<Solution> {
    let start = Instant::now();
    let arcs = shadow.arc_count();
    if arcs > BRUTE_FORCE_GUARD {
        return Err(ShadowError::TooLarge(format!(
            "{arcs} sides exceed the exhaustive-search guard of {BRUTE_FORCE_GUARD}"
        )));
    }
    let kind = classify(shadow).kind;
    let tables = Tables::new(shadow, mode == Mode::TreeNecklace)?;
    // The first `hi` arcs are fixed per chunk; the rest run in Gray-code order.
    let hi = arcs.min(SPLIT);
    let lo = arcs - hi;
    let best = (0..1u64 << hi)
        .into_par_iter()
        .filter_map(|chunk| {
            let base = chunk << lo;
            // chunk bit b (from the top) belongs to arc b
            let mut mask = 0u64;
            for b in 0..hi {
                if base >> (arcs - 1 - b) & 1 == 1 {
                    mask |= 1 << b;
                }
            }
            let mut st = tables.state(mask);
            let mut best: Option<(usize, u64)> = None;
            let mut consider = |st: &State, mask: u64| {
                if st.bad == 0 && st.odd == 0 {
                    let cand = (st.conf, lex_key(mask, arcs));
                    if best.is_none_or(|b| cand < b) {
                        best = Some(cand);
                    }
                }
            };
            consider(&st, mask);
            for g in 1..1u64 << lo {
                let a = hi + g.trailing_zeros() as usize;
                mask ^= 1 << a;
                tables.flip(&mut st, a, mask >> a & 1 == 1);
                consider(&st, mask);
            }
            best
        })
        .min();
    let (_, key) = best.ok_or_else(|| {
        ShadowError::Spec("no admissible cycle-compatible coorientation exists".into())
    })?;
    let mask = lex_key(key, arcs);
    let witness = Coorientation::from_inward_mask(arcs, mask);
    let status = match (mode, kind) {
        (_, Kind::TreeLike) => Status::ExactTreeLike,
        (Mode::TreeNecklace, Kind::TreeNecklace) => Status::ExactTreeNecklace,
        _ => Status::LowerBoundOnly,
    };
    let stats = Stats {
        nodes: 1,
        states: 1u64 << arcs,
        wall: start.elapsed(),
    };
    Ok(Solution::new(shadow, witness, status, stats))
}
