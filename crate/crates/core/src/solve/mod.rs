//! Minimum conflict count over admissible coorientations.

mod brute;
mod dp;

use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use brute::{solve_bruteforce, BRUTE_FORCE_GUARD};
pub use dp::{solve_cactus, solve_tree_dp, FEEDBACK_GUARD, LOCAL_FEEDBACK_GUARD};

use crate::blocks::{classify, Kind};
use crate::coorient::{conflicts, ConflictReport};
use crate::error::{Result, ShadowError};
use crate::model::{Coorientation, Shadow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    ExactTreeLike,
    ExactTreeNecklace,
    LowerBoundOnly,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: u64,
    pub states: u64,
    #[serde(skip)]
    pub wall: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub value: usize,
    pub witness: Coorientation,
    pub status: Status,
    pub conflict_report: ConflictReport,
    pub stats: Stats,
}

impl Solution {
    pub(crate) fn new(shadow: &Shadow, witness: Coorientation, status: Status, stats: Stats) -> Self {
        let conflict_report = conflicts(shadow, &witness);
        Solution {
            value: conflict_report.conf,
            witness,
            status,
            conflict_report,
            stats,
        }
    }
}

/// Minimum conflict count ignoring holonomy, with a witness.
pub fn mu_loc_solution(shadow: &Shadow) -> Result<Solution> {
    let cls = classify(shadow);
    let mut sol = match cls.kind {
        Kind::TreeLike => return solve_tree_dp(shadow),
        _ if cls.cycle_rank <= LOCAL_FEEDBACK_GUARD => dp::solve_conditioned(shadow, &cls, false)?,
        _ if shadow.arc_count() <= BRUTE_FORCE_GUARD => solve_bruteforce(shadow, crate::coorient::Mode::Local)?,
        _ => {
            return Err(ShadowError::TooLarge(format!(
                "cycle rank {} and {} sides exceed both guards",
                cls.cycle_rank,
                shadow.arc_count()
            )))
        }
    };
    sol.status = Status::LowerBoundOnly;
    Ok(sol)
}

pub fn mu_loc(shadow: &Shadow) -> Result<usize> {
    Ok(mu_loc_solution(shadow)?.value)
}

/// Dispatches on the classification: exact for tree-like and tree-necklace
/// shadows, the local lower bound otherwise.
pub fn mu(shadow: &Shadow) -> Result<Solution> {
    match classify(shadow).kind {
        Kind::TreeLike => solve_tree_dp(shadow),
        Kind::TreeNecklace => solve_cactus(shadow),
        Kind::General => mu_loc_solution(shadow),
    }
}
