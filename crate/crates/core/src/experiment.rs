//! Batch runs over generated instances, reported as CSV.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blocks::{classify, Kind};
use crate::coorient::Mode;
use crate::error::{Result, ShadowError};
use crate::generate::{generate, GeneratorSpec};
use crate::model::validate_shadow;
use crate::solve::{mu, mu_loc, solve_bruteforce, BRUTE_FORCE_GUARD};

pub const CSV_HEADER: [&str; 8] = ["seed", "n", "sides", "kind", "mu_loc", "mu_necklace", "gap", "wall_ms"];

fn one() -> u64 {
    1
}

fn yes() -> bool {
    true
}

/// One generator spec, run for seeds `seed .. seed + count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentEntry {
    #[serde(flatten)]
    pub spec: GeneratorSpec,
    #[serde(default = "one")]
    pub count: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    #[serde(default)]
    pub instances: Vec<ExperimentEntry>,
    /// Measure wall time per instance; otherwise `wall_ms` is 0.
    #[serde(default)]
    pub timing: bool,
    /// Recheck rows with a positive gap by exhaustive search when small enough.
    #[serde(default = "yes")]
    pub verify: bool,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ShadowError::Schema(e.to_string()))
    }

    fn expand(&self) -> Vec<GeneratorSpec> {
        self.instances
            .iter()
            .flat_map(|e| {
                (0..e.count).map(move |i| GeneratorSpec::new(e.spec.kind.clone(), e.spec.seed.wrapping_add(i)))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub seed: u64,
    pub n: usize,
    pub sides: usize,
    pub kind: Kind,
    pub mu_loc: usize,
    pub mu_necklace: Option<usize>,
    pub gap: Option<usize>,
    pub wall_ms: f64,
}

fn run_one(spec: &GeneratorSpec, timing: bool, verify: bool) -> Result<ExperimentRow> {
    let shadow = validate_shadow(&generate(spec)?)?;
    let kind = classify(&shadow).kind;
    let start = Instant::now();
    let exact = match kind {
        Kind::General => None,
        _ => Some(mu(&shadow)?.value),
    };
    let wall_ms = if timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
    let local = mu_loc(&shadow)?;
    let gap = exact.map(|v| v - local);
    if verify && gap.is_some_and(|g| g > 0) && shadow.arc_count() <= BRUTE_FORCE_GUARD {
        let b_loc = solve_bruteforce(&shadow, Mode::Local)?.value;
        let b_neck = solve_bruteforce(&shadow, Mode::TreeNecklace)?.value;
        if b_loc != local || Some(b_neck) != exact {
            return Err(ShadowError::Spec(format!(
                "seed {}: exhaustive search gives ({b_loc}, {b_neck}), solvers give ({local}, {exact:?})",
                spec.seed
            )));
        }
    }
    Ok(ExperimentRow {
        seed: spec.seed,
        n: shadow.vertex_count(),
        sides: shadow.arc_count(),
        kind,
        mu_loc: local,
        mu_necklace: exact,
        gap,
        wall_ms,
    })
}

/// Rows in spec order. With timing on, instances run one at a time.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ExperimentRow>> {
    let specs = spec.expand();
    if spec.timing {
        specs.iter().map(|g| run_one(g, true, spec.verify)).collect()
    } else {
        specs.par_iter().map(|g| run_one(g, false, spec.verify)).collect()
    }
}

pub fn rows_to_csv(rows: &[ExperimentRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| ShadowError::Spec(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        w.write_record([
            r.seed.to_string(),
            r.n.to_string(),
            r.sides.to_string(),
            format!("{:?}", r.kind),
            r.mu_loc.to_string(),
            opt(r.mu_necklace),
            opt(r.gap),
            format!("{:.3}", r.wall_ms),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| ShadowError::Spec(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii"))
}

pub fn experiment_csv(spec: &ExperimentSpec) -> Result<String> {
    rows_to_csv(&run_experiment(spec)?)
}
