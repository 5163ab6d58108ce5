use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use shadowmin::experiment::{experiment_csv, ExperimentSpec};
use shadowmin::gauss::{covering_depth, gauss_obstruction, pt_bounds, rotation_number, TurningProfile};
use shadowmin::solve::mu_loc_solution;
use shadowmin::{
    classify, generate, mu, render_svg, solve_bruteforce, solve_cactus, validate_shadow, verify_certificate,
    CertificateFile, Coorientation, GeneratorSpec, Kind, Mode, Shadow, ShadowError, ShadowFile, Solution, Verdict,
};

const EXIT_VALIDATION: u8 = 1;
const EXIT_GUARD: u8 = 2;
const EXIT_ORACLE: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_INADMISSIBLE: u8 = 5;
const EXIT_HOLONOMY: u8 = 6;

#[derive(Parser)]
#[command(name = "shadowmin", version, about = "Minimal coorientations of plane curve shadows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMode {
    Auto,
    Local,
    Necklace,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CertMode {
    Auto,
    Local,
    Necklace,
}

#[derive(Subcommand)]
enum Command {
    /// Check a shadow file and print its classification.
    Validate {
        shadow: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Minimum conflict count with a witness.
    Solve {
        shadow: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        mode: SolveMode,
        /// Cross-check against exhaustive search.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Verify a coorientation certificate against a budget.
    Certify {
        shadow: PathBuf,
        certificate: PathBuf,
        /// Defaults to the budget stored in the certificate.
        #[arg(long, allow_hyphen_values = true)]
        budget: Option<i64>,
        #[arg(long, value_enum, default_value = "auto")]
        mode: CertMode,
    },
    /// Rotation number, covering depth and Gauss-load bounds.
    Gauss {
        #[command(subcommand)]
        what: GaussCommand,
    },
    /// Draw a shadow as SVG.
    Render {
        shadow: PathBuf,
        /// Draw this coorientation's arrows and conflicts.
        #[arg(long, conflicts_with = "witness")]
        certificate: Option<PathBuf>,
        /// Draw the witness of `solve`.
        #[arg(long)]
        witness: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate an instance from a JSON generator spec (inline or a file).
    Gen {
        spec: String,
        /// Overrides the seed in the spec.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a batch of generated instances and print CSV.
    Experiment {
        spec: PathBuf,
        /// Record wall time per instance.
        #[arg(long)]
        timing: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GaussCommand {
    /// Rotation number of the shadow
    Rot {
        shadow: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Minimum covering depth of a turning profile
    Depth {
        profile: PathBuf,
        /// Use the tangent line instead of the oriented tangent.
        #[arg(long)]
        projectivize: bool,
        #[arg(long)]
        json: bool,
    },
    /// Lower bound and parity of the Gauss load, with an optional obstruction check
    Bounds {
        shadow: PathBuf,
        /// Turning profile asserted to be forced for every realization.
        #[arg(long)]
        evidence: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<ShadowError> for Failure {
    fn from(e: ShadowError) -> Self {
        let code = match e {
            ShadowError::TooLarge(_) => EXIT_GUARD,
            _ => EXIT_VALIDATION,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_VALIDATION,
        message: format!("E_IO: {}: {e}", path.display()),
    })
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure {
            code: EXIT_VALIDATION,
            message: format!("E_IO: {}: {e}", p.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_shadow(path: &Path) -> Result<Shadow, Failure> {
    Ok(validate_shadow(&ShadowFile::from_json(&read(path)?)?)?)
}

fn load_certificate(shadow: &Shadow, path: &Path) -> Result<(Coorientation, Option<i64>), Failure> {
    let cert = CertificateFile::from_json(&read(path)?)?;
    Ok((Coorientation::from_certificate(shadow, &cert)?, cert.budget))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn solution_json(sol: &Solution) -> serde_json::Value {
    json!({
        "value": sol.value,
        "status": sol.status,
        "witness": sol.witness.to_certificate(None).coorientation,
        "conflicting_transitions": sol.conflict_report.conflicting_transitions
            .iter().map(|(v, b)| json!([v.0, b])).collect::<Vec<_>>(),
        "stats": { "nodes": sol.stats.nodes, "states": sol.stats.states },
    })
}

fn cmd_validate(path: &Path, as_json: bool) -> Outcome {
    let shadow = load_shadow(path)?;
    let cls = classify(&shadow);
    if as_json {
        print!(
            "{}",
            pretty(&json!({
                "vertices": shadow.vertex_count(),
                "sides": shadow.arc_count(),
                "polygons": shadow.polygon_count(),
                "kind": cls.kind,
                "cycle_rank": cls.cycle_rank,
            }))
        );
    } else {
        println!(
            "ok: {} double points, {} sides, {} polygons, {:?} (cycle rank {})",
            shadow.vertex_count(),
            shadow.arc_count(),
            shadow.polygon_count(),
            cls.kind,
            cls.cycle_rank
        );
    }
    Ok(0)
}

fn cmd_solve(path: &Path, mode: SolveMode, oracle: bool, as_json: bool) -> Outcome {
    let shadow = load_shadow(path)?;
    let kind = classify(&shadow).kind;
    let (sol, label, brute_mode) = match mode {
        SolveMode::Auto => {
            let m = if kind == Kind::General { Mode::Local } else { Mode::TreeNecklace };
            (mu(&shadow)?, if kind == Kind::General { "mu_loc" } else { "mu" }, m)
        }
        SolveMode::Local => (mu_loc_solution(&shadow)?, "mu_loc", Mode::Local),
        SolveMode::Necklace => (solve_cactus(&shadow)?, "mu", Mode::TreeNecklace),
    };
    let brute = if oracle { Some(solve_bruteforce(&shadow, brute_mode)?.value) } else { None };
    if as_json {
        let mut v = solution_json(&sol);
        if let Some(b) = brute {
            v["oracle"] = json!(b);
        }
        print!("{}", pretty(&v));
    } else {
        println!("{label} = {} ({:?})", sol.value, sol.status);
        let inward: Vec<u32> = sol.witness.inward_arcs().map(|a| a.0).collect();
        println!("inward sides: {inward:?}");
        let conflicts: Vec<String> = sol
            .conflict_report
            .conflicting_transitions
            .iter()
            .map(|(v, b)| format!("v{}/{b}", v.0))
            .collect();
        println!("conflicts: [{}]", conflicts.join(", "));
        if let Some(b) = brute {
            println!("oracle = {b}");
        }
    }
    match brute {
        Some(b) if b != sol.value => Err(Failure {
            code: EXIT_ORACLE,
            message: format!("oracle mismatch: solver {} vs exhaustive {b}", sol.value),
        }),
        _ => Ok(0),
    }
}

fn cmd_certify(shadow_path: &Path, cert_path: &Path, budget: Option<i64>, mode: CertMode) -> Outcome {
    let shadow = load_shadow(shadow_path)?;
    let (c, stored) = load_certificate(&shadow, cert_path)?;
    let budget = budget.or(stored).ok_or_else(|| Failure {
        code: EXIT_VALIDATION,
        message: "E_SCHEMA: no budget given and none stored in the certificate".into(),
    })?;
    let mode = match mode {
        CertMode::Local => Mode::Local,
        CertMode::Necklace => Mode::TreeNecklace,
        CertMode::Auto if classify(&shadow).kind == Kind::General => Mode::Local,
        CertMode::Auto => Mode::TreeNecklace,
    };
    let verdict = verify_certificate(&shadow, &c, budget, mode)?;
    println!("{verdict}");
    Ok(match verdict {
        Verdict::Accept { .. } => 0,
        Verdict::OverBudget { .. } => EXIT_BUDGET,
        Verdict::Inadmissible(_) => EXIT_INADMISSIBLE,
        Verdict::Holonomy { .. } => EXIT_HOLONOMY,
    })
}

fn cmd_gauss(what: GaussCommand) -> Outcome {
    match what {
        GaussCommand::Rot { shadow, json: as_json } => {
            let rot = rotation_number(&load_shadow(&shadow)?)?;
            if as_json {
                print!("{}", pretty(&json!({ "rot": rot })));
            } else {
                println!("rot = {rot}");
            }
        }
        GaussCommand::Depth { profile, projectivize, json: as_json } => {
            let p = TurningProfile::from_json(&read(&profile)?)?;
            let d = covering_depth(&p, projectivize)?;
            if as_json {
                print!("{}", pretty(&json!(d)));
            } else {
                println!("depth = {} (witness angle {:.6})", d.depth, d.witness_angle);
            }
        }
        GaussCommand::Bounds { shadow, evidence, json: as_json } => {
            let s = load_shadow(&shadow)?;
            let report = match evidence {
                Some(path) => {
                    let p = TurningProfile::from_json(&read(&path)?)?;
                    gauss_obstruction(&s, Some(&p))?
                }
                None => gauss_obstruction(&s, None)?,
            };
            if as_json {
                print!("{}", pretty(&json!(report)));
            } else {
                let b = pt_bounds(&s)?;
                println!("rot = {}, pt >= {}, parity {}", b.rot, b.lower, b.parity);
                if let Some(note) = &b.note {
                    println!("note: {note}");
                }
                println!("{}", report.message);
            }
        }
    }
    Ok(0)
}

fn cmd_render(path: &Path, certificate: Option<&Path>, witness: bool, output: Option<&Path>) -> Outcome {
    let shadow = load_shadow(path)?;
    let c = match (certificate, witness) {
        (Some(p), _) => Some(load_certificate(&shadow, p)?.0),
        (None, true) => Some(mu(&shadow)?.witness),
        (None, false) => None,
    };
    emit(&render_svg(&shadow, c.as_ref())?, output)?;
    Ok(0)
}

fn cmd_gen(spec: &str, seed: Option<u64>, output: Option<&Path>) -> Outcome {
    let text = if Path::new(spec).is_file() { read(Path::new(spec))? } else { spec.to_string() };
    let mut g: GeneratorSpec =
        serde_json::from_str(&text).map_err(|e| Failure::from(ShadowError::Spec(e.to_string())))?;
    if let Some(s) = seed {
        g.seed = s;
    }
    emit(&(generate(&g)?.to_json() + "\n"), output)?;
    Ok(0)
}

fn cmd_experiment(path: &Path, timing: bool, output: Option<&Path>) -> Outcome {
    let mut spec = ExperimentSpec::from_json(&read(path)?)?;
    spec.timing |= timing;
    emit(&experiment_csv(&spec)?, output)?;
    Ok(0)
}

fn init_threads() {
    if let Some(n) = std::env::var("SHADOWMIN_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let outcome = match cli.command {
        Command::Validate { shadow, json } => cmd_validate(&shadow, json),
        Command::Solve { shadow, mode, oracle, json } => cmd_solve(&shadow, mode, oracle, json),
        Command::Certify { shadow, certificate, budget, mode } => cmd_certify(&shadow, &certificate, budget, mode),
        Command::Gauss { what } => cmd_gauss(what),
        Command::Render { shadow, certificate, witness, output } => {
            cmd_render(&shadow, certificate.as_deref(), witness, output.as_deref())
        }
        Command::Gen { spec, seed, output } => cmd_gen(&spec, seed, output.as_deref()),
        Command::Experiment { spec, timing, output } => cmd_experiment(&spec, timing, output.as_deref()),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
