use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_shadowmin")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn validate_summarizes() {
    let (code, out, _) = run(&["validate", &fixture("figure8.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ok: 1 double points, 2 sides, 2 polygons, TreeLike"));
    let (_, out, _) = run(&["validate", "--json", &fixture("trefoil.json")]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "TreeNecklace");
    assert_eq!(v["cycle_rank"], 1);
}

#[test]
fn solve_reports_value_and_witness() {
    let (code, out, _) = run(&["solve", &fixture("figure8.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, "mu = 2 (ExactTreeLike)\ninward sides: []\nconflicts: [v0/1, v0/2]\n");
    let (code, out, _) = run(&["solve", "--oracle", &fixture("trefoil.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("mu = 0 (ExactTreeNecklace)"));
    assert!(out.ends_with("oracle = 0\n"));
    let (_, out, _) = run(&["solve", "--mode", "local", &fixture("trefoil.json")]);
    assert!(out.starts_with("mu_loc = 0 (LowerBoundOnly)"));
    let (_, out, _) = run(&["solve", "--json", &fixture("curl.json")]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], 0);
    assert_eq!(v["witness"]["1"], "out");
}

#[test]
fn certify_exit_codes() {
    let cert = fixture("figure8_outward.json");
    let (code, out, _) = run(&["certify", &fixture("figure8.json"), &cert]);
    assert_eq!((code, out.as_str()), (0, "ACCEPT conf=2\n"));
    let (code, out, _) = run(&["certify", &fixture("figure8.json"), &cert, "--budget", "1"]);
    assert_eq!(code, 4);
    assert!(out.starts_with("OVER_BUDGET"));
    let (code, out, _) = run(&["certify", &fixture("curl.json"), &fixture("curl_inner_inward.json")]);
    assert_eq!(code, 5);
    assert!(out.starts_with("INADMISSIBLE"));
}

#[test]
fn errors_carry_codes() {
    let (code, _, err) = run(&["validate", "/nonexistent/shadow.json"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("E_IO"));
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"version": 1}"#).unwrap();
    let (code, _, err) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("E_SCHEMA"));
}

#[test]
fn oversize_exhaustive_search_is_refused() {
    let path = scratch("chain20.json");
    let (code, _, _) = run(&["gen", r#"{"kind": "CurlChain", "m": 20}"#, "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, _, err) = run(&["solve", "--oracle", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.starts_with("E_TOO_LARGE"));
    let (code, out, _) = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("mu = 0"));
}

#[test]
fn gauss_subcommands() {
    assert_eq!(run(&["gauss", "rot", &fixture("curl.json")]).1, "rot = 2\n");
    let (_, out, _) = run(&["gauss", "bounds", &fixture("figure8.json")]);
    assert!(out.starts_with("rot = 0, pt >= 0, parity 0"));
    let prof = scratch("profile.json");
    std::fs::write(&prof, r#"{"breakpoints": [0, 7.283185307179586, -1, "2pi"], "rot": 1}"#).unwrap();
    let (code, out, _) = run(&["gauss", "depth", prof.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("depth = 3"));
}

#[test]
fn render_writes_svg() {
    let (code, out, _) =
        run(&["render", &fixture("figure8.json"), "--certificate", &fixture("figure8_outward.json")]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("class=\"conflict\"").count(), 2);
    let (_, out, _) = run(&["render", &fixture("trefoil.json"), "--witness"]);
    assert_eq!(out.matches("class=\"annulus\"").count(), 2);
}

#[test]
fn gen_is_reproducible() {
    let spec = r#"{"kind": "TreeLikeRandom", "n": 8}"#;
    let a = run(&["gen", spec, "--seed", "1"]).1;
    assert_eq!(a, run(&["gen", spec, "--seed", "1"]).1);
    assert_ne!(a, run(&["gen", spec, "--seed", "2"]).1);
}

#[test]
fn experiment_csv_is_stable() {
    let spec = scratch("experiment.json");
    std::fs::write(&spec, r#"{"instances": [{"kind": "Necklace", "m": 3, "attach": {"curls": 2}, "count": 4}]}"#)
        .unwrap();
    let one = Command::new(env!("CARGO_BIN_EXE_shadowmin"))
        .args(["experiment", spec.to_str().unwrap()])
        .env("SHADOWMIN_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_shadowmin"))
        .args(["experiment", spec.to_str().unwrap()])
        .env("SHADOWMIN_THREADS", "8")
        .output()
        .unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "seed,n,sides,kind,mu_loc,mu_necklace,gap,wall_ms");
    assert_eq!(text.lines().count(), 5);
}
