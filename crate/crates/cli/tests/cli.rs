use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clarke-mirror"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hlly_over_all_sixteen_polygons() {
    let o = run(&["verify", "hlly", "--dim", "1", "--polygons", "all16"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.ends_with("PASS")).count(), 16);
    assert!(out.contains("16 of 16 cases pass"));
}

#[test]
fn hlly_with_segment_and_unsupported_dimension() {
    let o = run(&["verify", "hlly", "--polygons", "R3.1,R9.1", "--segment"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("segment"));
    assert_eq!(
        run(&["verify", "hlly", "--dim", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "hlly", "--polygons", "R99.1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn cdual_p1_table() {
    let o = run(&["verify", "cdual", "--example", "p1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("box element ages: 1/2"));
    assert!(out.trim_end().ends_with("PASS"));
}

#[test]
fn reflexive_polar_and_exit_codes() {
    let square = scratch(
        "square.json",
        r#"{"vertices": [[1,1],[1,-1],[-1,1],[-1,-1]]}"#,
    );
    let o = run(&["reflexive", square.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "true"));

    let tri = scratch("tri.json", r#"{"vertices": [[2,0],[0,1],[-1,-1]]}"#);
    let o = run(&["reflexive", tri.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(2), "false"));

    let bad = scratch("bad.json", r#"{"vertices": [[1,0],"#);
    assert_eq!(
        run(&["reflexive", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );

    let off = scratch("off.json", r#"{"vertices": [[0,0],[1,0],[0,1]]}"#);
    assert_eq!(
        run(&["polar", off.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn emitted_json_reloads() {
    let square = scratch(
        "square2.json",
        r#"{"vertices": [[1,1],[1,-1],[-1,1],[-1,-1]]}"#,
    );
    let emitted = scratch("polar.json", "");
    let o = run(&[
        "polar",
        square.to_str().unwrap(),
        "--emit",
        emitted.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&emitted).unwrap();
    assert_eq!(text, stdout(&o));
    let o = run(&["polar", emitted.to_str().unwrap(), "--format", "json"]);
    let back: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let original: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&square).unwrap()).unwrap();
    let mut a: Vec<_> = back["vertices"].as_array().unwrap().clone();
    let mut b: Vec<_> = original["vertices"].as_array().unwrap().clone();
    a.sort_by_key(|v| v.to_string());
    b.sort_by_key(|v| v.to_string());
    assert_eq!(a, b);
}

#[test]
fn clarke_check_cases() {
    let pair: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixtures().join("p1_pair.json")).unwrap())
            .unwrap();
    let o = run(&[
        "clarke-check",
        fixtures().join("p1_pair.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));

    let mut sigma = pair["sigma"].clone();
    sigma.as_object_mut().unwrap().remove("beta");
    let s = scratch("sigma_plain.json", &sigma.to_string());
    let c = scratch("sigma_check.json", &pair["sigma_check"].to_string());
    let o = run(&["clarke-check", s.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("convexity"));

    let mut same = pair["sigma_check"].clone();
    same["lattice"] = serde_json::json!("N");
    let n = scratch("sigma_check_n.json", &same.to_string());
    let s = scratch("sigma_stack.json", &pair["sigma"].to_string());
    let o = run(&["clarke-check", s.to_str().unwrap(), n.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn box_and_orbifold_hodge() {
    let pair: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixtures().join("p1_pair.json")).unwrap())
            .unwrap();
    let s = scratch("sigma_box.json", &pair["sigma"].to_string());
    let o = run(&["box", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("age 1/2"));
    let d = scratch("p1_diamond.json", r#"{"entries": [[0,0,1],[2,2,1]]}"#);
    let o = run(&[
        "orbifold-hodge",
        s.to_str().unwrap(),
        "--untwisted",
        d.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);
}

#[test]
fn nef_dual_and_lg_hodge() {
    let sq = fixtures().join("square_k2.json");
    let o = run(&["nef-dual", sq.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Minkowski check"));
    let seg = fixtures().join("segment_k1.json");
    let o = run(&[
        "lg-hodge",
        seg.to_str().unwrap(),
        "--j",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    // surfaces are only available through Euler characteristics
    let o = run(&["lg-hodge", sq.to_str().unwrap(), "--j", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["lg-hodge", sq.to_str().unwrap(), "--j", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn spectrum_of_t_to_the_k() {
    let o = run(&["spectrum", "--points", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let levels: Vec<&str> = v["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["lambda"].as_str().unwrap())
        .collect();
    assert_eq!(levels, ["1/4", "1/2", "3/4"]);
    assert_eq!(v["total"], 3);
}

#[test]
fn spectrum_oracle_with_seeds() {
    for seed in ["3", "11"] {
        let o = run(&[
            "spectrum",
            "--points",
            "1,0;0,1;-1,-1",
            "--oracle",
            "--seed",
            seed,
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("histogram agrees"));
    }
    assert_eq!(run(&["spectrum", "--points", "1,x"]).status.code(), Some(1));
}

#[test]
fn ledger_suite_reports_the_gap_beyond_four_parts() {
    let o = run(&["verify", "ledger", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "ledger", "--k", "6"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert_eq!(
        out.lines()
            .filter(|l| l.starts_with("binomial") && l.ends_with("PASS"))
            .count(),
        5
    );
    assert!(out.contains("B_{5,0,0}+B_{0,5,0}") && out.contains("FAIL"));
}

#[test]
fn mirror_derive_emits_certificates() {
    let path = scratch("cert.json", "");
    let o = run(&[
        "mirror",
        "derive",
        "--k",
        "3",
        "--emit",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["attempts"].as_array().unwrap().len(), 6);
}

#[test]
fn transition_and_toric_mirror_suites() {
    let o = run(&["verify", "transition", "--limit", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8 passed, 0 failed"));
    assert_eq!(run(&["verify", "toricmirror"]).status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "transition", "--limit", "5", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["mirror", "derive", "--k", "4", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn fixture_directory_override() {
    let empty = Path::new(env!("CARGO_TARGET_TMPDIR")).join("no-fixtures");
    std::fs::create_dir_all(&empty).unwrap();
    let o = bin()
        .args(["verify", "hlly"])
        .env("CLARKE_MIRROR_FIXTURES", &empty)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = bin()
        .args(["verify", "hlly"])
        .env("CLARKE_MIRROR_FIXTURES", fixtures())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
