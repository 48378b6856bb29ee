use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvgate"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/golden/");
    format!("{dir}{name}.mvgate")
}

#[test]
fn verify_f1() {
    let out = stdout(&["verify", "--gate", "F1"]);
    assert!(out.contains("self_reversible: true"));
    assert!(out.contains("weakly_conservative: true"));
    assert!(out.contains("strictly_conservative: false"));
}

#[test]
fn verify_from_file_matches_named() {
    let named = stdout(&["verify", "--gate", "FREDKIN"]);
    let file = stdout(&["verify", "--file", &golden("FREDKIN")]);
    assert_eq!(
        named.lines().skip(1).collect::<Vec<_>>(),
        file.lines().skip(1).collect::<Vec<_>>()
    );
}

#[test]
fn landauer_dissipation() {
    assert!(stdout(&["entropy", "--gate", "LANDAUER"]).contains("dE_kT: 0.8240"));
    assert!(stdout(&["entropy", "--gate", "FREDKIN"]).contains("dE_kT: 0.0000"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["verify", "--gate", "nonexistent"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["pin", "--gate", "F1", "--set", "x2=1/3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["search", "--constraints", "F-2"]).status.code(),
        Some(1)
    );
}

#[test]
fn repeat_runs_are_identical() {
    for args in [
        &[
            "search",
            "--d",
            "2",
            "--n",
            "2",
            "--constraints",
            "F-3'",
            "--list",
        ][..],
        &["pin", "--gate", "F2", "--connectives"],
        &["synth", "--connective", "TO_L", "--d", "3"],
        &["--json", "verify", "--gate", "F3", "--violations"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn json_output() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["--json", "verify", "--gate", "F2"])).unwrap();
    assert_eq!(v["report"]["self_reversible"], true);
    assert_eq!(v["report"]["zero_regular"], false);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["--json", "entropy", "--gate", "LANDAUER"])).unwrap();
    assert!((v["dE_kT"].as_f64().unwrap() - 0.824).abs() < 1e-3);
}

#[test]
fn show_round_trips_through_file() {
    let shown = stdout(&["show", "--gate", "F3"]);
    assert_eq!(shown, std::fs::read_to_string(golden("F3")).unwrap());
}

#[test]
fn pin_realizes_to_l() {
    let out = stdout(&["pin", "--gate", "F1", "--set", "x2=1", "--keep", "y3"]);
    assert!(out.contains("1 0 -> 1"));
    assert!(out.contains("2 1 -> 1"));
    assert!(out.contains("0 2 -> 2"));
    assert!(stdout(&["pin", "--gate", "F1", "--connectives"])
        .contains("FAN_OUT\tx1\tx2=2,x3=0\ty1,y2\ty3"));
}

#[test]
fn search_counts() {
    assert!(stdout(&["search"]).contains("gates: 59392"));
    assert!(
        stdout(&["search", "--d", "2", "--n", "2", "--constraints", "F-3'"]).contains("gates: 4")
    );
    assert!(stdout(&["search", "--check", "no-fanout"]).contains("verdict: impossible"));
}

#[test]
fn transform_and() {
    let out = stdout(&["transform", "--gate", "AND"]);
    for line in [
        "permutation: true",
        "conserves_ones: true",
        "recovers_original: true",
    ] {
        assert!(out.contains(line), "{out}");
    }
    let table = stdout(&["transform", "--gate", "AND", "--emit", "conservative"]);
    assert!(table.starts_with("mvgate 1\nd=2 n=5 m=5"));
}

#[test]
fn synth_verifies() {
    let out = stdout(&[
        "synth",
        "--table",
        "0 1 2 1 1 2 2 2 2",
        "--d",
        "3",
        "--n",
        "2",
        "--simplify",
    ]);
    assert_eq!(out.matches("_verified: true").count(), 3);
}

#[test]
fn algebra_commands() {
    assert!(
        stdout(&["algebra", "check", "--signature", "bzw", "--d", "4"])
            .contains("set bzw: 7/7 pass")
    );
    let out = stdout(&[
        "algebra",
        "check",
        "--signature",
        "bzw",
        "--d",
        "3",
        "--set",
        "strong-consecutio",
    ]);
    assert!(out.contains("FAIL"));
    assert!(stdout(&[
        "algebra",
        "rough",
        "--signature",
        "bzmv",
        "--d",
        "3",
        "--x",
        "1/2"
    ])
    .contains("r(1/2) = <0, 1>"));
    let bzmv = stdout(&[
        "algebra",
        "translate",
        "--signature",
        "bzw",
        "--d",
        "3",
        "--direction",
        "bzw-to-bzmv",
    ]);
    assert_eq!(
        bzmv,
        stdout(&["algebra", "show", "--signature", "bzmv", "--d", "3"])
    );
    assert_eq!(
        run(&["algebra", "check", "--signature", "nope", "--d", "3"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn selftest_passes() {
    assert!(stdout(&["selftest"]).contains("selftest: 7/7 checks passed"));
}

#[test]
fn search_flags_and_output_directory() {
    let dir = std::env::temp_dir().join(format!("mvgate-search-{}", std::process::id()));
    let dir_s = dir.to_str().unwrap();
    let out = stdout(&[
        "search",
        "--self-reversible",
        "--weak-conservative",
        "--boolean-fredkin",
        "--limit",
        "2",
        "--out",
        dir_s,
    ]);
    assert!(out.contains("gates: 2"));
    let tsv = std::fs::read_to_string(dir.join("realizations.tsv")).unwrap();
    assert!(tsv.starts_with("gate\tconnective\t"));
    let g = dir.join("gate1.mvgate");
    assert!(stdout(&["verify", "--file", g.to_str().unwrap()]).contains("boolean_fredkin: true"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn synth_from_function_file() {
    let path = std::env::temp_dir().join(format!("mvgate-to-l-{}.mvgate", std::process::id()));
    std::fs::write(
        &path,
        stdout(&["pin", "--gate", "F1", "--set", "x2=1", "--keep", "y3"]),
    )
    .unwrap();
    let out = stdout(&["synth", "--input", path.to_str().unwrap(), "--form", "clay"]);
    assert!(out.contains("clay_verified: true"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn transform_aliases_and_plan() {
    assert_eq!(
        stdout(&["transform", "--gate", "OR", "--conservativize"]),
        stdout(&["transform", "--gate", "OR", "--emit", "conservative"])
    );
    assert!(stdout(&["transform", "--gate", "OR"]).contains("plan: l=1 h=1"));
    assert!(stdout(&["entropy", "--gate", "LANDAUER"]).contains("multiplicities: 1:2 3:2"));
}
