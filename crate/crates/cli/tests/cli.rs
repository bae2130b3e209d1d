use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_kneser");

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn kneser(args: &[&str]) -> Run {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schema")
        .join(format!("{name}.schema.json"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&doc).expect("schema compiles")
}

fn assert_valid(name: &str, text: &str) -> Value {
    let v: Value = serde_json::from_str(text).expect("valid JSON");
    let validator = schema(name);
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{text}");
    v
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn construct_matches_golden_files() {
    for (args, file) in [
        (&["construct", "prop2", "--r", "2"][..], "prop2_r2.txt"),
        (&["construct", "prop2", "--r", "3"][..], "prop2_r3.txt"),
        (&["construct", "fnr", "--n", "7", "--r", "3"][..], "fnr_7_3.txt"),
        (
            &["construct", "complete", "--n", "5", "--k", "2"][..],
            "complete_5_2.txt",
        ),
        (
            &["construct", "prop2", "--r", "2", "--format", "json"][..],
            "prop2_r2.json",
        ),
    ] {
        let run = kneser(args);
        assert_eq!(run.code, 0, "{args:?}: {}", run.stderr);
        assert_eq!(
            run.stdout.as_bytes(),
            std::fs::read(golden(file)).unwrap().as_slice(),
            "{file}"
        );
    }
    assert_valid("set_system", &std::fs::read_to_string(golden("prop2_r2.json")).unwrap());
}

#[test]
fn text_round_trips_through_filter() {
    let run = kneser(&[
        "filter",
        "--s",
        "1",
        "--kind",
        "stable",
        "-i",
        p(&golden("fnr_7_3.txt")),
    ]);
    assert_eq!(run.stdout, std::fs::read_to_string(golden("fnr_7_3.txt")).unwrap());
    let run = kneser(&[
        "filter",
        "--s",
        "3",
        "--kind",
        "stable",
        "-i",
        p(&golden("fnr_7_3.txt")),
    ]);
    assert_eq!(run.stdout, "n 7\n");
    let run = kneser(&[
        "filter",
        "--s",
        "2",
        "--kind",
        "stable",
        "-i",
        p(&golden("prop2_r2.txt")),
    ]);
    assert_eq!(run.stdout, "n 6\n1 3\n1 5\n3 5\n");
}

#[test]
fn exit_code_matrix() {
    let prop2 = golden("prop2_r2.txt");
    let prop3 = golden("prop2_r3.txt");
    let fnr = golden("fnr_7_3.txt");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["--help"], 0),
        (vec!["--version"], 0),
        (vec!["chi", "-i", p(&prop2)], 0),
        (vec!["colorable", "--m", "1", "-i", p(&prop2)], 0),
        (vec!["gap", "weak", "--r", "3", "-i", p(&fnr)], 0),
        (vec!["verify", "prop1", "--r", "2", "--k", "2"], 0),
        (vec!["bogus"], 1),
        (vec!["chi"], 1),
        (vec!["chi", "-i", "/nonexistent/input.txt"], 1),
        (vec!["kneser", "--r", "1", "-i", p(&prop2)], 1),
        (vec!["gap", "frick", "--r", "3", "-i", p(&fnr)], 2),
        (vec!["gap", "frick", "--r", "3", "--input", p(&prop3)], 2),
        (vec!["defect", "--r", "3", "--refute-up-to", "2", "-i", p(&prop3)], 0),
        (vec!["defect", "--r", "2", "--max-defect-size", "1", "-i", p(&prop2)], 3),
        (vec!["chi", "--kneser", "2", "--max-edges", "3", "-i", p(&prop2)], 3),
    ];
    for (args, want) in cases {
        let run = kneser(&args);
        assert_eq!(
            run.code, want,
            "{args:?}\nstdout: {}\nstderr: {}",
            run.stdout, run.stderr
        );
    }
}

#[test]
fn parse_errors_name_the_line() {
    let bad = scratch("bad.txt", "n 4\n1 2\n\n3 x\n");
    let run = kneser(&["chi", "-i", p(&bad)]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("bad.txt:4:"), "{}", run.stderr);

    let missing = scratch("noheader.txt", "# nothing but a comment\n1 2\n");
    let run = kneser(&["chi", "-i", p(&missing)]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("noheader.txt:2:"), "{}", run.stderr);
}

#[test]
fn duplicates_warn_on_stderr() {
    let dup = scratch("dup.txt", "n 3\n1 2\n2 3\n2 1\n");
    let run = kneser(&["construct", "complete", "--n", "3", "--k", "1"]);
    assert_eq!(run.code, 0);
    let run = kneser(&["filter", "--s", "1", "--kind", "stable", "-i", p(&dup)]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, "n 3\n1 2\n2 3\n");
    assert!(
        run.stderr.contains("line 4: duplicate of the member on line 2"),
        "{}",
        run.stderr
    );
}

#[test]
fn json_outputs_match_schemas() {
    let prop2 = golden("prop2_r2.txt");
    let fnr = golden("fnr_7_3.txt");
    let json = |args: &[&str]| {
        let mut all = args.to_vec();
        all.extend(["--format", "json"]);
        let run = kneser(&all);
        assert!(run.code == 0 || run.code == 2, "{args:?}: {}", run.stderr);
        run.stdout
    };
    let v = assert_valid("chi", &json(&["chi", "--kneser", "2", "-i", p(&prop2)]));
    assert_eq!(v["chi"], 3);
    assert_valid("colorable", &json(&["colorable", "--m", "2", "-i", p(&prop2)]));
    let v = assert_valid("colorable", &json(&["colorable", "--m", "1", "-i", p(&prop2)]));
    assert_eq!(v["certificate"], Value::Null);
    let v = assert_valid("defect", &json(&["defect", "--r", "2", "-i", p(&prop2)]));
    assert_eq!(v["cd"], 2);
    assert_eq!(v["removed_labels"], serde_json::json!([1, 3]));
    assert_valid("hypergraph", &json(&["kneser", "--r", "2", "-i", p(&prop2)]));
    let prop3 = golden("prop2_r3.txt");
    let v = assert_valid(
        "defect_bound",
        &json(&["defect", "--r", "3", "--refute-up-to", "2", "-i", p(&prop3)]),
    );
    assert_eq!(v["refuted"], true);
    assert_eq!(v["refuted_total"], 121);
    let v = assert_valid(
        "defect_bound",
        &json(&["defect", "--r", "2", "--refute-up-to", "2", "-i", p(&prop2)]),
    );
    assert_eq!(v["refuted"], false);
    assert_eq!(v["counterwitness_labels"], serde_json::json!([1, 3]));
    let v = assert_valid("gap", &json(&["gap", "frick", "--r", "3", "-i", p(&fnr)]));
    assert_eq!(v["report"]["verdict"], "violated");
    let store = &v["certificates"];
    for key in ["chi_certificate", "cd_certificate"] {
        let k = v["report"][key].as_str().unwrap();
        assert!(store.get(k).is_some(), "{key} missing from the store");
    }
    for claim in [
        vec!["verify", "prop1", "--r", "3", "--k", "1"],
        vec!["verify", "prop2", "--r", "2"],
        vec!["verify", "remark", "--r", "2", "-i", p(&prop2)],
        vec!["verify", "ziegler", "--n", "7", "--k", "2", "--r", "2"],
    ] {
        let v = assert_valid("verify", &json(&claim));
        assert_eq!(v["passed"], true, "{claim:?}");
    }
    let v = assert_valid(
        "scan",
        &json(&[
            "scan",
            "--samples",
            "15",
            "--seed",
            "9",
            "--plant",
            p(&fnr),
            "--plant-r",
            "3",
        ]),
    );
    assert_eq!(v["summary"]["frick_violations"], 1);
    assert_eq!(v["entries"][0]["source"], format!("planted:{}", p(&fnr)));
}

#[test]
fn sidecar_certificate_store() {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let store = dir.join("store.json");
    let run = kneser(&[
        "gap",
        "weak",
        "--r",
        "2",
        "-i",
        p(&golden("prop2_r2.txt")),
        "--format",
        "json",
        "--cert-store",
        p(&store),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = assert_valid("gap", &run.stdout);
    assert!(v.get("certificates").is_none());
    let certs: Value = serde_json::from_str(&std::fs::read_to_string(&store).unwrap()).unwrap();
    assert!(certs.get(v["report"]["cd_certificate"].as_str().unwrap()).is_some());
}

#[test]
fn output_flag_writes_file() {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("out.txt");
    let run = kneser(&["construct", "prop2", "--r", "2", "--output", p(&target)]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.is_empty());
    assert_eq!(
        std::fs::read(&target).unwrap(),
        std::fs::read(golden("prop2_r2.txt")).unwrap()
    );
}

#[test]
fn hypergraph_json_input() {
    let h = scratch(
        "c5.json",
        r#"{"vertex_count":5,"edges":[[0,1],[1,2],[2,3],[3,4],[0,4]]}"#,
    );
    let run = kneser(&["chi", "-i", p(&h), "--format", "json"]);
    let v = assert_valid("chi", &run.stdout);
    assert_eq!(v["chi"], 3);
    let run = kneser(&["defect", "--r", "2", "-i", p(&h), "--format", "json"]);
    let v = assert_valid("defect", &run.stdout);
    assert_eq!(v["cd"], 1);
    assert!(v.get("removed_labels").is_none());
    let run = kneser(&["chi", "--kneser", "2", "-i", p(&h)]);
    assert_eq!(run.code, 1);
}

#[test]
fn cnf_export_is_dimacs() {
    let run = kneser(&["export-cnf", "--m", "2", "-i", p(&golden("prop2_r2.txt"))]);
    assert_eq!(run.code, 0);
    let header = run.stdout.lines().find(|l| l.starts_with("p cnf")).unwrap();
    assert_eq!(header, "p cnf 12 24");
    let clauses = run
        .stdout
        .lines()
        .filter(|l| !l.starts_with('c') && !l.starts_with('p'))
        .count();
    assert_eq!(clauses, 24);
}

#[test]
fn scan_is_deterministic_and_thread_independent() {
    let args = ["scan", "--samples", "25", "--seed", "42", "--format", "json"];
    let a = kneser(&args);
    let b = kneser(&args);
    let mut four = args.to_vec();
    four.extend(["--threads", "4"]);
    let c = kneser(&four);
    assert_eq!(a.code, b.code);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let text = kneser(&["scan", "--samples", "5", "--seed", "42"]);
    assert!(text.stdout.starts_with("index  source"), "{}", text.stdout);
}

#[test]
fn no_timing_in_output() {
    let run = kneser(&["verify", "prop2", "--r", "3", "--format", "json"]);
    assert_eq!(run.code, 0);
    for word in ["elapsed", "seconds", "millis", "duration"] {
        assert!(!run.stdout.contains(word), "{word}");
    }
}

#[test]
fn interchange_formats_match_golden_files() {
    let c62 = scratch("c62.txt", "");
    let run = kneser(&["construct", "complete", "--n", "6", "--k", "2", "--output", p(&c62)]);
    assert_eq!(run.code, 0);
    let run = kneser(&["kneser", "--r", "3", "-i", p(&c62), "--format", "json"]);
    assert_eq!(
        run.stdout,
        std::fs::read_to_string(golden("kneser_c62_r3.json")).unwrap()
    );
    let v = assert_valid("hypergraph", &run.stdout);
    assert_eq!(v["edges"].as_array().unwrap().len(), 15);

    let run = kneser(&["export-cnf", "--m", "2", "-i", p(&golden("prop2_r2.txt"))]);
    assert_eq!(run.stdout, std::fs::read_to_string(golden("prop2_r2_m2.cnf")).unwrap());
}
