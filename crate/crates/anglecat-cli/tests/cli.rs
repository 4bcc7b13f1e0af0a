use std::path::PathBuf;
use std::process::{Command, Output};

fn anglecat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anglecat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../anglecat/data").join(format!("{name}.json"))
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const QUICK: [&str; 6] = ["--universe-bound", "1", "--budget", "4", "--derive-instances", "4"];

#[test]
fn validate_builtin_files() {
    for name in ["a3-cluster-2ct", "stable-kx2"] {
        let o = anglecat(&["validate", data(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("VALID"));
    }
}

#[test]
fn truncated_file_is_an_input_error_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("a3-cluster-2ct")).unwrap();
    let f = write(&dir, "cut.json", &text[..200]);
    let o = anglecat(&["validate", &f]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line ") && err.contains("column "), "{err}");
}

#[test]
fn mutated_constant_fails_with_named_axiom() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("stable-kx2")).unwrap();
    let bad = text.replace(
        "{\"src\":1,\"mid\":1,\"dst\":1,\"f\":1,\"g\":1,\"gf\":1,\"value\":\"1\"}",
        "{\"src\":1,\"mid\":1,\"dst\":1,\"f\":1,\"g\":1,\"gf\":1,\"value\":\"2\"}",
    );
    let f = write(&dir, "bad.json", &bad);
    let o = anglecat(&["validate", &f]);
    assert_eq!(o.status.code(), Some(1));
    let mut args = vec!["axioms", f.as_str()];
    args.extend(QUICK);
    let o = anglecat(&args);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL") && stdout(&o).contains("associativity"), "{}", stdout(&o));
}

#[test]
fn subcategory_without_finite_witness_fails() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("a3-cluster-2ct")).unwrap();
    let f = write(&dir, "x.json", &text.replace("\"subcategory\": [0,2]", "\"subcategory\": [0]"));
    let mut args = vec!["axioms", f.as_str()];
    args.extend(QUICK);
    let o = anglecat(&args);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("outside the subcategory"));
}

#[test]
fn unknown_builtin_is_an_input_error() {
    assert_eq!(anglecat(&["axioms", "builtin:e8"]).status.code(), Some(2));
}

#[test]
fn quick_axioms_pass_on_builtins() {
    for name in ["builtin:a3-cluster-2ct", "builtin:stable-kx2"] {
        let mut args = vec!["axioms", name];
        args.extend(QUICK);
        let o = anglecat(&args);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).lines().last().unwrap().starts_with("PASS"));
    }
}

#[test]
fn json_report_is_deterministic() {
    let mut args = vec!["report", "builtin:stable-kx2", "--format", "json", "--seed", "3"];
    args.extend(QUICK);
    let a = stdout(&anglecat(&args));
    let b = stdout(&anglecat(&args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let r = &v["records"][0];
    for key in ["key", "axiom", "verdict", "digest"] {
        assert!(r.get(key).is_some(), "{key}");
    }
}

#[test]
fn identity_ladder_cone_shows_identity_blocks() {
    let o = anglecat(&["cone", "builtin:stable-kx2", "--ladder", "k->k:id"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let cone = out.split("cone\n").nth(1).unwrap();
    assert!(cone.contains("map 0: 2k -> k+L  [[1, 1], [0, 0]]"), "{out}");
}

#[test]
fn angle_and_octahedron_print_members() {
    let o = anglecat(&["angle", "builtin:stable-kx2", "--morphism", "k->L:1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("verdict MEMBER\n"));
    let o = anglecat(&["octahedron", "builtin:a3-cluster-2ct", "--input", "P1->P1:id | P1->P1:id"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("  beta: ") && out.contains("alpha: none"), "{out}");
}

#[test]
fn bad_morphism_spec_is_an_input_error() {
    let o = anglecat(&["angle", "builtin:stable-kx2", "--morphism", "k->Q:1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = anglecat(&["angle", "builtin:stable-kx2", "--morphism", "L->L:1"]);
    assert_eq!(o.status.code(), Some(2));
}
