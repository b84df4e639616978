use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphclosure"))
        .args(args)
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sphclosure-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn so11_orbits_from_bundled_file() {
    let o = run(&["orbits", "-i", "so11_model.json", "--divisor", "d_alpha2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("{2, 4}"));
    assert!(text.contains("{2a2+2a3+2a4+2a5}"));
    assert!(text.contains("{2, 3, 5}"));
}

#[test]
fn cross_check_on_the_nonstrict_example() {
    let o = run(&["bijective", "-i", "ex3.json", "--divisor", "dplus_alpha1", "--cross-check"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bijective"], "no");
    assert_eq!(v["consistent"], true);
    assert_eq!(v["witness_classes"].as_array().unwrap().len(), 2);
}

#[test]
fn closed_form_exit_codes() {
    assert_eq!(code(&run(&["bijective", "-i", "spin7_model.json", "--divisor", "d_alpha2"])), 1);
    assert_eq!(code(&run(&["bijective", "-i", "sp8_model.json", "--divisor", "all"])), 0);
    assert_eq!(code(&run(&["bijective", "-i", "ex3.json", "--divisor", "dplus_alpha1"])), 2);
}

#[test]
fn corpus_replay_passes() {
    let o = run(&["corpus", "--run-all"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&["orbits", "-i", "so11_model.json"])), 64);
    assert_eq!(code(&run(&["render", "-i", "/nonexistent/x.json"])), 66);
    assert_eq!(code(&run(&["orbits", "-i", "so11_model.json", "--divisor", "nope"])), 65);
    let bad = scratch("bad.json", "{\"rootsystem\": 3}");
    assert_eq!(code(&run(&["render", "-i", bad.to_str().unwrap()])), 65);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn validate_reports() {
    let good = scratch(
        "good.json",
        r#"{"rootsystem": [{"kind": "B", "rank": 2}], "sigma": [[1, 1], [0, 2]], "colors": [
            {"id": "d1", "kind": "b", "moved_by": [1]}, {"id": "d2", "kind": "2a", "moved_by": [2]}]}"#,
    );
    let o = run(&["validate", "-i", good.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("strict: true"));
    let wrong = scratch(
        "wrong.json",
        r#"{"rootsystem": [{"kind": "B", "rank": 2}], "sigma": [[1, 1], [0, 2]], "colors": [
            {"id": "d1", "kind": "b", "moved_by": [1]}, {"id": "d2", "kind": "b", "moved_by": [2]}]}"#,
    );
    assert_eq!(code(&run(&["validate", "-i", wrong.to_str().unwrap()])), 1);
}

#[test]
fn quotient_and_distinguished() {
    let o = run(&["distinguished", "-i", "spin7_model.json", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().any(|s| s == &serde_json::json!(["d_alpha2"])));

    let o = run(&["quotient", "-i", "spin7_model.json", "--colors", "d_alpha2"]);
    assert_eq!(code(&o), 0);
    let q: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(q["sp"], serde_json::json!([2]));
    assert_eq!(code(&run(&["quotient", "-i", "spin7_model.json", "--colors", "d_alpha1"])), 65);
}

#[test]
fn render_and_tex() {
    let o = run(&["render", "-i", "so11_model.json"]);
    assert!(stdout(&o).starts_with("B5    o---o---o---o=>=o\n"));
    let o = run(&["orbits", "-i", "ex3.json", "--divisor", "dplus_alpha1", "--format", "tex"]);
    assert!(stdout(&o).starts_with("\\begin{tabular}"));
}
