use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn rodier(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rodier"))
        .args(args)
        .env("RODIER_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_spec(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn decompose_json(cache: &Path, spec: &Path) -> Value {
    let o = rodier(cache, &["decompose", spec.to_str().unwrap(), "--no-timing"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn every_golden_spec_matches_its_expected_output() {
    let cache = tempfile::tempdir().unwrap();
    let mut n = 0;
    for entry in std::fs::read_dir(golden().join("specs")).unwrap() {
        let spec = entry.unwrap().path();
        let name = spec.file_stem().unwrap().to_str().unwrap().to_string();
        let o = rodier(cache.path(), &["decompose", spec.to_str().unwrap(), "--no-timing"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        let expected = std::fs::read_to_string(golden().join("expected").join(format!("{name}.json"))).unwrap();
        assert_eq!(stdout(&o), expected, "{name}");
        n += 1;
    }
    assert_eq!(n, 10);
}

#[test]
fn text_and_dot_goldens() {
    let cache = tempfile::tempdir().unwrap();
    let spec = golden().join("specs/d6_gl2_gl4.json");
    for (format, ext) in [("text", "txt"), ("dot", "dot")] {
        let o = rodier(
            cache.path(),
            &["decompose", spec.to_str().unwrap(), "--format", format, "--no-timing"],
        );
        assert_eq!(o.status.code(), Some(0));
        let expected = std::fs::read_to_string(golden().join(format!("expected/d6_gl2_gl4.{ext}"))).unwrap();
        assert_eq!(stdout(&o), expected, "{format}");
    }
}

#[test]
fn one_wall_in_a1_gives_two_constituents() {
    let dir = tempfile::tempdir().unwrap();
    let r = decompose_json(dir.path(), &golden().join("specs/a1_wall.json"));
    let d = &r["decomposition"];
    assert_eq!(d["length"], 2);
    assert_eq!(d["constituents"].as_array().unwrap().len(), 2);
    assert_eq!(d["constituents"][0]["sign_vector"], "+");
    assert_eq!(d["constituents"][0]["aubert_dual"], 1);
    // The identity has the empty reduced word and is in Γ₊.
    assert_eq!(d["constituents"][0]["jacquet"], serde_json::json!([[]]));
    assert_eq!(d["constituents"][1]["jacquet"], serde_json::json!([[0]]));
}

#[test]
fn no_walls_means_irreducible() {
    let dir = tempfile::tempdir().unwrap();
    let r = decompose_json(dir.path(), &golden().join("specs/a1_irreducible.json"));
    assert_eq!(r["decomposition"]["irreducible"], true);
    assert_eq!(r["decomposition"]["length"], 1);
}

#[test]
fn timing_is_present_unless_disabled() {
    let dir = tempfile::tempdir().unwrap();
    let spec = golden().join("specs/a1_wall.json");
    let o = rodier(dir.path(), &["decompose", spec.to_str().unwrap()]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r["timing"]["elapsed_ms"].is_number());
    let r = decompose_json(dir.path(), &spec);
    assert!(r.get("timing").is_none());
}

#[test]
fn input_is_echoed_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["d6_gl2_gl4", "b2_simple_walls"] {
        let spec = golden().join(format!("specs/{name}.json"));
        let r = decompose_json(dir.path(), &spec);
        let echoed = write_spec(dir.path(), "echo.json", &r["input"].to_string());
        let again = decompose_json(dir.path(), &echoed);
        assert_eq!(r, again, "{name}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cases = [
        // Malformed or invalid specs: exit 2.
        ("unknown_field", r#"{"schema":1,"cartan":"A1","levi":[],"inducing":{"S":[]},"assume_regular":true,"extra":1}"#, 2),
        ("bad_schema", r#"{"schema":7,"cartan":"A1","levi":[],"inducing":{"S":[]},"assume_regular":true}"#, 2),
        ("bad_type", r#"{"schema":1,"cartan":"Q2","levi":[],"inducing":{"S":[]},"assume_regular":true}"#, 2),
        ("bad_rank", r#"{"schema":1,"cartan":"F5","levi":[],"inducing":{"S":[]},"assume_regular":true}"#, 2),
        ("bad_levi", r#"{"schema":1,"cartan":"A2","levi":[5],"inducing":{"S":[]},"assume_regular":true}"#, 2),
        ("not_regular", r#"{"schema":1,"cartan":"A1","levi":[],"inducing":{"S":[]},"assume_regular":false}"#, 2),
        ("not_a_wall", r#"{"schema":1,"cartan":"A1","levi":[],"inducing":{"S":[["1/1"]]},"assume_regular":true}"#, 2),
        ("not_dominant", r#"{"schema":1,"cartan":"A1","levi":[],"inducing":{"omega":["-1/1"],"poles":{"orbit0":"1/1"}},"assume_regular":true}"#, 2),
        ("no_orbit", r#"{"schema":1,"cartan":"A1","levi":[],"inducing":{"omega":["1/1"],"poles":{"orbit3":"1/1"}},"assume_regular":true}"#, 2),
        ("omega_dim", r#"{"schema":1,"cartan":"A2","levi":[],"inducing":{"omega":["1/1"],"poles":{}},"assume_regular":true}"#, 2),
        // Over the enumeration cap: exit 3.
        ("too_big", r#"{"schema":1,"cartan":"E8","levi":[],"inducing":{"S":[]},"assume_regular":true}"#, 3),
        ("fine", r#"{"schema":1,"cartan":"A1","levi":[],"inducing":{"S":[]},"assume_regular":true}"#, 0),
    ];
    for (name, text, code) in cases {
        let spec = write_spec(d, &format!("{name}.json"), text);
        let o = rodier(d, &["decompose", spec.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(code), "{name}: {}", stderr(&o));
        if code != 0 {
            assert!(stderr(&o).starts_with("error: "), "{name}");
            assert!(stdout(&o).is_empty(), "{name}");
        }
    }
    let o = rodier(d, &["decompose", d.join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn error_messages_name_the_violated_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "s.json",
        r#"{"schema":1,"cartan":"A1","levi":[],"inducing":{"omega":["-1/1"],"poles":{"orbit0":"1/1"}},"assume_regular":true}"#,
    );
    let o = rodier(dir.path(), &["decompose", spec.to_str().unwrap()]);
    assert!(stderr(&o).contains("not dominant"), "{}", stderr(&o));
}

#[test]
fn verify_rank_one_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = rodier(dir.path(), &["verify", "--max-rank", "1", "--trials", "200", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["types"], serde_json::json!(["A1"]));
    assert_eq!(r["totals"]["levis"], 2);
    assert_eq!(r["totals"]["violations"], 0);
    assert_eq!(r["passed"], true);
    assert!(r["first_counterexample"].is_null());
    let again = rodier(dir.path(), &["verify", "--max-rank", "1", "--trials", "200", "--no-timing"]);
    assert_eq!(stdout(&o), stdout(&again));
}

#[test]
fn verify_d_family_contains_both_worked_levis() {
    let dir = tempfile::tempdir().unwrap();
    let o = rodier(
        dir.path(),
        &["verify", "--max-rank", "6", "--families", "D", "--trials", "50", "--no-timing"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["types"], serde_json::json!(["D4", "D5", "D6"]));
    let levis = r["levis"].as_array().unwrap();
    assert_eq!(levis.len(), 16 + 32 + 64);
    let has = |t: &str, theta: Value| levis.iter().any(|l| l["type"] == t && l["theta"] == theta);
    assert!(has("D4", serde_json::json!([1, 2])));
    assert!(has("D6", serde_json::json!([0, 2, 3, 4])));
}

#[test]
fn verify_rejects_bad_families_and_oversized_sweeps() {
    let dir = tempfile::tempdir().unwrap();
    let o = rodier(dir.path(), &["verify", "--families", "Z"]);
    assert_eq!(o.status.code(), Some(2));
    let o = rodier(dir.path(), &["verify", "--max-rank", "7", "--families", "B", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("cache");
    let o = rodier(&d, &["cache", "--clear"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("removed 0"));

    let o = rodier(&d, &["cache", "--rebuild", "A1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("A1: 2 elements"), "{}", stdout(&o));

    let o = rodier(&d, &["cache", "--rebuild", "F4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = rodier(&d, &["cache", "--stat"]);
    let text = stdout(&o);
    let f4 = text.lines().find(|l| l.starts_with("F4")).expect("F4 listed");
    assert!(f4.contains(" 1152 elements"), "{f4}");
    assert!(f4.ends_with("ok"));

    // A corrupted file is reported, ignored and replaced.
    let path = d.join("F4.weyl");
    let mut bytes = std::fs::read(&path).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0xff;
    std::fs::write(&path, &bytes).unwrap();
    let o = rodier(&d, &["cache", "--stat"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("F4") && l.ends_with("corrupt")));
    let spec = write_spec(
        dir.path(),
        "f4.json",
        r#"{"schema":1,"cartan":"F4","levi":[0,1,2,3],"inducing":{"S":[]},"assume_regular":true}"#,
    );
    let o = rodier(&d, &["decompose", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("regenerating"));
    let o = rodier(&d, &["cache", "--stat"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("F4") && l.ends_with("ok")));

    let o = rodier(&d, &["cache", "--clear"]);
    assert!(stdout(&o).contains("removed 2"));
    let o = rodier(&d, &["cache", "--rebuild", "E8"]);
    assert_eq!(o.status.code(), Some(3));
    let o = rodier(&d, &["cache"]);
    assert_eq!(o.status.code(), Some(2));
}
