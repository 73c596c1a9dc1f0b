//! End-to-end tests of the binary: exit codes, output shapes, file
//! round-trips, fixture loading, and render determinism.

use std::path::Path;
use std::process::{Command, Output};

fn crosscap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crosscap"))
        .args(args)
        .env_remove("CROSSCAP_FIXTURES")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn relations_verify_over_the_checked_range() {
    let out = crosscap(&["relations", "verify", "--genus", "7..12"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("all relation shadows hold"));
}

#[test]
fn relations_verify_small_genus_warns_but_passes() {
    let out = crosscap(&["relations", "verify", "--genus", "6"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("warning"), "{text}");
    assert!(text.contains("lantern relation omitted"), "{text}");
}

#[test]
fn relations_verify_rejects_out_of_range_genus() {
    let out = crosscap(&["relations", "verify", "--genus", "1..5"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unsupported-genus"));
    let out = crosscap(&["relations", "verify", "--genus", "65"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn tampered_fixture_file_is_rejected_at_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixtures.txt");
    std::fs::write(&path, "3,4 | 2,3 | disjoint | forged claim\n").unwrap();
    let out =
        crosscap(&["relations", "verify", "--genus", "7", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("invalid-fixture"), "{}", stderr(&out));
}

#[test]
fn fixture_path_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixtures.txt");
    std::fs::write(&path, "3,4 | 3 | disjoint | forged\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_crosscap"))
        .args(["relations", "verify", "--genus", "7"])
        .env("CROSSCAP_FIXTURES", &path)
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("invalid-fixture"));
}

#[test]
fn lemma_certificate_roundtrip_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = crosscap(&["cert", "lemma-a1", "--genus", "7", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("lemma-a1: accepted"), "{text}");
    assert!(text.contains("lantern-config"), "{text}");
    assert!(Path::new(&path).exists());

    let out = crosscap(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("accepted"));
}

#[test]
fn verify_rejects_a_tampered_certificate_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = crosscap(&["cert", "lemma-a1", "--genus", "7", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    // Corrupt one rewrite: swap a u4 letter in some step's after-word.
    let text = std::fs::read_to_string(&path).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let steps = value["steps"].as_array_mut().unwrap();
    let after = steps[41]["after"].as_str().unwrap().to_string();
    steps[41]["after"] = serde_json::Value::String(after.replacen("u4", "u5", 1));
    std::fs::write(&path, serde_json::to_string(&value).unwrap()).unwrap();

    let out = crosscap(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("rejected"));
}

#[test]
fn fixture_files_drive_certificate_verification_end_to_end() {
    use crosscap_core::surface::FixtureTable;
    let dir = tempfile::tempdir().unwrap();
    let cert_path = dir.path().join("cert.json");
    let full_path = dir.path().join("full.txt");
    let reduced_path = dir.path().join("reduced.txt");

    let full = FixtureTable::builtin(7);
    std::fs::write(&full_path, full.to_file_format()).unwrap();
    let mut reduced = FixtureTable::builtin(7);
    // Drop a load-bearing pair: alpha3 vs mu2, behind commute(a3,u1).
    reduced.remove(&[3, 4], &[2]).unwrap();
    std::fs::write(&reduced_path, reduced.to_file_format()).unwrap();

    // The complete file replaces the built-in table transparently.
    let out = crosscap(&[
        "cert",
        "lemma-a1",
        "--genus",
        "7",
        "--fixtures",
        full_path.to_str().unwrap(),
        "-o",
        cert_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    // Replay against the reduced table rejects the stored certificate.
    let out = crosscap(&[
        "verify",
        cert_path.to_str().unwrap(),
        "--fixtures",
        reduced_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("rejected"));

    // And the builder itself cannot derive the commutation any more.
    let out = crosscap(&[
        "cert",
        "lemma-a1",
        "--genus",
        "7",
        "--fixtures",
        reduced_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("invalid-certificate"), "{}", stderr(&out));
}

#[test]
fn abelianize_accepts_a_relator_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("relators.txt");
    std::fs::write(&path, "u1 u2^-1\nu4 v^-1\n# comment line\n").unwrap();
    let out = crosscap(&[
        "abelianize",
        "--genus",
        "7",
        "--relators",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["free_rank"], serde_json::json!(12));
    assert_eq!(value["cyclic"], serde_json::Value::Bool(false));
}

#[test]
fn verify_unparseable_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = crosscap(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("parse-error"));
}

#[test]
fn theorem_bundle_builds_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bundle.json");
    let out = crosscap(&[
        "cert",
        "theorem2",
        "--genus",
        "7",
        "--boundary",
        "1",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("axiom:twist-transposition-generation"), "{text}");
    for name in ["a1", "a6", "b", "u6"] {
        assert!(text.contains(&format!("{name}: accepted")), "{name} in {text}");
    }
    let out = crosscap(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
}

#[test]
fn theorem_bundle_rejects_two_boundary_components() {
    let out = crosscap(&["cert", "theorem2", "--genus", "7", "--boundary", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unsupported-boundary"));
}

#[test]
fn certificates_need_genus_seven() {
    for kind in ["lemma-a1", "theorem2", "normal-gen"] {
        let out = crosscap(&["cert", kind, "--genus", "6"]);
        assert_eq!(code(&out), 2, "{kind}");
        assert!(stderr(&out).contains("unsupported-genus"), "{kind}");
    }
}

#[test]
fn normal_generation_reports_the_factor_structure() {
    let out = crosscap(&["cert", "normal-gen", "--genus", "7"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("conjugates of u1"), "{text}");
    assert!(text.contains("structural pattern holds: true"), "{text}");
    assert!(text.contains("axiom:a1-u1-normal-generation"), "{text}");
}

#[test]
fn mapping_table_check_reports_the_split() {
    let out = crosscap(&["mapping-table", "check", "--genus", "7"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("core claims: 7 pass, 1 flagged"), "{text}");
    assert!(text.contains("homology-consistent as u6 u5"), "{text}");
    assert!(text.contains("[pass]    u4 u5 u3 u4: {1,2,5,6} -> {1,2,3,4}"), "{text}");
    assert!(text.contains("[pass]    u6: {1,2,3,4,5,7} -> {1,2,3,4,5,6}"), "{text}");
}

#[test]
fn abelianize_reports_the_cyclic_diagnosis() {
    let out = crosscap(&["abelianize", "--genus", "7", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["cyclic"], serde_json::Value::Bool(true));
    assert_eq!(value["generated_by_u1"], serde_json::Value::Bool(true));
    assert_eq!(value["free_rank"], serde_json::json!(1));
}

#[test]
fn render_is_deterministic_and_styles_sidedness() {
    let a = crosscap(&["render", "--genus", "7", "beta", "gamma", "delta", "epsilon"]);
    assert_eq!(code(&a), 0);
    let b = crosscap(&["render", "--genus", "7", "beta", "gamma", "delta", "epsilon"]);
    assert_eq!(a.stdout, b.stdout, "render must be byte-identical across runs");
    let svg = stdout(&a);
    for id in ["curve-beta", "curve-gamma", "curve-delta", "curve-epsilon", "crosscap-7"] {
        assert!(svg.contains(&format!("id=\"{id}\"")), "{id}");
    }
    // All four are two-sided: no dashing anywhere.
    assert!(!svg.contains("stroke-dasharray"));

    let odd = crosscap(&["render", "--genus", "7", "{1,3,5}"]);
    assert_eq!(code(&odd), 0);
    let svg = stdout(&odd);
    assert!(svg.contains("id=\"curve-1-3-5\""), "{svg}");
    assert!(svg.contains("stroke-dasharray"), "one-sided curves render dashed");
}

#[test]
fn render_rejects_invalid_curves() {
    let out = crosscap(&["render", "--genus", "7", "alpha7"]);
    assert_eq!(code(&out), 2);
    let out = crosscap(&["render", "--genus", "7", "{}"]);
    assert_eq!(code(&out), 2);
    let out = crosscap(&["render", "--genus", "7", "zeta"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn json_reports_parse() {
    let out = crosscap(&["cert", "lemma-a1", "--genus", "7", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value[0]["verdict"], serde_json::json!("accepted"));
    assert_eq!(value[0]["lengths"]["expression"], serde_json::json!(232));
}
