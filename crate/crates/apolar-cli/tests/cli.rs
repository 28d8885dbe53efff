//! End-to-end tests that drive the compiled binary.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

fn apolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apolar"))
        .args(args)
        .env_remove("APOLAR_SEED")
        .output()
        .expect("binary runs")
}

fn apolar_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apolar"))
        .args(args)
        .env_remove("APOLAR_SEED")
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn ann_of_coordinate_product() {
    let out = apolar(&["ann", "x*y*z", "--degree", "2"]);
    assert_eq!(stdout_str(&out), "[\"X^2\",\"Y^2\",\"Z^2\"]\n");
}

#[test]
fn ann_of_the_fifth_catalog_form() {
    let out = apolar(&["ann", "f5", "--degree", "2"]);
    assert_eq!(stdout_str(&out), "[\"X^2-X*Y+Y^2-Y*Z+Z^2\"]\n");
}

#[test]
fn ann_of_a_power_keeps_the_ambient_ternary_ring() {
    let out = apolar(&["ann", "x^6", "--degree", "1"]);
    assert_eq!(stdout_str(&out), "[\"Y\",\"Z\"]\n");
}

#[test]
fn ann_reads_stdin_and_cyclotomic_coefficients() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_apolar"))
        .args(["ann", "-", "--degree", "1", "--field", "cyc"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .expect("stdin pipe")
        .write_all(b"(x+i*y)^2\n")
        .expect("write stdin");
    let out = child.wait_with_output().expect("binary exits");
    let text = stdout_str(&out);
    let basis: Vec<String> = serde_json::from_str(&text).expect("JSON array");
    // ann of a square of a linear form in 2 embedded vars: z plus one more
    assert_eq!(basis.len(), 2);
    assert!(basis.contains(&"Z".to_string()));
}

#[test]
fn parse_errors_carry_line_and_column() {
    let out = apolar(&["ann", "x*y+*z", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1"), "stderr was: {err}");
    assert!(err.contains("col"), "stderr was: {err}");
}

#[test]
fn hilbert_reports_the_full_profile() {
    let out = apolar(&["hilbert", "f5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("JSON");
    assert_eq!(v["h_vector"], serde_json::json!([1, 3, 5, 6, 5, 3, 1]));
    assert_eq!(v["complete_intersection"], serde_json::json!(true));
    assert_eq!(v["socle_degree"], serde_json::json!(6));
}

#[test]
fn hilbert_of_the_first_catalog_form() {
    let out = apolar(&["hilbert", "f1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("JSON");
    assert_eq!(v["h_vector"], serde_json::json!([1, 3, 6, 6, 6, 3, 1]));
    assert_eq!(v["complete_intersection"], serde_json::json!(false));
}

const GENERIC_SIX_LINES: &str = r#"{"n":2,"hyperplanes":[
  {"form":"x","mult":1},{"form":"y","mult":1},{"form":"z","mult":1},
  {"form":"x+y+z","mult":1},{"form":"x+2*y+3*z","mult":1},{"form":"x-y+2*z","mult":1}]}"#;

#[test]
fn generic_and_bounds_on_six_general_lines() {
    let dir = tempdir();
    let path = dir.join("arr.json");
    std::fs::write(&path, GENERIC_SIX_LINES).expect("write doc");
    let p = path.to_str().expect("utf8 path");

    let out = apolar(&["generic", p]);
    assert_eq!(stdout_str(&out), "{\"generic\":true}\n");

    let out = apolar(&["irreducible", p]);
    assert_eq!(stdout_str(&out), "{\"irreducible\":true}\n");

    let out = apolar(&["bounds", p]);
    assert_eq!(
        stdout_str(&out),
        "{\"alpha_lower\":3,\"ci_min_size\":6,\"waring_lower\":6}\n"
    );
}

#[test]
fn concurrent_lines_are_rejected_as_non_generic() {
    let doc = r#"{"n":2,"hyperplanes":[
      {"form":"x","mult":1},{"form":"y","mult":1},{"form":"x+y","mult":1}]}"#;
    let dir = tempdir();
    let path = dir.join("conc.json");
    std::fs::write(&path, doc).expect("write doc");
    let out = apolar(&["generic", path.to_str().expect("utf8 path")]);
    assert_eq!(stdout_str(&out), "{\"generic\":false}\n");
}

#[test]
fn star_generators_are_all_triple_products() {
    let out = apolar(&["star", "x;y;z;x+y+z", "--codim", "2"]);
    let gens: Vec<String> = serde_json::from_str(&stdout_str(&out)).expect("JSON array");
    // C(4, 3) subsets of four lines
    assert_eq!(gens.len(), 4);
    assert!(gens.contains(&"x*y*z".to_string()));
}

#[test]
fn waring_verify_accepts_a_true_certificate_and_rejects_a_broken_one() {
    let dir = tempdir();
    let good = dir.join("good.json");
    // x*y = ((x+y)^2 - (x-y)^2) / 4, written in the ambient ternary ring
    let doc = r#"{"form":"x*y","degree":2,"terms":[
      {"coeff":"1/4","point":["1","1","0"],"sign":1},
      {"coeff":"1/4","point":["1","-1","0"],"sign":-1}]}"#;
    std::fs::write(&good, doc).expect("write doc");
    let out = apolar(&["waring-verify", good.to_str().expect("utf8 path")]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stdout).as_ref()).expect("JSON");
    assert_eq!(v["verified"], serde_json::json!(true));
    assert_eq!(v["points"], serde_json::json!(2));

    let bad = dir.join("bad.json");
    let doc = doc.replace("\"1/4\"", "\"1/3\"");
    std::fs::write(&bad, doc).expect("write doc");
    let out = apolar(&["waring-verify", bad.to_str().expect("utf8 path")]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stdout).as_ref()).expect("JSON");
    assert_eq!(v["verified"], serde_json::json!(false));
}

#[test]
fn ranksys_emission_is_seed_deterministic() {
    let a = stdout_str(&apolar(&["ranksys", "--seed", "11"]));
    let b = stdout_str(&apolar(&["ranksys", "--seed", "11"]));
    let c = stdout_str(&apolar(&["ranksys", "--seed", "12"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(a.starts_with("% seed: 11\n"));
}

#[test]
fn seed_falls_back_to_the_environment_then_zero() {
    let from_env = stdout_str(&apolar_env(&["ranksys"], "APOLAR_SEED", "11"));
    let from_flag = stdout_str(&apolar(&["ranksys", "--seed", "11"]));
    assert_eq!(from_env, from_flag);

    let bare = stdout_str(&apolar(&["ranksys"]));
    let zero = stdout_str(&apolar(&["ranksys", "--seed", "0"]));
    assert_eq!(bare, zero);

    // the flag wins over the environment
    let both = stdout_str(&apolar_env(&["ranksys", "--seed", "11"], "APOLAR_SEED", "5"));
    assert_eq!(both, from_flag);
}

#[test]
fn ranksys_json_with_a_fixed_factor_has_ten_variables() {
    let out = stdout_str(&apolar(&[
        "ranksys",
        "--seed",
        "3",
        "--fix-factor",
        "f1",
        "--emit",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).expect("JSON");
    assert_eq!(v["variables"].as_array().expect("array").len(), 10);
    // nine squared equations; the tracker supplies one patch per projective group
    assert_eq!(v["equations"].as_array().expect("array").len(), 9);
    assert_eq!(v["unsquared"].as_array().expect("array").len(), 10);
    assert_eq!(v["fixed_prefix"].as_array().expect("array").len(), 3);

    // explicit constants giving the same factor produce the same system
    let explicit = stdout_str(&apolar(&[
        "ranksys",
        "--seed",
        "3",
        "--fix-factor",
        "1,z12^2-1,conj(z12^2-1)",
        "--emit",
        "json",
    ]));
    assert_eq!(out, explicit);
}

#[test]
fn track_solves_an_emitted_system_deterministically() {
    let dir = tempdir();
    let path = dir.join("reduced.json");
    let sys = stdout_str(&apolar(&[
        "ranksys",
        "--seed",
        "4",
        "--fix-factor",
        "f5",
        "--emit",
        "json",
    ]));
    std::fs::write(&path, &sys).expect("write system");
    let p = path.to_str().expect("utf8 path");

    let a = stdout_str(&apolar(&["track", p, "--threads", "2"]));
    let b = stdout_str(&apolar(&["track", p, "--threads", "4"]));
    assert_eq!(a, b, "thread count must not change the report");

    let v: serde_json::Value = serde_json::from_str(&a).expect("JSON");
    assert_eq!(v["seed"], serde_json::json!(4));
    assert_eq!(v["paths"], serde_json::json!(512));
    assert!(v["converged"].as_u64().expect("count") > 0);
}

#[test]
fn track_accepts_bertini_text_too() {
    let dir = tempdir();
    let path = dir.join("sys.bertini");
    // one affine variable, z^2 - 4 = 0
    let text = "% seed: 1\nCONFIG\nEND;\nINPUT\nvariable_group z;\nfunction eq0;\neq0 = z^2-4;\nEND;\n";
    std::fs::write(&path, text).expect("write system");
    let out = stdout_str(&apolar(&["track", path.to_str().expect("utf8 path")]));
    let v: serde_json::Value = serde_json::from_str(&out).expect("JSON");
    assert_eq!(v["paths"], serde_json::json!(2));
    assert_eq!(v["converged"], serde_json::json!(2));
    let sols = v["solutions"].as_array().expect("array");
    let mut roots: Vec<f64> =
        sols.iter().map(|s| s["params"][0][0].as_f64().expect("re")).collect();
    roots.sort_by(f64::total_cmp);
    assert!((roots[0] + 2.0).abs() < 1e-8 && (roots[1] - 2.0).abs() < 1e-8);
}

#[test]
fn verify_tables_passes_quickly() {
    let start = std::time::Instant::now();
    let out = apolar(&["verify-tables"]);
    let text = stdout_str(&out);
    assert!(start.elapsed() < std::time::Duration::from_secs(60));
    for i in 1..=6 {
        assert!(text.contains(&format!("table1 f{i}: pass")), "output: {text}");
    }
    for i in 1..=5 {
        assert!(text.contains(&format!("table2 f{i}: pass")), "output: {text}");
    }
    assert!(text.ends_with("all tables verified\n"));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "apolar-cli-test-{}-{:?}",
        std::process::id(),
        std::thread::current().id()
    ));
    std::fs::create_dir_all(&dir).expect("create temp dir");
    dir
}
